#pragma once

// Shared primitives: carrier elements, tuples, size bounds and the error
// types thrown by the engines.

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace dwb {

// Carrier elements are always indices 0..n-1; display labels live in a
// per-algebra label table.
using Elem = int;
using Tuple = std::vector<Elem>;

struct TupleHash {
    std::size_t operator()(const Tuple & t) const noexcept
    {
        std::uint64_t h = 1469598103934665603ULL;
        for (Elem e : t) {
            h ^= static_cast<std::uint64_t>(e) + 0x9e3779b97f4a7c15ULL;
            h *= 1099511628211ULL;
        }
        return static_cast<std::size_t>(h);
    }
};

inline std::uint64_t fnv1a64(const void * data, std::size_t len)
{
    const auto * p = static_cast<const unsigned char *>(data);
    std::uint64_t h = 1469598103934665603ULL;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::uint64_t fnv1a64(const std::string & s)
{
    return fnv1a64(s.data(), s.size());
}

std::string hex64(std::uint64_t v);

// All limits are configuration, not constants. Every command echoes the
// bounds it ran under into its report.
struct SizeBounds {
    int max_carrier = 64;                   // constructed algebras and power universes
    long long max_search_nodes = 100000;    // value trials per backtracking search
    long long max_clone_tables = 20000;     // term-clone closure size
};

class SizeBoundExceeded : public std::runtime_error {
public:
    explicit SizeBoundExceeded(const std::string & what) : std::runtime_error(what) {}
};

class NotAlgebraic : public std::runtime_error {
public:
    explicit NotAlgebraic(const std::string & what) : std::runtime_error(what) {}
};

class CertificateMismatch : public std::logic_error {
public:
    explicit CertificateMismatch(const std::string & what) : std::logic_error(what) {}
};

class SelfValidationFailed : public std::runtime_error {
public:
    explicit SelfValidationFailed(const std::string & what) : std::runtime_error(what) {}
};

class EmptyHomset : public std::runtime_error {
public:
    explicit EmptyHomset(const std::string & what) : std::runtime_error(what) {}
};

// Thrown when an internal consistency assertion fails; always a bug.
class InvariantViolation : public std::logic_error {
public:
    explicit InvariantViolation(const std::string & what) : std::logic_error(what) {}
};

inline void invariant(bool cond, const char * msg)
{
    if (! cond)
        throw InvariantViolation(msg);
}

}
