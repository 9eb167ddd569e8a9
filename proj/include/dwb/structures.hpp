#pragma once

// Alter egos and their finite structured spaces: algebraicity checks,
// induced interpretations on powers, substructure closure and
// structure-morphism search. Topology is discrete throughout and carries
// no data; every verdict downstream is finite-level only.

#include <dwb/algebra.hpp>
#include <dwb/homsearch.hpp>

#include <cstdint>
#include <memory>
#include <optional>

namespace dwb {

// Partial operation given by an explicit domain; defined exactly there.
class PartialOperationTable {
public:
    PartialOperationTable() = default;
    PartialOperationTable(int arity, int carrier, std::vector<Tuple> domain,
        std::vector<Elem> values);

    int arity() const { return arity_; }
    int carrier() const { return carrier_; }
    const std::vector<Tuple> & domain() const { return domain_; }
    const std::vector<Elem> & values() const { return values_; }

    std::optional<Elem> apply(const Tuple & args) const;

    // Flat table over carrier^arity with -1 at undefined cells.
    std::vector<Elem> flat() const;

    bool operator==(const PartialOperationTable &) const = default;

private:
    int arity_ = 0;
    int carrier_ = 0;
    std::vector<Tuple> domain_;  // sorted
    std::vector<Elem> values_;   // parallel to domain_
};

struct AlterEgo {
    std::string name;
    std::shared_ptr<const FiniteAlgebra> over;
    std::vector<std::pair<std::string, OperationTable>> total_ops;
    std::vector<std::pair<std::string, PartialOperationTable>> partial_ops;
    std::vector<std::pair<std::string, Relation>> relations;

    const FiniteAlgebra & algebra() const { return *over; }
};

Relation graph_of(const OperationTable & op);
Relation graph_of(const PartialOperationTable & op);

// Per-item algebraicity report: each relation and each graph of a (partial)
// operation must be a subuniverse of the matching power of M.
struct AlgebraicityReport {
    struct Item {
        std::string name;
        std::string kind;  // "relation", "operation", "partial"
        bool algebraic = true;
        std::string violating_op;
        Tuple missing;
    };
    bool algebraic = true;
    std::vector<Item> items;
};
AlgebraicityReport is_algebraic_over(const AlterEgo & ego);

// Finite member of the structure side, realised inside ego^exponent.
struct FiniteStructure {
    const AlterEgo * ego = nullptr;
    int exponent = 0;
    TupleSet universe;

    std::size_t size() const { return universe.size(); }
};

// Full power ego^k as a structure.
FiniteStructure ego_power(const AlterEgo & ego, int k, const SizeBounds & bounds = {});

// Least universe containing `seed`, closed under the total operations and
// under the partial operations where defined, inside ego^exponent.
FiniteStructure substructure_generate(const AlterEgo & ego, int exponent,
    std::span<const Tuple> seed, const SizeBounds & bounds = {});

// Checks the closure invariant of a universe; throws InvariantViolation if
// a structure violates it.
void check_structure_closed(const FiniteStructure & x);

using StructMorphism = std::vector<Elem>;  // target universe position per source position

// All structure-preserving maps X -> Y over the same ego, in lexicographic
// order. Relations constrain, total operations propagate, partial
// operations preserve their graphs (domains included).
std::vector<StructMorphism> struct_morphisms(const FiniteStructure & x,
    const FiniteStructure & y, const SizeBounds & bounds = {});

bool is_struct_morphism(const FiniteStructure & x, const FiniteStructure & y,
    const StructMorphism & map);

// Closure bookkeeping for one power ego^k with universe of at most 64
// elements, so closed sets fit in a word. Used by the substructure
// enumerations and the injectivity sweeps.
class PowerContext {
public:
    PowerContext(const AlterEgo & ego, int k, const SizeBounds & bounds = {});

    const AlterEgo & ego() const { return *ego_; }
    int k() const { return k_; }
    int universe_size() const { return n_; }
    const Tuple & element(int i) const { return elems_[i]; }

    std::uint64_t close(std::uint64_t s) const;

    // All closed sets in lectic order (next-closure), empty set excluded.
    std::vector<std::uint64_t> all_closed() const;

    // Closed nonempty subsets of a closed set, same enumeration.
    std::vector<std::uint64_t> closed_within(std::uint64_t y) const;

    FiniteStructure structure(std::uint64_t mask) const;

private:
    const AlterEgo * ego_;
    int k_;
    int n_;
    std::vector<Tuple> elems_;
    std::vector<std::vector<Elem>> total_tables_;    // position tables per total op
    std::vector<std::vector<Elem>> partial_tables_;  // -1 where undefined
    std::vector<int> total_arity_, partial_arity_;
};

// Canonical order on universes: size first, then the sorted element list.
bool canonical_mask_less(std::uint64_t a, std::uint64_t b);

struct SubstructureEnumeration {
    std::vector<FiniteStructure> structures;
    bool truncated = false;
};

// All closed universes of ego^k in canonical order, truncated at max_count.
// The empty universe is excluded by convention.
SubstructureEnumeration enumerate_substructures(const AlterEgo & ego, int k,
    std::size_t max_count, const SizeBounds & bounds = {});

}
