#pragma once

// Finite algebras: signatures, total operation tables, relations, and the
// constructions (powers, products, subalgebras on explicit tuple sets) that
// everything else builds on.

#include <dwb/common.hpp>

#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace dwb {

struct OpSymbol {
    std::string name;
    int arity = 0;

    bool operator==(const OpSymbol &) const = default;
};

struct Signature {
    std::vector<OpSymbol> ops;

    bool operator==(const Signature &) const = default;
    int index_of(const std::string & name) const;  // -1 if absent
};

// Total operation on a carrier {0..n-1}. The table is stored flat in
// lexicographic argument order: index = ((a1*n + a2)*n + a3)...
class OperationTable {
public:
    OperationTable() = default;
    OperationTable(int arity, int carrier, std::vector<Elem> table);

    static OperationTable constant(int carrier, Elem value);
    static OperationTable projection(int arity, int carrier, int coord);

    int arity() const { return arity_; }
    int carrier() const { return carrier_; }
    const std::vector<Elem> & table() const { return table_; }

    Elem apply(std::span<const Elem> args) const { return table_[index(args)]; }
    Elem apply_unary(Elem a) const { return table_[a]; }

    std::size_t index(std::span<const Elem> args) const
    {
        std::size_t ix = 0;
        for (Elem a : args)
            ix = ix * carrier_ + static_cast<std::size_t>(a);
        return ix;
    }

    // Decodes a flat table index back into an argument tuple.
    Tuple args_of_index(std::size_t ix) const;

    bool operator==(const OperationTable &) const = default;

private:
    int arity_ = 0;
    int carrier_ = 0;
    std::vector<Elem> table_;
};

// Explicit set of arity-n tuples over a carrier, kept sorted and unique.
struct Relation {
    int arity = 1;
    std::vector<Tuple> tuples;

    static Relation from_tuples(int arity, std::vector<Tuple> tuples);

    bool contains(const Tuple & t) const;
    bool operator==(const Relation &) const = default;
};

class FiniteAlgebra {
public:
    FiniteAlgebra() = default;
    FiniteAlgebra(std::string name, int carrier_size, Signature sig,
        std::vector<OperationTable> interp, std::vector<std::string> labels = {});

    const std::string & name() const { return name_; }
    int size() const { return size_; }
    const Signature & signature() const { return sig_; }
    const std::vector<OperationTable> & ops() const { return interp_; }
    const OperationTable & op(int i) const { return interp_[i]; }
    const OperationTable * op_named(const std::string & name) const;
    const std::vector<std::string> & labels() const { return labels_; }
    const std::string & label(Elem e) const { return labels_[e]; }
    Elem element_by_label(const std::string & l) const;  // -1 if absent

    bool same_tables_as(const FiniteAlgebra & other) const
    {
        return size_ == other.size_ && sig_ == other.sig_ && interp_ == other.interp_;
    }

private:
    std::string name_;
    int size_ = 1;
    Signature sig_;
    std::vector<OperationTable> interp_;
    std::vector<std::string> labels_;
};

// Subset of a power M^exponent given by an explicit, lex-sorted tuple list.
// Used for relations-as-algebras, generated subalgebras and dual algebras.
struct TupleSet {
    int exponent = 0;
    std::vector<Tuple> elems;  // sorted, unique

    static TupleSet of(int exponent, std::vector<Tuple> elems);

    int find(const Tuple & t) const;  // -1 if absent
    std::size_t size() const { return elems.size(); }
};

// Coordinatewise power M^k with carrier encoded by mixed-radix index.
FiniteAlgebra power(const FiniteAlgebra & m, int k, const SizeBounds & bounds = {});

// Direct product; both factors must share a signature.
FiniteAlgebra product(const FiniteAlgebra & a, const FiniteAlgebra & b,
    const std::string & name, const SizeBounds & bounds = {});

// Element tuple of the power algebra built by power(); index decoding.
Tuple power_element(const FiniteAlgebra & m, int k, std::size_t index);
std::size_t power_index(const FiniteAlgebra & m, const Tuple & t);

// Least subset of A's carrier containing `seed` and closed under all basic
// operations (constants included).
std::vector<Elem> subuniverse_generate(const FiniteAlgebra & a, std::span<const Elem> seed);

// Closure of `seed` inside the (virtual) power M^exponent, never
// materialising the power itself.
TupleSet generate_in_power(const FiniteAlgebra & m, int exponent,
    std::span<const Tuple> seed, const SizeBounds & bounds = {});

// Whether `tuples` is closed under M's operations acting coordinatewise.
// On failure reports the violating operation and argument tuple.
struct ClosureCheck {
    bool closed = true;
    std::string violating_op;
    Tuple missing;  // the tuple that would be needed
};
ClosureCheck check_subuniverse(const FiniteAlgebra & m, const TupleSet & ts);

// The relation's tuple set viewed as an algebra with pointwise operations;
// throws NotAlgebraic when the tuple set is not a subuniverse of M^arity.
FiniteAlgebra algebra_on_tuples(const FiniteAlgebra & m, const TupleSet & ts,
    const std::string & name, const SizeBounds & bounds = {});

// Pair of basic operations forming a lattice reduct (join, meet), if any.
// Having one guarantees congruence distributivity for the whole
// quasivariety, which some fast paths rely on.
std::optional<std::pair<int, int>> lattice_reduct(const FiniteAlgebra & m);

}
