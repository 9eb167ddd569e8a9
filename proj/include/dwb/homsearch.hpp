#pragma once

// Backtracking search over finite maps with propagation through operation
// tables, plus everything built directly on it: homomorphism enumeration,
// quasivariety membership, retract checks, term clones and free algebras.

#include <dwb/algebra.hpp>

#include <functional>
#include <optional>
#include <unordered_set>

namespace dwb {

using HomMap = std::vector<Elem>;  // value per source element, total

struct Homomorphism {
    std::string source, target;
    HomMap map;
};

// A functional constraint instance: whenever all argument variables are
// assigned, variable `out` must equal fn(args), where fn may be partial
// (value < 0 in the flat table marks "undefined": assignment fails there).
struct FunctionalInstance {
    std::vector<int> args;
    int out = 0;
    const std::vector<Elem> * fn = nullptr;  // flat table over the value domain
    int fn_domain = 0;                       // radix for indexing fn
};

// A relational constraint instance: the value tuple of `vars` must lie in
// `allowed` once all of them are assigned.
struct RelationalInstance {
    std::vector<int> vars;
    const std::unordered_set<Tuple, TupleHash> * allowed = nullptr;
    bool negated = false;  // value tuple must lie outside `allowed`
};

struct MapSearchProblem {
    int num_vars = 0;
    int domain = 0;
    std::vector<FunctionalInstance> functional;
    std::vector<RelationalInstance> relational;
    std::vector<std::vector<Elem>> restricted;  // optional per-var candidate lists (empty = full)
    std::vector<Elem> seed;                     // optional partial map (-1 = free)
};

// Enumerates all total solutions in lexicographic order of the map vector.
// Variable order inside the search follows constraint degree, but the output
// is canonically sorted. Throws SizeBoundExceeded past the node budget.
std::vector<HomMap> solve_all(const MapSearchProblem & p, const SizeBounds & bounds);

// First solution in lexicographic order, if any.
std::optional<HomMap> solve_first(const MapSearchProblem & p, const SizeBounds & bounds);

// All homomorphisms A -> B extending `partial` (-1 entries are free), in
// lexicographic order of the map table.
std::vector<HomMap> hom_enumerate(const FiniteAlgebra & a, const FiniteAlgebra & b,
    const std::vector<Elem> & partial = {}, const SizeBounds & bounds = {});

std::optional<HomMap> hom_first(const FiniteAlgebra & a, const FiniteAlgebra & b,
    const std::vector<Elem> & partial = {}, const SizeBounds & bounds = {});

// First homomorphism with each value drawn from the given candidate list
// (an empty list leaves that variable unrestricted).
std::optional<HomMap> hom_first_restricted(const FiniteAlgebra & a, const FiniteAlgebra & b,
    const std::vector<std::vector<Elem>> & restricted, const SizeBounds & bounds = {});

bool is_homomorphism(const FiniteAlgebra & a, const FiniteAlgebra & b, const HomMap & map);

// Membership in the quasivariety generated by M: homomorphisms into M must
// separate the points of A. On failure yields an inseparable pair.
struct QuasivarietyVerdict {
    bool member = true;
    std::pair<Elem, Elem> inseparable{-1, -1};
};
QuasivarietyVerdict in_quasivariety(const FiniteAlgebra & a, const FiniteAlgebra & m,
    const SizeBounds & bounds = {});

// Retract check: first (q: D -> A, p: A -> D) with p after q the identity.
struct RetractPair {
    HomMap into;  // q
    HomMap onto;  // p
};
std::optional<RetractPair> is_retract_of(const FiniteAlgebra & d, const FiniteAlgebra & a,
    const SizeBounds & bounds = {});

// All k-ary term operations of A, generated from projections by composition
// with basic operations. Tables are flat in lexicographic argument order.
std::vector<std::vector<Elem>> term_clone(const FiniteAlgebra & a, int k,
    const SizeBounds & bounds = {});

// k-generated free algebra in the quasivariety of M: the subalgebra of
// M^(M^k) generated by the coordinate projections. Carrier is sorted by
// power index; generator positions are returned alongside.
struct FreeAlgebra {
    FiniteAlgebra algebra;
    TupleSet elements;          // tuples over M^(|M|^k)
    std::vector<int> generators;  // positions of the k projections
};
FreeAlgebra free_algebra(const FiniteAlgebra & m, int k, const SizeBounds & bounds = {});

// Homomorphisms from a subalgebra of a power, presented as a tuple set, into
// M. Small instances are materialised; large ones use the direct-product
// decomposition that is valid whenever M has a lattice reduct (congruences
// of finite products then factor, so every hom depends on few blocks).
std::vector<HomMap> homs_from_tuple_algebra(const FiniteAlgebra & m, const TupleSet & ts,
    const SizeBounds & bounds = {});

}
