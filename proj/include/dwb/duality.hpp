#pragma once

// The hom-functors at the finite level and the duality / fullness /
// injectivity verdicts built from them.

#include <dwb/structures.hpp>

#include <optional>

namespace dwb {

enum class DualityKind { iso, not_injective, not_surjective };

std::string to_string(DualityKind k);

struct DualityVerdict {
    DualityKind kind = DualityKind::iso;
    // not_injective: a pair the evaluations fail to separate
    std::pair<Elem, Elem> inseparable{-1, -1};
    // not_surjective: a non-evaluation morphism (duality) or hom (fullness)
    HomMap witness;
    std::size_t evaluation_count = 0;
    std::size_t morphism_count = 0;

    bool iso() const { return kind == DualityKind::iso; }
};

// D(A): the hom-set A -> M viewed inside ego^|A|. Universe entries are the
// homomorphism map tables in lexicographic order.
FiniteStructure dual_of_algebra(const FiniteAlgebra & a, const AlterEgo & ego,
    const SizeBounds & bounds = {});

// E(X): the morphism set X -> ego viewed as a subalgebra of M^X.
// Throws EmptyHomset when X admits no morphisms at all.
struct DualOfStructure {
    TupleSet morphisms;     // exponent |X|, sorted
    FiniteAlgebra algebra;  // pointwise operations on the morphism set
};
DualOfStructure dual_of_structure(const FiniteStructure & x, const SizeBounds & bounds = {});

// Is every morphism D(A) -> ego an evaluation, with evaluations separating A?
DualityVerdict check_duality_on(const FiniteAlgebra & a, const AlterEgo & ego,
    const SizeBounds & bounds = {});

// Is every homomorphism E(X) -> M an evaluation at a point of X, with the
// evaluations separating X?
DualityVerdict check_fullness_on(const FiniteStructure & x, const SizeBounds & bounds = {});

struct InjectivityWitness {
    int exponent = 0;
    std::vector<Tuple> ambient;    // Y, a closed universe of ego^exponent
    std::vector<Tuple> sub;        // X, a closed subset of Y
    StructMorphism phi;            // morphism X -> ego with no extension to Y
};

// Sweeps closed substructures Y of ego^k (k <= power_bound, |Y| <= size_bound)
// and closed X <= Y, looking for a morphism X -> ego with no extension to Y.
// Absence of a witness within bounds proves nothing beyond the bounds.
std::optional<InjectivityWitness> search_injectivity_failure(const AlterEgo & ego,
    int power_bound, std::size_t size_bound, const SizeBounds & bounds = {}, int jobs = 1);

// Re-verifies a witness independently: membership of phi in the morphism set
// of X and exhaustion of the extension search over Y.
bool verify_injectivity_witness(const AlterEgo & ego, const InjectivityWitness & w,
    const SizeBounds & bounds = {});

// The contravariant action of D on a homomorphism u: A -> B, as a map from
// positions of D(B) to positions of D(A).
StructMorphism dual_of_hom(const FiniteAlgebra & a, const FiniteAlgebra & b,
    const HomMap & u, const FiniteStructure & da, const FiniteStructure & db);

}
