#pragma once

// Endomorphism monoids, k-endoprimality and endodualisability checks on
// single test algebras.

#include <dwb/duality.hpp>

namespace dwb {

struct EndoMonoid {
    std::vector<std::vector<Elem>> elements;  // unary tables, sorted

    static EndoMonoid from_maps(int carrier, std::vector<std::vector<Elem>> maps);
};

EndoMonoid endomorphisms(const FiniteAlgebra & m, const SizeBounds & bounds = {});

// Alter ego whose total operations are exactly End(M).
AlterEgo endomorphism_ego(std::shared_ptr<const FiniteAlgebra> m, const SizeBounds & bounds = {});

struct EndoprimalityVerdict {
    int k = 0;
    bool holds = true;
    std::vector<Elem> witness;  // k-ary table commuting with End(M), not a term
};

// Is every k-ary operation commuting with all endomorphisms a term
// operation? The witness search walks table cells in canonical order, so a
// failing verdict carries the minimal counterexample.
EndoprimalityVerdict is_k_endoprimal(const FiniteAlgebra & m, int k,
    const SizeBounds & bounds = {});

bool commutes_with_endomorphisms(const FiniteAlgebra & m, const EndoMonoid & endos,
    const std::vector<Elem> & table, int k);

// Duality check with End(M) alone as the structure, on one test algebra.
DualityVerdict is_endodualisable_on(const FiniteAlgebra & m, const FiniteAlgebra & a,
    const SizeBounds & bounds = {});

// The core of a double Stone algebra: elements with star at 0 and plus at 1.
// Requires operations named "star" and "plus".
std::vector<Elem> double_stone_core(const FiniteAlgebra & l);

}
