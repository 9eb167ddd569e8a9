#include <doctest.h>

#include <dwb/catalog.hpp>

#include "oracles.hpp"

using namespace dwb;

namespace {
    const Catalog & cat()
    {
        static Catalog c = load_catalog();
        return c;
    }
}

TEST_CASE("endomorphism monoids")
{
    auto bdl3 = cat().algebra("bdl-3");
    auto endos = endomorphisms(*bdl3);
    REQUIRE(endos.elements.size() == 3);
    CHECK(endos.elements[0] == std::vector<Elem>{0, 0, 2});  // collapse downwards
    CHECK(endos.elements[1] == std::vector<Elem>{0, 1, 2});  // identity
    CHECK(endos.elements[2] == std::vector<Elem>{0, 2, 2});  // collapse upwards

    CHECK(endomorphisms(*cat().algebra("bdl-2")).elements.size() == 1);
    CHECK(endomorphisms(*cat().algebra("lattice-2")).elements.size() == 3);
    CHECK(endomorphisms(*cat().algebra("ds-3")).elements.size() == 1);
}

TEST_CASE("k-endoprimality verdicts")
{
    CHECK(is_k_endoprimal(*cat().algebra("bdl-3"), 1).holds);
    CHECK(is_k_endoprimal(*cat().algebra("bdl-3"), 2).holds);

    auto v = is_k_endoprimal(*cat().algebra("lattice-2"), 3);
    REQUIRE(! v.holds);
    // the witness commutes with every endomorphism but is not a term;
    // over the two-element lattice that forces a non-monotone table
    auto lattice2 = cat().algebra("lattice-2");
    auto endos = endomorphisms(*lattice2);
    CHECK(commutes_with_endomorphisms(*lattice2, endos, v.witness, 3));
    auto clone = term_clone(*lattice2, 3);
    CHECK(! std::binary_search(clone.begin(), clone.end(), v.witness));
    CHECK(v.witness[0] == 0);
    CHECK(v.witness[7] == 1);

    auto v1 = is_k_endoprimal(*cat().algebra("bdl-2"), 1);
    REQUIRE(! v1.holds);
    CHECK(v1.witness == std::vector<Elem>{1, 0});  // negation, minimal in cell order
}

TEST_CASE("failures pad out to higher arities")
{
    auto lattice2 = cat().algebra("lattice-2");
    auto v = is_k_endoprimal(*lattice2, 2);
    // two variables are fine for the Boolean lattice even though three fail
    CHECK(v.holds);

    auto v3 = is_k_endoprimal(*lattice2, 3);
    REQUIRE(! v3.holds);
    // pad the witness with a dummy variable and re-verify at arity four
    std::vector<Elem> padded(16);
    for (std::size_t ix = 0; ix < 16; ++ix)
        padded[ix] = v3.witness[ix >> 1];
    auto endos = endomorphisms(*lattice2);
    CHECK(commutes_with_endomorphisms(*lattice2, endos, padded, 4));
    SizeBounds wide;
    wide.max_clone_tables = 1000000;
    auto clone4 = term_clone(*lattice2, 4, wide);
    CHECK(! std::binary_search(clone4.begin(), clone4.end(), padded));
}

TEST_CASE("term operations commute with endomorphisms")
{
    for (const char * id : {"bdl-2", "bdl-3", "lattice-2", "stone-3", "group-z3"}) {
        auto a = cat().algebra(id);
        auto endos = endomorphisms(*a);
        for (int k = 1; k <= 2; ++k)
            for (const auto & table : term_clone(*a, k))
                CHECK(commutes_with_endomorphisms(*a, endos, table, k));
    }
}

TEST_CASE("endodualisability on test algebras")
{
    auto vA = is_endodualisable_on(*cat().algebra("ds-3"), *cat().algebra("ds-2"));
    CHECK(vA.kind == DualityKind::not_surjective);

    auto vB = is_endodualisable_on(*cat().algebra("ds-3x2"), *cat().algebra("ds-2x2"));
    CHECK(vB.kind == DualityKind::not_surjective);

    // an algebra dualised by its own endomorphisms
    auto vSelf = is_endodualisable_on(*cat().algebra("bdl-3"), *cat().algebra("bdl-3"));
    CHECK(vSelf.iso());
}

TEST_CASE("double Stone cores")
{
    CHECK(double_stone_core(*cat().algebra("ds-2")).empty());
    CHECK(double_stone_core(*cat().algebra("ds-3")) == std::vector<Elem>{1});
    CHECK(double_stone_core(*cat().algebra("ds-4")) == std::vector<Elem>{1, 2});
    CHECK(double_stone_core(*cat().algebra("ds-5")) == std::vector<Elem>{1, 2, 3});
    CHECK_THROWS(double_stone_core(*cat().algebra("bdl-3")));
}
