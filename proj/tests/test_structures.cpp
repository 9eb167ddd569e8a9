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

TEST_CASE("graphs of operations")
{
    auto threeT_sigma = cat().ego("threeT-sigma");
    const auto & sigma = threeT_sigma->partial_ops[0].second;
    auto g = graph_of(sigma);
    CHECK(g.arity == 3);
    CHECK(g.tuples == std::vector<Tuple>{{0, 0, 0}, {0, 2, 1}, {2, 2, 2}});

    OperationTable id2(1, 2, {0, 1});
    CHECK(graph_of(id2).tuples == std::vector<Tuple>{{0, 0}, {1, 1}});

    auto stoneT = cat().ego("stoneT-3");
    const auto & d = stoneT->total_ops[0].second;
    CHECK(graph_of(d).tuples == std::vector<Tuple>{{0, 0}, {1, 2}, {2, 2}});
}

TEST_CASE("algebraicity reports identify the violating operation")
{
    CHECK(is_algebraic_over(*cat().ego("threeT")).algebraic);

    AlterEgo bad;
    bad.name = "bad";
    bad.over = cat().algebra("bdl-2");
    bad.relations.emplace_back("r", Relation::from_tuples(2, {{0, 1}}));
    auto report = is_algebraic_over(bad);
    CHECK(! report.algebraic);
    REQUIRE(report.items.size() == 1);
    CHECK(! report.items[0].algebraic);
    CHECK(! report.items[0].violating_op.empty());
    CHECK(report.items[0].missing == Tuple{0, 0});  // the missing constant pair

    AlterEgo empty;
    empty.name = "empty";
    empty.over = cat().algebra("bdl-2");
    CHECK(is_algebraic_over(empty).algebraic);
}

TEST_CASE("substructure generation closes under the ego operations")
{
    auto threeT = cat().ego("threeT");
    std::vector<Tuple> seed{{1}};
    auto x = substructure_generate(*threeT, 1, seed);
    CHECK(x.universe.elems == std::vector<Tuple>{{0}, {1}, {2}});
    check_structure_closed(x);

    AlterEgo bare;
    bare.name = "bare";
    bare.over = cat().algebra("bdl-2");
    auto y = substructure_generate(bare, 1, seed);
    CHECK(y.universe.elems == std::vector<Tuple>{{1}});

    auto zT2 = cat().ego("zT-2");
    auto z = substructure_generate(*zT2, 1, std::span<const Tuple>{});
    CHECK(z.universe.elems == std::vector<Tuple>{{0}});
}

TEST_CASE("structure morphisms match the brute-force filter")
{
    auto threeT = cat().ego("threeT");
    auto full = ego_power(*threeT, 1);
    auto maps = struct_morphisms(full, full);
    // only the identity and the two bound constants commute with both
    // endomorphisms; the endomorphisms themselves do not commute with each
    // other, and the count matches the free algebra on one generator
    CHECK(maps.size() == 3);
    auto brute = oracles::brute_force_structure_maps(full);
    std::vector<StructMorphism> expected(brute.begin(), brute.end());
    CHECK(maps == expected);

    // one-point structure with no constraints maps anywhere
    AlterEgo bare;
    bare.name = "bare";
    bare.over = cat().algebra("bdl-3");
    FiniteStructure pt{&bare, 1, TupleSet::of(1, {{0}})};
    auto pt_maps = struct_morphisms(pt, ego_power(bare, 1));
    CHECK(pt_maps.size() == 3);

    // a relation tuple with no image in the target kills every candidate
    AlterEgo rel_only;
    rel_only.name = "rel-only";
    rel_only.over = cat().algebra("disc-4");
    rel_only.relations.emplace_back("e", Relation::from_tuples(2, {{0, 1}}));
    FiniteStructure xx{&rel_only, 1, TupleSet::of(1, {{0}, {1}})};
    FiniteStructure yy{&rel_only, 1, TupleSet::of(1, {{0}})};
    CHECK(struct_morphisms(xx, yy).empty());
}

TEST_CASE("brute-force cross-check on sigma and h powers")
{
    for (const char * id : {"threeT-sigma", "threeT-h"}) {
        auto ego = cat().ego(id);
        auto square = ego_power(*ego, 2);
        auto target = ego_power(*ego, 1);
        auto maps = struct_morphisms(square, target);
        auto brute = oracles::brute_force_structure_maps(square);
        std::vector<StructMorphism> expected(brute.begin(), brute.end());
        CHECK(maps == expected);
        CHECK(maps.size() == 6);  // the free bounded lattice on two generators
        for (const auto & phi : maps)
            CHECK(is_struct_morphism(square, target, phi));
    }
}

TEST_CASE("morphisms preserve relation tuples by direct inspection")
{
    auto stoneT = cat().ego("stoneT-3");
    auto square = ego_power(*stoneT, 2);
    auto target = ego_power(*stoneT, 1);
    const auto & ord = stoneT->relations[0].second;
    for (const auto & phi : struct_morphisms(square, target))
        for (std::size_t i = 0; i < square.size(); ++i)
            for (std::size_t j = 0; j < square.size(); ++j) {
                bool related = true;
                for (int coord = 0; coord < 2 && related; ++coord)
                    related = ord.contains(Tuple{square.universe.elems[i][coord],
                        square.universe.elems[j][coord]});
                if (related)
                    CHECK(ord.contains(Tuple{phi[i], phi[j]}));
            }
}

TEST_CASE("substructure enumeration in canonical order")
{
    AlterEgo bare;
    bare.name = "bare";
    bare.over = cat().algebra("bdl-2");
    auto subs = enumerate_substructures(bare, 1, 100);
    CHECK(subs.structures.size() == 3);  // empty excluded by convention
    CHECK(! subs.truncated);
    CHECK(subs.structures[0].universe.elems == std::vector<Tuple>{{0}});
    CHECK(subs.structures[1].universe.elems == std::vector<Tuple>{{1}});
    CHECK(subs.structures[2].universe.elems == std::vector<Tuple>{{0}, {1}});

    auto threeT = cat().ego("threeT");
    auto chains = enumerate_substructures(*threeT, 1, 100);
    CHECK(chains.structures.size() == 4);
    for (const auto & x : chains.structures)
        check_structure_closed(x);

    auto truncated = enumerate_substructures(*threeT, 1, 2);
    CHECK(truncated.structures.size() == 2);
    CHECK(truncated.truncated);

    SizeBounds tight;
    tight.max_carrier = 8;
    CHECK_THROWS_AS(enumerate_substructures(*threeT, 3, 100, tight), SizeBoundExceeded);
}

TEST_CASE("sigma closure rules out the bare bounds pair")
{
    auto sigmaT = cat().ego("threeT-sigma");
    auto subs = enumerate_substructures(*sigmaT, 1, 100);
    // {0}, {1}, and the whole chain; {0,1} is not sigma-closed
    CHECK(subs.structures.size() == 3);
    for (const auto & x : subs.structures)
        CHECK(x.size() != 2);
}
