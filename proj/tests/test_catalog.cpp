#include <doctest.h>

#include <dwb/catalog.hpp>

using namespace dwb;

namespace {
    const Catalog & cat()
    {
        static Catalog c = load_catalog();
        return c;
    }
}

TEST_CASE("every catalog ego is algebraic over its algebra")
{
    for (const auto & entry : cat().entries)
        if (entry.ego)
            CHECK(is_algebraic_over(*entry.ego).algebraic);
}

TEST_CASE("published tables are reproduced exactly")
{
    // sigma on the three-element chain
    const auto & sigma = cat().ego("threeT-sigma")->partial_ops[0].second;
    CHECK(sigma.domain() == std::vector<Tuple>{{0, 0}, {0, 2}, {2, 2}});
    CHECK(sigma.values() == std::vector<Elem>{0, 1, 2});

    // h and its four-chain domain
    const auto & h = cat().ego("threeT-h")->partial_ops[0].second;
    CHECK(h.domain() == std::vector<Tuple>{{0, 0}, {0, 1}, {1, 2}, {2, 2}});
    CHECK(h.values() == std::vector<Elem>{0, 1, 1, 2});

    // graph(d) and the order on the Stone chain; the order puts the top
    // above the middle element and is reflexive elsewhere
    auto stone3 = cat().algebra("stone-3");
    const auto & d = *stone3->op_named("star");
    CHECK(d.table() == std::vector<Elem>{2, 0, 0});
    const auto & dd = cat().ego("stoneT-3")->total_ops[0].second;
    CHECK(graph_of(dd).tuples == std::vector<Tuple>{{0, 0}, {1, 2}, {2, 2}});
    const auto & ord = cat().ego("stoneT-3")->relations[0].second;
    CHECK(ord.tuples == std::vector<Tuple>{{0, 0}, {1, 1}, {2, 1}, {2, 2}});

    // double Stone star and plus on the four-element chain
    auto ds4 = cat().algebra("ds-4");
    CHECK(ds4->op_named("star")->table() == std::vector<Elem>{3, 0, 0, 0});
    CHECK(ds4->op_named("plus")->table() == std::vector<Elem>{3, 3, 3, 0});
}

TEST_CASE("the median operation is the unique solution of its equations")
{
    auto median = cat().algebra("median-2");
    const auto & m = *median->op_named("m");

    int solutions = 0;
    std::vector<Elem> table(8);
    for (int bits = 0; bits < 256; ++bits) {
        for (int i = 0; i < 8; ++i)
            table[i] = (bits >> i) & 1;
        OperationTable cand(3, 2, table);
        bool ok = true;
        for (Elem x = 0; x < 2 && ok; ++x)
            for (Elem y = 0; y < 2 && ok; ++y)
                for (Elem z = 0; z < 2 && ok; ++z) {
                    Elem v = cand.apply(std::array{x, y, z});
                    if (v != cand.apply(std::array{y, x, z}) ||
                        v != cand.apply(std::array{y, z, x}))
                        ok = false;
                    if (cand.apply(std::array{x, x, y}) != x)
                        ok = false;
                    for (Elem u = 0; u < 2 && ok; ++u)
                        for (Elem w = 0; w < 2; ++w)
                            if (cand.apply(std::array{v, u, w}) !=
                                cand.apply(std::array{x, cand.apply(std::array{y, u, w}),
                                    cand.apply(std::array{z, u, w})})) {
                                ok = false;
                                break;
                            }
                }
        if (ok) {
            ++solutions;
            CHECK(cand.table() == m.table());
        }
    }
    CHECK(solutions == 1);
}

TEST_CASE("the discriminator satisfies its identities")
{
    const auto & t = *cat().algebra("disc-4")->op_named("t");
    for (Elem x = 0; x < 4; ++x)
        for (Elem y = 0; y < 4; ++y)
            for (Elem z = 0; z < 4; ++z) {
                if (x == y)
                    CHECK(t.apply(std::array{x, y, z}) == z);
                else {
                    CHECK(t.apply(std::array{x, y, z}) == x);
                    CHECK(t.apply(std::array{x, y, x}) == x);
                }
            }
}

TEST_CASE("manifest claims run and pass")
{
    auto subset = run_manifest(cat(), "core/");
    CHECK(subset.results.size() == 4);
    CHECK(subset.all_pass());

    auto duality_subset = run_manifest(cat(), "duality/threeT/");
    CHECK(duality_subset.results.size() == 6);
    CHECK(duality_subset.all_pass());

    auto none = run_manifest(cat(), "no-such-claim");
    CHECK(none.results.empty());
    CHECK(none.all_pass());
}

TEST_CASE("manifest results are independent of the worker count")
{
    auto seq = run_manifest(cat(), "free/", {}, 1);
    auto par = run_manifest(cat(), "free/", {}, 4);
    REQUIRE(seq.results.size() == par.results.size());
    for (std::size_t i = 0; i < seq.results.size(); ++i) {
        CHECK(seq.results[i].id == par.results[i].id);
        CHECK(seq.results[i].pass == par.results[i].pass);
        CHECK(seq.results[i].detail == par.results[i].detail);
    }
}

TEST_CASE("provenance tags localise sourced data")
{
    const auto * ds5 = cat().find("ds-5");
    REQUIRE(ds5 != nullptr);
    CHECK(ds5->provenance == Provenance::derived);

    const auto * kleene = cat().find("kleene-4");
    REQUIRE(kleene != nullptr);
    CHECK(kleene->provenance == Provenance::standard_definition);

    const auto * h = cat().find("threeT-h");
    REQUIRE(h != nullptr);
    CHECK(h->provenance == Provenance::derived);
}
