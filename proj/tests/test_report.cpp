#include <doctest.h>

#include <dwb/report.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace dwb;
using nlohmann::ordered_json;

namespace {

    const Catalog & cat()
    {
        static Catalog c = load_catalog();
        return c;
    }

    ordered_json sample_report()
    {
        auto ego = cat().ego("threeT-h");
        auto w = search_injectivity_failure(*ego, 1, 3);
        REQUIRE(w.has_value());
        ordered_json ambient = ordered_json::array(), sub = ordered_json::array();
        for (const auto & t : w->ambient)
            ambient.push_back(t);
        for (const auto & t : w->sub)
            sub.push_back(t);
        ordered_json witness{{"power", w->exponent}, {"ambient", ambient}, {"sub", sub},
            {"map", w->phi}};
        return make_report("injectivity-sweep", ordered_json{{"ego", "threeT-h"}},
            {{"threeT-h", digest_ego(*ego)}}, "witness-found", witness, {1, 3, 100000}, 0);
    }

}

TEST_CASE("reports carry the full schema")
{
    auto r = sample_report();
    for (const char * key : {"command", "inputs", "verdict", "bounds", "elapsed_ms", "scope"})
        CHECK(r.contains(key));
    CHECK(r["scope"] == "finite-level");
    CHECK(r["bounds"]["power-bound"] == 1);
    CHECK(r["elapsed_ms"] == 0);
}

TEST_CASE("json and markdown renderings agree on the verdict")
{
    auto r = sample_report();
    auto js = render_json(r);
    auto md = render_markdown(r);
    CHECK(js.find("\"verdict\": \"witness-found\"") != std::string::npos);
    CHECK(md.find("verdict: **witness-found**") != std::string::npos);
    CHECK(md.find("finite-level") != std::string::npos);
}

TEST_CASE("reports are byte-identical across repeated runs")
{
    auto a = render_json(sample_report());
    auto b = render_json(sample_report());
    CHECK(a == b);
}

TEST_CASE("the cache replays stored bytes and survives corruption")
{
    auto dir = std::filesystem::temp_directory_path() / "dwb-cache-test";
    std::filesystem::remove_all(dir);
    ResultCache cache(dir.string());
    CHECK(cache.enabled());

    auto r = sample_report();
    auto key = ResultCache::key("injectivity-sweep", r["params"],
        {{"threeT-h", r["inputs"][0]["digest"]}}, {1, 3, 100000});
    CHECK(! cache.load(key).has_value());
    cache.store(key, render_json(r));
    auto hit = cache.load(key);
    REQUIRE(hit.has_value());
    CHECK(*hit == render_json(r));

    // corrupt the entry: the loader warns and reports a miss
    {
        std::ofstream out(dir / (key + ".json"), std::ios::trunc);
        out << "{ not json";
    }
    CHECK(! cache.load(key).has_value());
    std::filesystem::remove_all(dir);
}

TEST_CASE("witnesses re-verify from the report alone")
{
    auto r = sample_report();
    auto check = verify_witness_report(r, cat(), nullptr, {});
    CHECK(check.valid);

    // a tampered witness map is caught
    auto broken = r;
    broken["witness"]["map"][0] = broken["witness"]["map"][0] == 0 ? 1 : 0;
    CHECK(! verify_witness_report(broken, cat(), nullptr, {}).valid);

    // endoprimality witnesses re-verify too
    auto v = is_k_endoprimal(*cat().algebra("lattice-2"), 3);
    REQUIRE(! v.holds);
    auto er = make_report("endoprimal", ordered_json{{"m", "lattice-2"}, {"k", 3}},
        {{"lattice-2", digest_algebra(*cat().algebra("lattice-2"))}}, "fails",
        ordered_json{{"table", v.witness}}, {2, 64, 100000}, 0);
    CHECK(verify_witness_report(er, cat(), nullptr, {}).valid);

    auto er_broken = er;
    er_broken["witness"]["table"] = std::vector<int>{0, 0, 0, 0, 0, 0, 0, 1};  // a meet term
    CHECK(! verify_witness_report(er_broken, cat(), nullptr, {}).valid);
}

TEST_CASE("digests track content, not names")
{
    auto a = cat().algebra("bdl-2");
    auto b = cat().algebra("bdl-3");
    CHECK(digest_algebra(*a) != digest_algebra(*b));
    CHECK(digest_algebra(*a) == digest_algebra(*a));
}
