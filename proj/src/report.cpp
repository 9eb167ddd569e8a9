#include <dwb/report.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace dwb {

using nlohmann::ordered_json;

std::string digest_text(const std::string & text)
{
    return hex64(fnv1a64(text));
}

std::string digest_algebra(const FiniteAlgebra & a)
{
    return digest_text(serialize_algebra(a));
}

std::string digest_ego(const AlterEgo & e)
{
    return digest_text(serialize_ego(e));
}

ordered_json make_report(const std::string & command, const ordered_json & params,
    const std::vector<ReportInput> & inputs, const std::string & verdict,
    const ordered_json & witness, const ReportBounds & bounds, long long elapsed_ms)
{
    ordered_json r;
    r["command"] = command;
    if (! params.empty())
        r["params"] = params;
    r["inputs"] = ordered_json::array();
    for (const auto & in : inputs)
        r["inputs"].push_back({{"id", in.id}, {"digest", in.digest}});
    r["verdict"] = verdict;
    if (! witness.is_null())
        r["witness"] = witness;
    r["bounds"] = {{"power-bound", bounds.power_bound}, {"size-bound", bounds.size_bound},
        {"op-limit", bounds.op_limit}};
    r["elapsed_ms"] = elapsed_ms;
    r["scope"] = "finite-level";
    return r;
}

std::string render_json(const ordered_json & report)
{
    return report.dump(2) + "\n";
}

std::string render_markdown(const ordered_json & report)
{
    std::ostringstream os;
    os << "## " << report.value("command", "?") << "\n\n";
    os << "- verdict: **" << report.value("verdict", "?") << "**\n";
    if (report.contains("params"))
        for (const auto & [k, v] : report["params"].items())
            os << "- " << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    if (report.contains("inputs")) {
        os << "- inputs:\n";
        for (const auto & in : report["inputs"])
            os << "  - " << in.value("id", "?") << " (digest " << in.value("digest", "?") << ")\n";
    }
    if (report.contains("witness"))
        os << "- witness: `" << report["witness"].dump() << "`\n";
    if (report.contains("bounds"))
        os << "- bounds: " << report["bounds"].dump() << "\n";
    os << "- elapsed_ms: " << report.value("elapsed_ms", 0LL) << "\n";
    os << "- scope: " << report.value("scope", "finite-level")
       << " (claims beyond the finite level are out of scope)\n";
    return os.str();
}

std::string ResultCache::key(const std::string & command, const ordered_json & params,
    const std::vector<ReportInput> & inputs, const ReportBounds & bounds)
{
    std::string blob = command + "\n" + params.dump() + "\n" + bounds.key();
    for (const auto & in : inputs)
        blob += "\n" + in.id + "=" + in.digest;
    return hex64(fnv1a64(blob));
}

std::optional<std::string> ResultCache::load(const std::string & key) const
{
    if (! enabled())
        return std::nullopt;
    auto path = std::filesystem::path(dir_) / (key + ".json");
    std::ifstream in(path, std::ios::binary);
    if (! in)
        return std::nullopt;
    std::stringstream buf;
    buf << in.rdbuf();
    std::string bytes = buf.str();
    auto parsed = nlohmann::json::parse(bytes, nullptr, false);
    if (parsed.is_discarded()) {
        std::cerr << "warning: cache entry " << path.string()
                  << " is corrupt; recomputing\n";
        return std::nullopt;
    }
    return bytes;
}

void ResultCache::store(const std::string & key, const std::string & bytes) const
{
    if (! enabled())
        return;
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    auto path = std::filesystem::path(dir_) / (key + ".json");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << bytes;
}

namespace {

    std::shared_ptr<const FiniteAlgebra> resolve_algebra(const std::string & id,
        const Catalog & catalog, const ElaboratedDoc * doc)
    {
        if (doc)
            if (auto a = doc->algebra(id))
                return a;
        if (const auto * e = catalog.find(id); e && e->algebra)
            return e->algebra;
        return nullptr;
    }

    std::shared_ptr<const AlterEgo> resolve_ego(const std::string & id,
        const Catalog & catalog, const ElaboratedDoc * doc)
    {
        if (doc)
            if (auto e = doc->ego(id))
                return e;
        if (const auto * e = catalog.find(id); e && e->ego)
            return e->ego;
        return nullptr;
    }

    std::vector<Tuple> tuples_from_json(const nlohmann::json & j)
    {
        std::vector<Tuple> out;
        for (const auto & t : j) {
            Tuple tt;
            for (const auto & v : t)
                tt.push_back(v.get<Elem>());
            out.push_back(std::move(tt));
        }
        return out;
    }

}

WitnessCheck verify_witness_report(const ordered_json & report, const Catalog & catalog,
    const ElaboratedDoc * doc, const SizeBounds & bounds)
{
    if (! report.contains("witness"))
        return {false, "report carries no witness"};
    std::string command = report.value("command", "");
    const auto & params = report.at("params");
    const auto & witness = report.at("witness");

    if (command == "injectivity-sweep") {
        auto ego = resolve_ego(params.value("ego", ""), catalog, doc);
        if (! ego)
            return {false, "cannot resolve ego " + params.value("ego", "")};
        InjectivityWitness w;
        w.exponent = witness.value("power", 0);
        w.ambient = tuples_from_json(witness.at("ambient"));
        w.sub = tuples_from_json(witness.at("sub"));
        for (const auto & v : witness.at("map"))
            w.phi.push_back(v.get<Elem>());
        bool ok = verify_injectivity_witness(*ego, w, bounds);
        return {ok, ok ? "morphism does not extend; witness verified"
                       : "witness failed re-verification"};
    }
    if (command == "duality") {
        auto algebra = resolve_algebra(params.value("algebra", ""), catalog, doc);
        auto ego = resolve_ego(params.value("ego", ""), catalog, doc);
        if (! algebra || ! ego)
            return {false, "cannot resolve inputs"};
        if (! witness.contains("morphism"))
            return {false, "duality witness must carry a morphism"};
        HomMap phi;
        for (const auto & v : witness.at("morphism"))
            phi.push_back(v.get<Elem>());
        auto da = dual_of_algebra(*algebra, *ego, bounds);
        auto target = ego_power(*ego, 1, bounds);
        if (! is_struct_morphism(da, target, phi))
            return {false, "witness map is not a structure morphism"};
        for (Elem a = 0; a < algebra->size(); ++a) {
            HomMap ev(da.size());
            for (std::size_t h = 0; h < da.size(); ++h)
                ev[h] = da.universe.elems[h][a];
            if (ev == phi)
                return {false, "witness map is an evaluation"};
        }
        return {true, "non-evaluation morphism verified"};
    }
    if (command == "entails") {
        auto ego = resolve_ego(params.value("ego", ""), catalog, doc);
        if (! ego)
            return {false, "cannot resolve ego"};
        Relation s;
        s.arity = params.value("arity", 0);
        s.tuples = tuples_from_json(params.at("relation"));
        s = Relation::from_tuples(s.arity, s.tuples);
        HomMap u;
        for (const auto & v : witness.at("map"))
            u.push_back(v.get<Elem>());
        auto labelled = dual_of_relation(*ego, s, bounds);
        auto target = ego_power(*ego, 1, bounds);
        if (! is_struct_morphism(labelled.dual, target, u))
            return {false, "witness map does not preserve the structure"};
        Tuple value(s.arity);
        for (int i = 0; i < s.arity; ++i)
            value[i] = u[labelled.rho[i]];
        if (s.contains(value))
            return {false, "witness value tuple lies inside the relation"};
        return {true, "preserving map escapes the relation; witness verified"};
    }
    if (command == "clone-entails") {
        int carrier = params.value("carrier", 0);
        Relation s = Relation::from_tuples(params.value("arity", 0),
            tuples_from_json(params.at("relation")));
        std::vector<Relation> rels;
        for (const auto & rj : params.at("rels"))
            rels.push_back(Relation::from_tuples(rj.value("arity", 0),
                tuples_from_json(rj.at("tuples"))));
        std::vector<Elem> table;
        for (const auto & v : witness.at("table"))
            table.push_back(v.get<Elem>());
        // direct preservation check of the violator
        std::size_t k = s.tuples.size();
        for (const auto & r : rels) {
            if (r.tuples.empty() && k > 0)
                continue;
            std::vector<std::size_t> pick(k, 0);
            while (true) {
                Tuple row(r.arity);
                for (int i = 0; i < r.arity; ++i) {
                    std::size_t cell = 0;
                    for (std::size_t j = 0; j < k; ++j)
                        cell = cell * carrier + static_cast<std::size_t>(r.tuples[pick[j]][i]);
                    row[i] = table[cell];
                }
                if (! r.contains(row))
                    return {false, "witness table does not preserve the relation set"};
                if (k == 0)
                    break;
                int pos = static_cast<int>(k) - 1;
                while (pos >= 0 && ++pick[pos] == r.tuples.size()) {
                    pick[pos] = 0;
                    --pos;
                }
                if (pos < 0)
                    break;
            }
        }
        Tuple value(s.arity);
        for (int i = 0; i < s.arity; ++i) {
            std::size_t cell = 0;
            for (std::size_t t = 0; t < k; ++t)
                cell = cell * carrier + static_cast<std::size_t>(s.tuples[t][i]);
            value[i] = table[cell];
        }
        if (s.contains(value))
            return {false, "witness table keeps the relation invariant"};
        return {true, "violating polymorphism verified"};
    }
    if (command == "endoprimal") {
        auto algebra = resolve_algebra(params.value("m", ""), catalog, doc);
        if (! algebra)
            return {false, "cannot resolve algebra"};
        int k = params.value("k", 0);
        std::vector<Elem> table;
        for (const auto & v : witness.at("table"))
            table.push_back(v.get<Elem>());
        auto endos = endomorphisms(*algebra, bounds);
        if (! commutes_with_endomorphisms(*algebra, endos, table, k))
            return {false, "witness table does not commute with the endomorphisms"};
        auto clone = term_clone(*algebra, k, bounds);
        if (std::binary_search(clone.begin(), clone.end(), table))
            return {false, "witness table is a term operation"};
        return {true, "endomorphism-preserving non-term verified"};
    }
    return {false, "no witness verifier for command " + command};
}

}
