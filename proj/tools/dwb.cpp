// Command-line front end for the duality workbench. Every subcommand emits
// one report (json or markdown) with explicit bounds and a finite-level
// scope banner; witnesses in reports can be re-verified standalone.

#include <dwb/catalog.hpp>
#include <dwb/parallel.hpp>
#include <dwb/report.hpp>
#include <dwb/speclang.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace dwb;
using nlohmann::ordered_json;

namespace {

struct CommonOpts {
    std::vector<std::string> files;
    std::string format = "json";
    std::string out_path;
    std::string cache_dir;
    bool no_cache = false;
    bool timings = false;
    int jobs = 1;
    int power_bound = 2;
    long long size_bound = 64;
    long long op_limit = 100000;
};

struct Workspace {
    Catalog catalog;
    std::vector<ElaboratedDoc> docs;
    SizeBounds bounds;
    const CommonOpts * opts = nullptr;

    std::shared_ptr<const FiniteAlgebra> algebra(const std::string & id) const
    {
        for (const auto & d : docs)
            if (auto a = d.algebra(id))
                return a;
        if (const auto * e = catalog.find(id); e && e->algebra)
            return e->algebra;
        throw std::invalid_argument("unknown algebra " + id);
    }

    std::shared_ptr<const AlterEgo> ego(const std::string & id) const
    {
        for (const auto & d : docs)
            if (auto e = d.ego(id))
                return e;
        if (const auto * e = catalog.find(id); e && e->ego)
            return e->ego;
        throw std::invalid_argument("unknown ego " + id);
    }

    // relations resolve against documents first, then the catalog egos
    std::pair<Relation, std::string> relation(const std::string & id) const
    {
        for (const auto & d : docs)
            if (const auto * r = d.relation(id))
                return {r->rel, r->on};
        for (const auto & entry : catalog.entries)
            if (entry.ego)
                for (const auto & [name, rel] : entry.ego->relations)
                    if (name == id)
                        return {rel, entry.ego->over->name()};
        throw std::invalid_argument("unknown relation " + id);
    }
};

int load_files(Workspace & ws, const CommonOpts & opts)
{
    for (const auto & path : opts.files) {
        std::ifstream in(path);
        if (! in) {
            std::cerr << "error: cannot open " << path << "\n";
            return 2;
        }
        std::stringstream buf;
        buf << in.rdbuf();
        auto doc = parse(buf.str());
        for (const auto & d : doc.diagnostics)
            std::cerr << path << ":" << format_diagnostic(d) << "\n";
        if (! doc.ok())
            return 2;
        auto elab = elaborate(doc, &ws.catalog, true, ws.bounds);
        for (const auto & d : elab.diagnostics)
            std::cerr << path << ":" << format_diagnostic(d) << "\n";
        if (! elab.ok())
            return 2;
        ws.docs.push_back(std::move(elab));
    }
    return 0;
}

ordered_json relation_json(const Relation & r)
{
    ordered_json out = ordered_json::array();
    for (const auto & t : r.tuples)
        out.push_back(t);
    return out;
}

struct RunOutcome {
    ordered_json report;
    int exit_code = 0;
};

bool favorable_verdict(const std::string & verdict)
{
    return verdict == "iso" || verdict == "holds" || verdict == "pass" ||
        verdict == "none-within-bounds" || verdict == "computed" || verdict == "valid";
}

// runs a command body under the cache: on a hit, the stored report bytes are
// reused unchanged; otherwise the body runs and its report is stored
RunOutcome with_cache(const Workspace & ws, const std::string & command,
    const ordered_json & params, const std::vector<ReportInput> & inputs,
    const std::function<std::pair<std::string, ordered_json>()> & body)
{
    const auto & opts = *ws.opts;
    ReportBounds rb{opts.power_bound, opts.size_bound, opts.op_limit};
    ResultCache cache(opts.no_cache ? "" : opts.cache_dir);
    auto key = ResultCache::key(command, params, inputs, rb);
    if (cache.enabled()) {
        if (auto hit = cache.load(key)) {
            auto report = ordered_json::parse(*hit);
            return {report, favorable_verdict(report.value("verdict", "")) ? 0 : 1};
        }
    }
    auto start = std::chrono::steady_clock::now();
    auto [verdict, witness] = body();
    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - start)
                       .count();
    auto report = make_report(command, params, inputs, verdict, witness, rb,
        opts.timings ? elapsed : 0);
    if (cache.enabled())
        cache.store(key, render_json(report));
    return {report, favorable_verdict(verdict) ? 0 : 1};
}

int emit(const RunOutcome & outcome, const CommonOpts & opts)
{
    std::string text = opts.format == "markdown" ? render_markdown(outcome.report)
                                                 : render_json(outcome.report);
    std::cout << text;
    if (! opts.out_path.empty()) {
        std::ofstream out(opts.out_path, std::ios::binary | std::ios::trunc);
        out << render_json(outcome.report);
    }
    return outcome.exit_code;
}

RunOutcome run_duality(const Workspace & ws, const std::string & algebra_id,
    const std::string & ego_id)
{
    auto algebra = ws.algebra(algebra_id);
    auto ego = ws.ego(ego_id);
    ordered_json params{{"algebra", algebra_id}, {"ego", ego_id}};
    std::vector<ReportInput> inputs{{algebra_id, digest_algebra(*algebra)},
        {ego_id, digest_ego(*ego)}};
    return with_cache(ws, "duality", params, inputs, [&]() {
        auto v = check_duality_on(*algebra, *ego, ws.bounds);
        ordered_json witness;
        if (v.kind == DualityKind::not_surjective)
            witness = ordered_json{{"morphism", v.witness},
                {"evaluations", v.evaluation_count}, {"morphisms", v.morphism_count}};
        else if (v.kind == DualityKind::not_injective)
            witness = ordered_json{{"inseparable", {v.inseparable.first, v.inseparable.second}}};
        return std::make_pair(to_string(v.kind), witness);
    });
}

RunOutcome run_fullness(const Workspace & ws, const std::string & ego_id, int power)
{
    auto ego = ws.ego(ego_id);
    ordered_json params{{"ego", ego_id}, {"power", power}};
    std::vector<ReportInput> inputs{{ego_id, digest_ego(*ego)}};
    return with_cache(ws, "fullness", params, inputs, [&]() {
        auto subs = enumerate_substructures(*ego, power,
            static_cast<std::size_t>(ws.opts->size_bound) * 1024, ws.bounds);
        struct Result {
            bool iso = false;
            std::size_t size = 0;
            std::string kind;
        };
        auto results = parallel_map<Result>(ws.opts->jobs, subs.structures.size(),
            [&](std::size_t i) {
                auto v = check_fullness_on(subs.structures[i], ws.bounds);
                return Result{v.iso(), subs.structures[i].size(), to_string(v.kind)};
            });
        for (std::size_t i = 0; i < results.size(); ++i)
            if (! results[i].iso) {
                ordered_json witness{{"substructure-index", i},
                    {"substructure-size", results[i].size}, {"kind", results[i].kind}};
                return std::make_pair(std::string("fail"), witness);
            }
        ordered_json witness{{"substructures", subs.structures.size()},
            {"truncated", subs.truncated}};
        return std::make_pair(std::string("pass"), witness);
    });
}

RunOutcome run_injectivity(const Workspace & ws, const std::string & ego_id)
{
    auto ego = ws.ego(ego_id);
    ordered_json params{{"ego", ego_id}};
    std::vector<ReportInput> inputs{{ego_id, digest_ego(*ego)}};
    return with_cache(ws, "injectivity-sweep", params, inputs, [&]() {
        auto w = search_injectivity_failure(*ego, ws.opts->power_bound,
            static_cast<std::size_t>(ws.opts->size_bound), ws.bounds, ws.opts->jobs);
        if (! w)
            return std::make_pair(std::string("none-within-bounds"), ordered_json());
        invariant(verify_injectivity_witness(*ego, *w, ws.bounds),
            "sweep produced a witness that fails re-verification");
        ordered_json ambient = ordered_json::array(), sub = ordered_json::array();
        for (const auto & t : w->ambient)
            ambient.push_back(t);
        for (const auto & t : w->sub)
            sub.push_back(t);
        ordered_json witness{{"power", w->exponent}, {"ambient", ambient}, {"sub", sub},
            {"map", w->phi}};
        return std::make_pair(std::string("witness-found"), witness);
    });
}

RunOutcome run_entails(const Workspace & ws, const std::string & ego_id,
    const std::string & rel_id)
{
    auto ego = ws.ego(ego_id);
    auto [rel, on] = ws.relation(rel_id);
    ordered_json params{{"ego", ego_id}, {"rel", rel_id}, {"arity", rel.arity},
        {"relation", relation_json(rel)}};
    std::vector<ReportInput> inputs{{ego_id, digest_ego(*ego)},
        {rel_id, digest_text(params["relation"].dump())}};
    Relation s = rel;
    return with_cache(ws, "entails", params, inputs, [&, s]() {
        auto v = entails(*ego, s, ws.bounds);
        if (v.holds) {
            auto cert = pp_certificate(*ego, s, ws.bounds);
            ordered_json atoms = ordered_json::array();
            for (const auto & a : cert.atoms) {
                ordered_json names = ordered_json::array();
                for (int var : a.vars)
                    names.push_back(cert.var_names[var]);
                atoms.push_back({{"symbol", a.symbol}, {"vars", names}});
            }
            ordered_json free = ordered_json::array();
            for (int var : cert.free_vars)
                free.push_back(cert.var_names[var]);
            ordered_json witness{{"on-duality", v.on_duality}, {"maps", v.map_count},
                {"pp-free", free}, {"pp-atoms", atoms}};
            return std::make_pair(std::string("holds"), witness);
        }
        ordered_json witness{{"map", v.witness}, {"escaped", v.escaped}};
        return std::make_pair(std::string("fails"), witness);
    });
}

RunOutcome run_clone_entails(const Workspace & ws, int carrier,
    const std::vector<std::string> & rel_ids, const std::string & target_id)
{
    std::vector<Relation> rels;
    ordered_json rels_json = ordered_json::array();
    for (const auto & id : rel_ids) {
        auto [rel, on] = ws.relation(id);
        rels_json.push_back({{"id", id}, {"arity", rel.arity}, {"tuples", relation_json(rel)}});
        rels.push_back(std::move(rel));
    }
    auto [target, on] = ws.relation(target_id);
    ordered_json params{{"carrier", carrier}, {"rels", rels_json}, {"target", target_id},
        {"arity", target.arity}, {"relation", relation_json(target)}};
    std::vector<ReportInput> inputs{{target_id, digest_text(params["relation"].dump())}};
    for (const auto & rj : rels_json)
        inputs.push_back({rj["id"].get<std::string>(), digest_text(rj.dump())});
    Relation target_rel = target;
    return with_cache(ws, "clone-entails", params, inputs, [&, target_rel]() {
        auto v = clone_entails(carrier, rels, target_rel, ws.bounds);
        if (v.holds)
            return std::make_pair(std::string("holds"), ordered_json());
        ordered_json witness{{"table", v.violator}, {"escaped", v.escaped}};
        return std::make_pair(std::string("fails"), witness);
    });
}

RunOutcome run_endoprimal(const Workspace & ws, const std::string & algebra_id, int k)
{
    auto algebra = ws.algebra(algebra_id);
    ordered_json params{{"m", algebra_id}, {"k", k}};
    std::vector<ReportInput> inputs{{algebra_id, digest_algebra(*algebra)}};
    return with_cache(ws, "endoprimal", params, inputs, [&]() {
        auto v = is_k_endoprimal(*algebra, k, ws.bounds);
        if (v.holds)
            return std::make_pair(std::string("holds"), ordered_json());
        ordered_json witness{{"table", v.witness}};
        return std::make_pair(std::string("fails"), witness);
    });
}

RunOutcome run_free_algebra(const Workspace & ws, const std::string & algebra_id, int k,
    bool print_tables)
{
    auto algebra = ws.algebra(algebra_id);
    ordered_json params{{"m", algebra_id}, {"k", k}};
    std::vector<ReportInput> inputs{{algebra_id, digest_algebra(*algebra)}};
    auto outcome = with_cache(ws, "free-algebra", params, inputs, [&]() {
        auto f = free_algebra(*algebra, k, ws.bounds);
        ordered_json witness{{"size", f.algebra.size()}, {"generators", f.generators}};
        return std::make_pair(std::string("computed"), witness);
    });
    if (print_tables) {
        auto f = free_algebra(*algebra, k, ws.bounds);
        std::cout << serialize_algebra(f.algebra);
    }
    return outcome;
}

RunOutcome run_manifest_cmd(const Workspace & ws, const std::string & filter)
{
    ordered_json params{{"filter", filter}};
    std::vector<ReportInput> inputs;
    return with_cache(ws, "manifest", params, inputs, [&]() {
        auto report = run_manifest(ws.catalog, filter, ws.bounds, ws.opts->jobs);
        ordered_json results = ordered_json::array();
        for (const auto & r : report.results)
            results.push_back({{"id", r.id}, {"pass", r.pass}, {"detail", r.detail}});
        ordered_json witness{{"passed", report.passed}, {"total", report.results.size()},
            {"results", results}};
        return std::make_pair(report.all_pass() ? std::string("pass") : std::string("fail"),
            witness);
    });
}

int run_check_plan(Workspace & ws, const std::string & path, const std::string & plan_name)
{
    const CheckPlan * plan = nullptr;
    for (const auto & d : ws.docs)
        for (const auto & p : d.checks)
            if (p.name == plan_name)
                plan = &p;
    if (! plan) {
        std::cerr << "error: no check plan named " << plan_name << " in " << path << "\n";
        return 2;
    }
    bool all_ok = true;
    for (const auto & step : plan->steps) {
        auto arg = [&](const std::string & key, const std::string & fallback = "") {
            auto it = step.args.find(key);
            return it == step.args.end() ? fallback : it->second;
        };
        std::string verdict;
        try {
            if (step.op == "duality")
                verdict = run_duality(ws, arg("algebra"), arg("ego")).report["verdict"];
            else if (step.op == "fullness")
                verdict = run_fullness(ws, arg("ego"),
                    std::stoi(arg("power", "2"))).report["verdict"];
            else if (step.op == "entails")
                verdict = run_entails(ws, arg("ego"), arg("rel")).report["verdict"];
            else if (step.op == "clone-entails") {
                std::vector<std::string> rels;
                std::stringstream ss(arg("rels"));
                std::string item;
                while (std::getline(ss, item, ','))
                    if (! item.empty())
                        rels.push_back(item);
                verdict = run_clone_entails(ws, std::stoi(arg("carrier", "2")), rels,
                    arg("target")).report["verdict"];
            }
            else if (step.op == "endoprimal")
                verdict = run_endoprimal(ws, arg("m"),
                    std::stoi(arg("k", "1"))).report["verdict"];
            else if (step.op == "free-algebra") {
                auto outcome = run_free_algebra(ws, arg("m"), std::stoi(arg("k", "1")), false);
                long long size = outcome.report["witness"]["size"].get<long long>();
                verdict = "size=" + std::to_string(size);
            }
            else if (step.op == "injectivity-sweep")
                verdict = run_injectivity(ws, arg("ego")).report["verdict"];
            else if (step.op == "manifest")
                verdict = run_manifest_cmd(ws, arg("filter")).report["verdict"];
        }
        catch (const std::exception & e) {
            verdict = std::string("error: ") + e.what();
        }
        std::string expected = arg("expect");
        bool ok = expected.empty() ? favorable_verdict(verdict) : verdict == expected;
        all_ok = all_ok && ok;
        std::cout << (ok ? "ok   " : "FAIL ") << step.op;
        for (const auto & [key, value] : step.args)
            std::cout << " " << key << "=" << value;
        std::cout << " -> " << verdict << "\n";
    }
    std::cout << (all_ok ? "check passed" : "check failed") << ": " << plan_name << "\n";
    return all_ok ? 0 : 1;
}

}

int main(int argc, char ** argv)
{
    CLI::App app{"finite-level natural duality workbench"};
    app.require_subcommand(1);

    CommonOpts opts;
    if (const char * env = std::getenv("DW_CACHE_DIR"))
        opts.cache_dir = env;

    auto add_common = [&](CLI::App * cmd) {
        cmd->add_option("--file", opts.files, "additional declaration files");
        cmd->add_option("--format", opts.format, "report format: json or markdown")
            ->check(CLI::IsMember({"json", "markdown"}));
        cmd->add_option("--out", opts.out_path, "also write the json report here");
        cmd->add_option("--jobs", opts.jobs, "worker count (results are identical)");
        cmd->add_option("--power-bound", opts.power_bound, "largest power to sweep");
        cmd->add_option("--size-bound", opts.size_bound, "largest universe to sweep");
        cmd->add_option("--op-limit", opts.op_limit, "search node budget per operation");
        cmd->add_option("--cache-dir", opts.cache_dir, "result cache directory");
        cmd->add_flag("--no-cache", opts.no_cache, "bypass the result cache");
        cmd->add_flag("--timings", opts.timings, "report real elapsed time");
    };

    std::string algebra_id, ego_id, rel_id, target_id, filter, plan, in_path, file_arg;
    std::vector<std::string> rel_ids;
    int k = 1, power = 2, carrier = 2;
    bool emit_catalog = false, print_tables = false;

    auto * parse_cmd = app.add_subcommand("parse", "parse declaration files");
    parse_cmd->add_option("inputs", opts.files, "files to parse");
    parse_cmd->add_flag("--emit-catalog", emit_catalog, "print the catalog in text form");
    add_common(parse_cmd);

    auto * check_cmd = app.add_subcommand("check", "run a named check plan from a file");
    check_cmd->add_option("planfile", file_arg, "declaration file")->required();
    check_cmd->add_option("plan", plan, "check plan name")->required();
    add_common(check_cmd);

    auto * manifest_cmd = app.add_subcommand("manifest", "run the catalog claim manifest");
    manifest_cmd->add_option("--filter", filter, "substring filter on claim ids");
    add_common(manifest_cmd);

    auto * duality_cmd = app.add_subcommand("duality", "duality check on one algebra");
    duality_cmd->add_option("--algebra", algebra_id)->required();
    duality_cmd->add_option("--ego", ego_id)->required();
    add_common(duality_cmd);

    auto * fullness_cmd = app.add_subcommand("fullness",
        "fullness check on every closed substructure of a power");
    fullness_cmd->add_option("--ego", ego_id)->required();
    fullness_cmd->add_option("--power", power);
    add_common(fullness_cmd);

    auto * inj_cmd = app.add_subcommand("injectivity-sweep",
        "search for a non-extendable morphism within bounds");
    inj_cmd->add_option("--ego", ego_id)->required();
    add_common(inj_cmd);

    auto * entails_cmd = app.add_subcommand("entails", "entailment decision");
    entails_cmd->add_option("--ego", ego_id)->required();
    entails_cmd->add_option("--rel", rel_id)->required();
    add_common(entails_cmd);

    auto * clone_cmd = app.add_subcommand("clone-entails", "clone entailment decision");
    clone_cmd->add_option("--carrier", carrier);
    clone_cmd->add_option("--rels", rel_ids)->delimiter(',');
    clone_cmd->add_option("--target", target_id)->required();
    add_common(clone_cmd);

    auto * endo_cmd = app.add_subcommand("endoprimal", "k-endoprimality check");
    endo_cmd->add_option("--m", algebra_id)->required();
    endo_cmd->add_option("--k", k);
    add_common(endo_cmd);

    auto * free_cmd = app.add_subcommand("free-algebra", "k-generated free algebra");
    free_cmd->add_option("--m", algebra_id)->required();
    free_cmd->add_option("--k", k);
    free_cmd->add_flag("--print", print_tables, "print the algebra in text form");
    add_common(free_cmd);

    auto * verify_cmd = app.add_subcommand("verify-witness", "re-verify a report's witness");
    verify_cmd->add_option("--in", in_path, "report file")->required();
    add_common(verify_cmd);

    auto * report_cmd = app.add_subcommand("report", "re-render a saved report");
    report_cmd->add_option("--in", in_path, "report file")->required();
    add_common(report_cmd);

    CLI11_PARSE(app, argc, argv);

    try {
        Workspace ws;
        ws.bounds.max_search_nodes = opts.op_limit;
        ws.bounds.max_carrier = static_cast<int>(std::max(64LL, opts.size_bound));
        ws.opts = &opts;
        ws.catalog = load_catalog(ws.bounds);
        if (int rc = load_files(ws, opts))
            return rc;

        if (parse_cmd->parsed()) {
            if (emit_catalog) {
                std::cout << serialize_catalog(ws.catalog);
                return 0;
            }
            ordered_json summary;
            std::size_t algebras = 0, egos = 0, relations = 0, checks = 0;
            for (const auto & d : ws.docs) {
                algebras += d.algebras.size();
                egos += d.egos.size();
                relations += d.relations.size();
                checks += d.checks.size();
            }
            summary["algebras"] = algebras;
            summary["egos"] = egos;
            summary["relations"] = relations;
            summary["checks"] = checks;
            std::cout << summary.dump(2) << "\n";
            return 0;
        }
        if (check_cmd->parsed()) {
            opts.files.push_back(file_arg);
            Workspace ws2;
            ws2.bounds = ws.bounds;
            ws2.opts = &opts;
            ws2.catalog = std::move(ws.catalog);
            if (int rc = load_files(ws2, opts))
                return rc;
            return run_check_plan(ws2, file_arg, plan);
        }
        if (manifest_cmd->parsed())
            return emit(run_manifest_cmd(ws, filter), opts);
        if (duality_cmd->parsed())
            return emit(run_duality(ws, algebra_id, ego_id), opts);
        if (fullness_cmd->parsed())
            return emit(run_fullness(ws, ego_id, power), opts);
        if (inj_cmd->parsed())
            return emit(run_injectivity(ws, ego_id), opts);
        if (entails_cmd->parsed())
            return emit(run_entails(ws, ego_id, rel_id), opts);
        if (clone_cmd->parsed())
            return emit(run_clone_entails(ws, carrier, rel_ids, target_id), opts);
        if (endo_cmd->parsed())
            return emit(run_endoprimal(ws, algebra_id, k), opts);
        if (free_cmd->parsed())
            return emit(run_free_algebra(ws, algebra_id, k, print_tables), opts);
        if (verify_cmd->parsed() || report_cmd->parsed()) {
            std::ifstream in(in_path, std::ios::binary);
            if (! in) {
                std::cerr << "error: cannot open " << in_path << "\n";
                return 2;
            }
            std::stringstream buf;
            buf << in.rdbuf();
            auto report = ordered_json::parse(buf.str(), nullptr, false);
            if (report.is_discarded()) {
                std::cerr << "error: " << in_path << " is not a valid report\n";
                return 2;
            }
            if (report_cmd->parsed()) {
                std::cout << (opts.format == "markdown" ? render_markdown(report)
                                                        : render_json(report));
                return 0;
            }
            const ElaboratedDoc * doc = ws.docs.empty() ? nullptr : &ws.docs.front();
            auto check = verify_witness_report(report, ws.catalog, doc, ws.bounds);
            std::cout << (check.valid ? "valid" : "invalid") << ": " << check.detail << "\n";
            return check.valid ? 0 : 1;
        }
    }
    catch (const std::exception & e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
