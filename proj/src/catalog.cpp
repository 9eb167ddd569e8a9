#include <dwb/catalog.hpp>
#include <dwb/parallel.hpp>

#include <algorithm>
#include <array>
#include <sstream>

namespace dwb {

std::string to_string(Provenance p)
{
    switch (p) {
    case Provenance::literature: return "literature";
    case Provenance::standard_definition: return "standard";
    case Provenance::derived: return "derived";
    }
    return "?";
}

namespace {

    using AlgPtr = std::shared_ptr<const FiniteAlgebra>;

    std::vector<Elem> binary_table(int n, const std::function<Elem(Elem, Elem)> & f)
    {
        std::vector<Elem> t(static_cast<std::size_t>(n) * n);
        for (Elem x = 0; x < n; ++x)
            for (Elem y = 0; y < n; ++y)
                t[static_cast<std::size_t>(x) * n + y] = f(x, y);
        return t;
    }

    std::vector<Elem> ternary_table(int n, const std::function<Elem(Elem, Elem, Elem)> & f)
    {
        std::vector<Elem> t(static_cast<std::size_t>(n) * n * n);
        for (Elem x = 0; x < n; ++x)
            for (Elem y = 0; y < n; ++y)
                for (Elem z = 0; z < n; ++z)
                    t[(static_cast<std::size_t>(x) * n + y) * n + z] = f(x, y, z);
        return t;
    }

    FiniteAlgebra chain_lattice(const std::string & name, int n, bool bounded,
        std::vector<std::string> labels = {})
    {
        Signature sig;
        std::vector<OperationTable> interp;
        sig.ops.push_back({"join", 2});
        interp.emplace_back(2, n, binary_table(n, [](Elem x, Elem y) { return std::max(x, y); }));
        sig.ops.push_back({"meet", 2});
        interp.emplace_back(2, n, binary_table(n, [](Elem x, Elem y) { return std::min(x, y); }));
        if (bounded) {
            sig.ops.push_back({"zero", 0});
            interp.push_back(OperationTable::constant(n, 0));
            sig.ops.push_back({"one", 0});
            interp.push_back(OperationTable::constant(n, n - 1));
        }
        return FiniteAlgebra(name, n, sig, interp, std::move(labels));
    }

    FiniteAlgebra stone_chain(const std::string & name, int n, std::vector<std::string> labels)
    {
        Signature sig;
        std::vector<OperationTable> interp;
        sig.ops.push_back({"join", 2});
        interp.emplace_back(2, n, binary_table(n, [](Elem x, Elem y) { return std::max(x, y); }));
        sig.ops.push_back({"meet", 2});
        interp.emplace_back(2, n, binary_table(n, [](Elem x, Elem y) { return std::min(x, y); }));
        std::vector<Elem> star(n, 0);
        star[0] = n - 1;  // pseudocomplement on a chain
        sig.ops.push_back({"star", 1});
        interp.emplace_back(1, n, star);
        sig.ops.push_back({"zero", 0});
        interp.push_back(OperationTable::constant(n, 0));
        sig.ops.push_back({"one", 0});
        interp.push_back(OperationTable::constant(n, n - 1));
        return FiniteAlgebra(name, n, sig, interp, std::move(labels));
    }

    FiniteAlgebra double_stone_chain(const std::string & name, int n,
        std::vector<std::string> labels)
    {
        Signature sig;
        std::vector<OperationTable> interp;
        sig.ops.push_back({"join", 2});
        interp.emplace_back(2, n, binary_table(n, [](Elem x, Elem y) { return std::max(x, y); }));
        sig.ops.push_back({"meet", 2});
        interp.emplace_back(2, n, binary_table(n, [](Elem x, Elem y) { return std::min(x, y); }));
        std::vector<Elem> star(n, 0), plus(n, n - 1);
        star[0] = n - 1;
        plus[n - 1] = 0;
        sig.ops.push_back({"star", 1});
        interp.emplace_back(1, n, star);
        sig.ops.push_back({"plus", 1});
        interp.emplace_back(1, n, plus);
        sig.ops.push_back({"zero", 0});
        interp.push_back(OperationTable::constant(n, 0));
        sig.ops.push_back({"one", 0});
        interp.push_back(OperationTable::constant(n, n - 1));
        return FiniteAlgebra(name, n, sig, interp, std::move(labels));
    }

    FiniteAlgebra kleene_four()
    {
        int n = 4;
        Signature sig;
        std::vector<OperationTable> interp;
        sig.ops.push_back({"join", 2});
        interp.emplace_back(2, n, binary_table(n, [](Elem x, Elem y) { return std::max(x, y); }));
        sig.ops.push_back({"meet", 2});
        interp.emplace_back(2, n, binary_table(n, [](Elem x, Elem y) { return std::min(x, y); }));
        sig.ops.push_back({"neg", 1});
        interp.emplace_back(1, n, std::vector<Elem>{3, 2, 1, 0});
        sig.ops.push_back({"zero", 0});
        interp.push_back(OperationTable::constant(n, 0));
        sig.ops.push_back({"one", 0});
        interp.push_back(OperationTable::constant(n, 3));
        return FiniteAlgebra("kleene-4", n, sig, interp, {"0", "a", "b", "1"});
    }

    FiniteAlgebra median_two()
    {
        Signature sig;
        sig.ops.push_back({"m", 3});
        std::vector<OperationTable> interp;
        interp.emplace_back(3, 2, ternary_table(2, [](Elem x, Elem y, Elem z) {
            return static_cast<Elem>((x & y) | (y & z) | (z & x));
        }));
        return FiniteAlgebra("median-2", 2, sig, interp);
    }

    FiniteAlgebra cyclic_group(int m)
    {
        Signature sig;
        std::vector<OperationTable> interp;
        sig.ops.push_back({"add", 2});
        interp.emplace_back(2, m, binary_table(m, [m](Elem x, Elem y) { return (x + y) % m; }));
        sig.ops.push_back({"neg", 1});
        std::vector<Elem> neg(m);
        for (Elem x = 0; x < m; ++x)
            neg[x] = (m - x) % m;
        interp.emplace_back(1, m, neg);
        sig.ops.push_back({"zero", 0});
        interp.push_back(OperationTable::constant(m, 0));
        return FiniteAlgebra("group-z" + std::to_string(m), m, sig, interp);
    }

    FiniteAlgebra semilattice_two(const std::string & name, bool with_zero, bool with_one)
    {
        Signature sig;
        std::vector<OperationTable> interp;
        sig.ops.push_back({"join", 2});
        interp.emplace_back(2, 2, binary_table(2, [](Elem x, Elem y) { return std::max(x, y); }));
        if (with_zero) {
            sig.ops.push_back({"zero", 0});
            interp.push_back(OperationTable::constant(2, 0));
        }
        if (with_one) {
            sig.ops.push_back({"one", 0});
            interp.push_back(OperationTable::constant(2, 1));
        }
        return FiniteAlgebra(name, 2, sig, interp);
    }

    FiniteAlgebra discriminator_four()
    {
        int n = 4;
        Signature sig;
        std::vector<OperationTable> interp;
        sig.ops.push_back({"join", 2});
        interp.emplace_back(2, n, binary_table(n, [](Elem x, Elem y) { return std::max(x, y); }));
        sig.ops.push_back({"meet", 2});
        interp.emplace_back(2, n, binary_table(n, [](Elem x, Elem y) { return std::min(x, y); }));
        sig.ops.push_back({"t", 3});
        interp.emplace_back(3, n, ternary_table(n, [](Elem x, Elem y, Elem z) {
            return x == y ? z : x;
        }));
        sig.ops.push_back({"zero", 0});
        interp.push_back(OperationTable::constant(n, 0));
        sig.ops.push_back({"one", 0});
        interp.push_back(OperationTable::constant(n, 3));
        return FiniteAlgebra("disc-4", n, sig, interp, {"0", "a", "b", "1"});
    }

    AlterEgo make_ego(const std::string & name, AlgPtr over)
    {
        AlterEgo ego;
        ego.name = name;
        ego.over = std::move(over);
        return ego;
    }

}

const CatalogEntry * Catalog::find(const std::string & id) const
{
    for (const auto & e : entries)
        if (e.id == id)
            return &e;
    return nullptr;
}

std::shared_ptr<const FiniteAlgebra> Catalog::algebra(const std::string & id) const
{
    const auto * e = find(id);
    if (! e || ! e->algebra)
        throw std::invalid_argument("no catalog algebra named " + id);
    return e->algebra;
}

std::shared_ptr<const AlterEgo> Catalog::ego(const std::string & id) const
{
    const auto * e = find(id);
    if (! e || ! e->ego)
        throw std::invalid_argument("no catalog ego named " + id);
    return e->ego;
}

Catalog load_catalog(const SizeBounds & bounds)
{
    Catalog cat;
    auto add_algebra = [&](FiniteAlgebra a, Provenance p, std::string source,
                           std::string notes = "") {
        auto ptr = std::make_shared<FiniteAlgebra>(std::move(a));
        cat.entries.push_back({ptr->name(), ptr, nullptr, p, std::move(source), std::move(notes)});
        return ptr;
    };
    auto add_ego = [&](AlterEgo e, Provenance p, std::string source, std::string notes = "") {
        auto ptr = std::make_shared<AlterEgo>(std::move(e));
        cat.entries.push_back({ptr->name, nullptr, ptr, p, std::move(source), std::move(notes)});
        return ptr;
    };

    // distributive lattices, with and without bounds
    auto lattice2 = add_algebra(chain_lattice("lattice-2", 2, false),
        Provenance::standard_definition, "two-element lattice");
    add_algebra(chain_lattice("lattice-3", 3, false),
        Provenance::standard_definition, "three-element chain lattice");
    add_algebra(chain_lattice("lattice-4", 4, false),
        Provenance::standard_definition, "four-element chain lattice");
    auto bdl2 = add_algebra(chain_lattice("bdl-2", 2, true),
        Provenance::standard_definition, "two-element bounded distributive lattice");
    auto bdl3 = add_algebra(chain_lattice("bdl-3", 3, true, {"0", "d", "1"}),
        Provenance::literature, "three-element bounded chain, Davey-Haviar-Priestley");
    add_algebra(chain_lattice("bdl-4", 4, true),
        Provenance::standard_definition, "four-element bounded chain");
    auto bdl22 = add_algebra(product(*bdl2, *bdl2, "bdl-2x2", bounds),
        Provenance::standard_definition, "square of the two-element bounded lattice");
    add_algebra(product(*bdl22, *bdl2, "bdl-2x2x2", bounds),
        Provenance::standard_definition, "cube of the two-element bounded lattice");
    add_algebra(product(*bdl3, *bdl2, "bdl-3x2", bounds),
        Provenance::standard_definition, "product of the three- and two-element bounded chains");

    // Stone and double Stone algebras
    auto stone3 = add_algebra(stone_chain("stone-3", 3, {"0", "a", "1"}),
        Provenance::literature, "three-element Stone algebra, Clark-Davey");
    auto ds2 = add_algebra(double_stone_chain("ds-2", 2, {"0", "1"}),
        Provenance::standard_definition, "Boolean double Stone algebra");
    auto ds3 = add_algebra(double_stone_chain("ds-3", 3, {"0", "a", "1"}),
        Provenance::literature, "regular double Stone chain, Haviar-Priestley");
    add_algebra(double_stone_chain("ds-4", 4, {"0", "a", "b", "1"}),
        Provenance::literature, "four-element double Stone chain, Haviar-Priestley");
    add_algebra(double_stone_chain("ds-5", 5, {"0", "a", "b", "c", "1"}),
        Provenance::derived, "five-element double Stone chain",
        "star and plus derived from the chain pseudocomplement conditions");
    add_algebra(product(*ds2, *ds2, "ds-2x2", bounds),
        Provenance::standard_definition, "square of the Boolean double Stone algebra");
    add_algebra(product(*ds3, *ds2, "ds-3x2", bounds),
        Provenance::standard_definition, "double Stone algebra with one Boolean factor");

    // median algebra, Kleene algebra, groups, semilattices, discriminator
    auto median2 = add_algebra(median_two(), Provenance::derived,
        "two-element median algebra",
        "unique ternary table satisfying the median equations; uniqueness checked by enumeration");
    add_algebra(kleene_four(), Provenance::standard_definition,
        "four-element Kleene chain",
        "tables are the standard definition; the source names the algebra only");
    std::vector<AlgPtr> groups;
    for (int m = 2; m <= 6; ++m)
        groups.push_back(add_algebra(cyclic_group(m), Provenance::standard_definition,
            "cyclic group"));
    auto sl = add_algebra(semilattice_two("semilat-2", false, false),
        Provenance::literature, "two-element semilattice, Hofmann-Mislove-Stralka");
    auto sl0 = add_algebra(semilattice_two("semilat-2-zero", true, false),
        Provenance::literature, "two-element semilattice with zero");
    auto sl1 = add_algebra(semilattice_two("semilat-2-one", false, true),
        Provenance::literature, "two-element semilattice with one");
    auto sl01 = add_algebra(semilattice_two("semilat-2-bounded", true, true),
        Provenance::literature, "two-element bounded semilattice");
    auto disc4 = add_algebra(discriminator_four(), Provenance::literature,
        "four-element chain with the ternary discriminator, Clark-Davey-Willard");

    // alter egos
    {
        auto ego = make_ego("threeT", bdl3);
        ego.total_ops.emplace_back("f", OperationTable(1, 3, {0, 0, 2}));
        ego.total_ops.emplace_back("g", OperationTable(1, 3, {0, 2, 2}));
        add_ego(std::move(ego), Provenance::literature,
            "non-identity endomorphisms of the three-chain, Davey-Haviar-Priestley");
    }
    {
        auto ego = make_ego("threeT-sigma", bdl3);
        ego.total_ops.emplace_back("f", OperationTable(1, 3, {0, 0, 2}));
        ego.total_ops.emplace_back("g", OperationTable(1, 3, {0, 2, 2}));
        ego.partial_ops.emplace_back("sigma",
            PartialOperationTable(2, 3, {{0, 0}, {0, 2}, {2, 2}}, {0, 1, 2}));
        add_ego(std::move(ego), Provenance::literature,
            "sigma enrichment, Davey-Haviar");
    }
    {
        auto ego = make_ego("threeT-h", bdl3);
        ego.total_ops.emplace_back("f", OperationTable(1, 3, {0, 0, 2}));
        ego.total_ops.emplace_back("g", OperationTable(1, 3, {0, 2, 2}));
        ego.partial_ops.emplace_back("h",
            PartialOperationTable(2, 3, {{0, 0}, {0, 1}, {1, 2}, {2, 2}}, {0, 1, 1, 2}));
        add_ego(std::move(ego), Provenance::derived,
            "h enrichment, Davey-Haviar-Willard",
            "values decoded from the published diagram; flagged for localisation of failures");
    }
    {
        // constants are one-element subalgebras only in the unbounded signature
        auto ego = make_ego("twoT-priestley", lattice2);
        ego.total_ops.emplace_back("czero", OperationTable::constant(2, 0));
        ego.total_ops.emplace_back("cone", OperationTable::constant(2, 1));
        ego.relations.emplace_back("leq",
            Relation::from_tuples(2, {{0, 0}, {0, 1}, {1, 1}}));
        add_ego(std::move(ego), Provenance::literature, "Priestley duality");
    }
    {
        auto ego = make_ego("twoT-order", bdl2);
        ego.relations.emplace_back("bleq",
            Relation::from_tuples(2, {{0, 0}, {0, 1}, {1, 1}}));
        add_ego(std::move(ego), Provenance::literature,
            "restricted Priestley duality for bounded lattices");
    }
    {
        auto ego = make_ego("stoneT-3", stone3);
        ego.total_ops.emplace_back("d", OperationTable(1, 3, {0, 2, 2}));
        ego.relations.emplace_back("ord",
            Relation::from_tuples(2, {{0, 0}, {1, 1}, {2, 2}, {2, 1}}));
        add_ego(std::move(ego), Provenance::literature,
            "Stone algebra duality, Clark-Davey");
    }
    {
        auto ego = make_ego("medianT-2", median2);
        ego.total_ops.emplace_back("star", OperationTable(1, 2, {1, 0}));
        ego.total_ops.emplace_back("czero", OperationTable::constant(2, 0));
        ego.total_ops.emplace_back("cone", OperationTable::constant(2, 1));
        ego.relations.emplace_back("median-leq",
            Relation::from_tuples(2, {{0, 0}, {0, 1}, {1, 1}}));
        add_ego(std::move(ego), Provenance::literature, "median algebra duality, Clark-Davey");
    }
    for (int m = 2; m <= 6; ++m) {
        auto g = groups[static_cast<std::size_t>(m - 2)];
        auto ego = make_ego("zT-" + std::to_string(m), g);
        ego.total_ops.emplace_back("add", *g->op_named("add"));
        ego.total_ops.emplace_back("neg", *g->op_named("neg"));
        ego.total_ops.emplace_back("zero", *g->op_named("zero"));
        add_ego(std::move(ego), Provenance::literature,
            "cyclic group duality, Davey-Werner");
    }
    {
        auto ego = make_ego("semilatT-2", sl);
        ego.total_ops.emplace_back("join", *sl->op_named("join"));
        ego.total_ops.emplace_back("czero", OperationTable::constant(2, 0));
        ego.total_ops.emplace_back("cone", OperationTable::constant(2, 1));
        add_ego(std::move(ego), Provenance::literature,
            "strong duality for semilattices, Davey-Haviar-Niven");
    }
    {
        auto ego = make_ego("semilatT-2-zero", sl0);
        ego.total_ops.emplace_back("join", *sl0->op_named("join"));
        ego.total_ops.emplace_back("czero", OperationTable::constant(2, 0));
        add_ego(std::move(ego), Provenance::literature,
            "strong duality for semilattices with zero");
    }
    {
        auto ego = make_ego("semilatT-2-one", sl1);
        ego.total_ops.emplace_back("join", *sl1->op_named("join"));
        ego.total_ops.emplace_back("cone", OperationTable::constant(2, 1));
        add_ego(std::move(ego), Provenance::literature,
            "strong duality for semilattices with one");
    }
    {
        auto ego = make_ego("semilatT-2-bounded", sl01);
        ego.total_ops.emplace_back("join", *sl01->op_named("join"));
        add_ego(std::move(ego), Provenance::literature,
            "strong duality for bounded semilattices");
    }
    {
        auto ego = make_ego("discT-bot", disc4);
        ego.relations.emplace_back("graph-u",
            Relation::from_tuples(2, {{0, 0}, {1, 2}, {3, 3}}));
        add_ego(std::move(ego), Provenance::literature,
            "partial endomorphism graph, Clark-Davey-Willard",
            "u fixes the bounds and sends a to b; only a relation, no operations");
    }
    {
        auto ego = endomorphism_ego(ds3, bounds);
        ego.name = "endT-ds-3";
        add_ego(std::move(ego), Provenance::derived,
            "endomorphisms computed from the tables");
    }
    {
        auto ego = endomorphism_ego(cat.algebra("ds-3x2"), bounds);
        ego.name = "endT-ds-3x2";
        add_ego(std::move(ego), Provenance::derived,
            "endomorphisms computed from the tables");
    }

    // self-validation
    for (const auto & entry : cat.entries) {
        if (! entry.ego)
            continue;
        auto report = is_algebraic_over(*entry.ego);
        if (! report.algebraic) {
            std::string bad;
            for (const auto & item : report.items)
                if (! item.algebraic)
                    bad = item.name + " (violates " + item.violating_op + ")";
            throw SelfValidationFailed("catalog ego " + entry.id + " is not algebraic: " + bad);
        }
    }
    {
        // median equations: full symmetry, majority collapse, self-distribution
        const auto & m = *cat.algebra("median-2")->op_named("m");
        for (Elem x = 0; x < 2; ++x)
            for (Elem y = 0; y < 2; ++y)
                for (Elem z = 0; z < 2; ++z) {
                    Elem v = m.apply(std::array{x, y, z});
                    if (v != m.apply(std::array{y, x, z}) || v != m.apply(std::array{y, z, x}))
                        throw SelfValidationFailed("median table is not symmetric");
                    if (m.apply(std::array{x, x, y}) != x)
                        throw SelfValidationFailed("median table fails the majority equation");
                    for (Elem u = 0; u < 2; ++u)
                        for (Elem w = 0; w < 2; ++w)
                            if (m.apply(std::array{v, u, w}) !=
                                m.apply(std::array{x, m.apply(std::array{y, u, w}),
                                    m.apply(std::array{z, u, w})}))
                                throw SelfValidationFailed("median table fails self-distribution");
                }
    }
    {
        const auto & t = *cat.algebra("disc-4")->op_named("t");
        for (Elem x = 0; x < 4; ++x)
            for (Elem y = 0; y < 4; ++y)
                for (Elem z = 0; z < 4; ++z) {
                    Elem v = t.apply(std::array{x, y, z});
                    if (x == y && v != z)
                        throw SelfValidationFailed("discriminator fails t(x,x,z) = z");
                    if (x != y && v != x)
                        throw SelfValidationFailed("discriminator fails t(x,y,z) = x");
                }
    }
    return cat;
}

namespace {

    ClaimResult duality_claim(const Catalog & cat, const SizeBounds & bounds,
        const std::string & id, const std::string & algebra, const std::string & ego,
        DualityKind expected)
    {
        auto v = check_duality_on(*cat.algebra(algebra), *cat.ego(ego), bounds);
        std::ostringstream detail;
        detail << to_string(v.kind) << " (" << v.evaluation_count << " evaluations, "
               << v.morphism_count << " morphisms)";
        return {id, v.kind == expected, detail.str()};
    }

    ClaimResult fullness_sweep_claim(const Catalog & cat, const SizeBounds & bounds,
        const std::string & id, const std::string & ego_id, int power)
    {
        auto ego = cat.ego(ego_id);
        auto subs = enumerate_substructures(*ego, power, 1 << 20, bounds);
        for (const auto & x : subs.structures) {
            auto v = check_fullness_on(x, bounds);
            if (! v.iso()) {
                std::ostringstream detail;
                detail << "substructure of size " << x.size() << " gives " << to_string(v.kind);
                return {id, false, detail.str()};
            }
        }
        std::ostringstream detail;
        detail << subs.structures.size() << " closed substructures, all full";
        return {id, true, detail.str()};
    }

    ClaimResult injectivity_claim(const Catalog & cat, const SizeBounds & bounds,
        const std::string & id, const std::string & ego_id, int power_bound,
        std::size_t size_bound, bool expect_witness)
    {
        auto ego = cat.ego(ego_id);
        auto w = search_injectivity_failure(*ego, power_bound, size_bound, bounds);
        std::ostringstream detail;
        if (w) {
            bool ok = verify_injectivity_witness(*ego, *w, bounds);
            detail << "witness |Y|=" << w->ambient.size() << " |X|=" << w->sub.size()
                   << " at power " << w->exponent << (ok ? ", re-verified" : ", BROKEN");
            return {id, expect_witness && ok, detail.str()};
        }
        detail << "no counterexample within bounds (" << power_bound << ", " << size_bound << ")";
        return {id, ! expect_witness, detail.str()};
    }

}

std::vector<Claim> claim_manifest()
{
    std::vector<Claim> claims;
    auto add = [&](std::string id, std::string desc,
                   std::function<ClaimResult(const Catalog &, const SizeBounds &)> run) {
        claims.push_back({std::move(id), std::move(desc), std::move(run)});
    };

    for (const char * alg : {"bdl-2", "bdl-3", "bdl-4", "bdl-2x2", "bdl-3x2", "bdl-2x2x2"}) {
        std::string a = alg;
        add("duality/threeT/" + a, "threeT yields a duality on " + a,
            [a](const Catalog & c, const SizeBounds & b) {
                return duality_claim(c, b, "duality/threeT/" + a, a, "threeT", DualityKind::iso);
            });
    }
    add("duality/threeT-sigma/bdl-3", "the sigma enrichment still dualises the chain",
        [](const Catalog & c, const SizeBounds & b) {
            return duality_claim(c, b, "duality/threeT-sigma/bdl-3", "bdl-3", "threeT-sigma",
                DualityKind::iso);
        });
    add("duality/threeT-h/bdl-3", "the h enrichment still dualises the chain",
        [](const Catalog & c, const SizeBounds & b) {
            return duality_claim(c, b, "duality/threeT-h/bdl-3", "bdl-3", "threeT-h",
                DualityKind::iso);
        });
    add("duality/twoT-priestley/lattice-2", "Priestley structure dualises the two-chain",
        [](const Catalog & c, const SizeBounds & b) {
            return duality_claim(c, b, "duality/twoT-priestley/lattice-2", "lattice-2",
                "twoT-priestley", DualityKind::iso);
        });
    add("duality/twoT-priestley/lattice-3", "Priestley structure dualises the three-chain",
        [](const Catalog & c, const SizeBounds & b) {
            return duality_claim(c, b, "duality/twoT-priestley/lattice-3", "lattice-3",
                "twoT-priestley", DualityKind::iso);
        });
    add("duality/twoT-order/bdl-2", "the order alone dualises the bounded two-chain",
        [](const Catalog & c, const SizeBounds & b) {
            return duality_claim(c, b, "duality/twoT-order/bdl-2", "bdl-2", "twoT-order",
                DualityKind::iso);
        });
    add("duality/twoT-order/bdl-2x2", "the order alone dualises the bounded square",
        [](const Catalog & c, const SizeBounds & b) {
            return duality_claim(c, b, "duality/twoT-order/bdl-2x2", "bdl-2x2", "twoT-order",
                DualityKind::iso);
        });
    add("duality/stoneT-3/stone-3", "the Stone structure dualises its algebra",
        [](const Catalog & c, const SizeBounds & b) {
            return duality_claim(c, b, "duality/stoneT-3/stone-3", "stone-3", "stoneT-3",
                DualityKind::iso);
        });
    add("duality/medianT-2/median-2", "the median structure dualises its algebra",
        [](const Catalog & c, const SizeBounds & b) {
            return duality_claim(c, b, "duality/medianT-2/median-2", "median-2", "medianT-2",
                DualityKind::iso);
        });
    for (int m = 2; m <= 6; ++m) {
        std::string id = "duality/zT-" + std::to_string(m);
        std::string g = "group-z" + std::to_string(m);
        std::string e = "zT-" + std::to_string(m);
        add(id, "the group structure dualises the cyclic group",
            [id, g, e](const Catalog & c, const SizeBounds & b) {
                return duality_claim(c, b, id, g, e, DualityKind::iso);
            });
    }
    add("duality/zT-4/group-z2", "the four-element group structure dualises its subgroup",
        [](const Catalog & c, const SizeBounds & b) {
            return duality_claim(c, b, "duality/zT-4/group-z2", "group-z2", "zT-4",
                DualityKind::iso);
        });

    add("endo-duality/ds-3/ds-2", "endomorphisms of the regular chain fail on the Boolean algebra",
        [](const Catalog & c, const SizeBounds & b) {
            return duality_claim(c, b, "endo-duality/ds-3/ds-2", "ds-2", "endT-ds-3",
                DualityKind::not_surjective);
        });
    add("endo-duality/ds-3x2/ds-2x2", "endomorphisms of the one-Boolean-factor algebra fail on the square",
        [](const Catalog & c, const SizeBounds & b) {
            return duality_claim(c, b, "endo-duality/ds-3x2/ds-2x2", "ds-2x2", "endT-ds-3x2",
                DualityKind::not_surjective);
        });

    for (const char * e : {"threeT-sigma", "threeT-h", "zT-2", "zT-3", "semilatT-2",
             "semilatT-2-zero", "semilatT-2-one", "semilatT-2-bounded"}) {
        std::string ego = e;
        add("fullness/" + ego + "/sq", "fullness on every closed substructure of the square",
            [ego](const Catalog & c, const SizeBounds & b) {
                return fullness_sweep_claim(c, b, "fullness/" + ego + "/sq", ego, 2);
            });
    }

    add("injectivity/threeT", "the plain chain structure is not injective",
        [](const Catalog & c, const SizeBounds & b) {
            return injectivity_claim(c, b, "injectivity/threeT", "threeT", 1, 3, true);
        });
    add("injectivity/threeT-h", "the h enrichment is not injective",
        [](const Catalog & c, const SizeBounds & b) {
            return injectivity_claim(c, b, "injectivity/threeT-h", "threeT-h", 1, 3, true);
        });
    add("injectivity/threeT-sigma", "no injectivity failure for sigma within (2, 9)",
        [](const Catalog & c, const SizeBounds & b) {
            return injectivity_claim(c, b, "injectivity/threeT-sigma", "threeT-sigma", 2, 9, false);
        });

    add("core/ds-2", "Boolean double Stone algebra has empty core",
        [](const Catalog & c, const SizeBounds &) {
            auto core = double_stone_core(*c.algebra("ds-2"));
            return ClaimResult{"core/ds-2", core.empty(), "core size " +
                std::to_string(core.size())};
        });
    add("core/ds-3", "three-chain core is the middle element",
        [](const Catalog & c, const SizeBounds &) {
            auto core = double_stone_core(*c.algebra("ds-3"));
            return ClaimResult{"core/ds-3", core == std::vector<Elem>{1}, "core size " +
                std::to_string(core.size())};
        });
    add("core/ds-4", "four-chain core is the two middle elements",
        [](const Catalog & c, const SizeBounds &) {
            auto core = double_stone_core(*c.algebra("ds-4"));
            return ClaimResult{"core/ds-4", core == std::vector<Elem>{1, 2}, "core size " +
                std::to_string(core.size())};
        });
    add("core/ds-5", "five-chain core is the three middle elements",
        [](const Catalog & c, const SizeBounds &) {
            auto core = double_stone_core(*c.algebra("ds-5"));
            return ClaimResult{"core/ds-5", core == std::vector<Elem>{1, 2, 3}, "core size " +
                std::to_string(core.size())};
        });

    add("endoprimal/bdl-3/k1", "the bounded three-chain is 1-endoprimal",
        [](const Catalog & c, const SizeBounds & b) {
            auto v = is_k_endoprimal(*c.algebra("bdl-3"), 1, b);
            return ClaimResult{"endoprimal/bdl-3/k1", v.holds, v.holds ? "holds" : "fails"};
        });
    add("endoprimal/bdl-2/k1", "the Boolean bounded chain is not 1-endoprimal",
        [](const Catalog & c, const SizeBounds & b) {
            auto v = is_k_endoprimal(*c.algebra("bdl-2"), 1, b);
            return ClaimResult{"endoprimal/bdl-2/k1", ! v.holds, ! v.holds ? "fails as expected"
                : "unexpectedly holds"};
        });
    add("endoprimal/lattice-2/k3", "the Boolean lattice is not 3-endoprimal",
        [](const Catalog & c, const SizeBounds & b) {
            auto v = is_k_endoprimal(*c.algebra("lattice-2"), 3, b);
            return ClaimResult{"endoprimal/lattice-2/k3", ! v.holds, ! v.holds ? "fails as expected"
                : "unexpectedly holds"};
        });
    add("endoprimal/lattice-3/k3", "the non-Boolean chain lattice is 3-endoprimal",
        [](const Catalog & c, const SizeBounds & b) {
            SizeBounds wide = b;
            wide.max_search_nodes = std::max(wide.max_search_nodes, 2000000LL);
            auto v = is_k_endoprimal(*c.algebra("lattice-3"), 3, wide);
            return ClaimResult{"endoprimal/lattice-3/k3", v.holds, v.holds ? "holds" : "fails"};
        });

    add("free/lattice-2/2", "rank-two free distributive lattice is the four-element square",
        [](const Catalog & c, const SizeBounds & b) {
            auto f = free_algebra(*c.algebra("lattice-2"), 2, b);
            bool iso = false;
            if (f.algebra.size() == 4) {
                auto square = power(*c.algebra("lattice-2"), 2, b);
                for (const auto & h : hom_enumerate(f.algebra, square, {}, b)) {
                    std::vector<char> hit(4, 0);
                    for (Elem e : h)
                        hit[e] = 1;
                    if (std::all_of(hit.begin(), hit.end(), [](char x) { return x; }))
                        iso = true;
                }
            }
            return ClaimResult{"free/lattice-2/2", iso,
                "size " + std::to_string(f.algebra.size())};
        });
    add("free/lattice-2/3", "rank-three free distributive lattice has eighteen elements",
        [](const Catalog & c, const SizeBounds & b) {
            auto f = free_algebra(*c.algebra("lattice-2"), 3, b);
            return ClaimResult{"free/lattice-2/3", f.algebra.size() == 18,
                "size " + std::to_string(f.algebra.size())};
        });
    for (int m = 2; m <= 6; ++m) {
        std::string id = "free/group-z" + std::to_string(m) + "/2";
        add(id, "rank-two free abelian group in the quasivariety has m^2 elements",
            [id, m](const Catalog & c, const SizeBounds & b) {
                auto f = free_algebra(*c.algebra("group-z" + std::to_string(m)), 2, b);
                return ClaimResult{id, f.algebra.size() == m * m,
                    "size " + std::to_string(f.algebra.size())};
            });
    }
    add("retract/lattice-3/free-3", "the three-chain is a retract of the rank-three free lattice",
        [](const Catalog & c, const SizeBounds & b) {
            auto f = free_algebra(*c.algebra("lattice-2"), 3, b);
            auto r = is_retract_of(*c.algebra("lattice-3"), f.algebra, b);
            return ClaimResult{"retract/lattice-3/free-3", r.has_value(),
                r ? "retract found" : "no retract"};
        });
    add("retract/lattice-3/free-2", "the three-chain is not a retract of the rank-two free lattice",
        [](const Catalog & c, const SizeBounds & b) {
            auto f = free_algebra(*c.algebra("lattice-2"), 2, b);
            auto r = is_retract_of(*c.algebra("lattice-3"), f.algebra, b);
            return ClaimResult{"retract/lattice-3/free-2", ! r.has_value(),
                r ? "unexpected retract" : "no retract, as expected"};
        });

    add("entail/twoT-priestley/dense-2", "the Priestley structure entails everything binary",
        [](const Catalog & c, const SizeBounds & b) {
            auto report = entailment_dense_upto(*c.ego("twoT-priestley"), 2, b);
            return ClaimResult{"entail/twoT-priestley/dense-2", report.all_hold(),
                std::to_string(report.checked) + " relations checked, " +
                    std::to_string(report.failures.size()) + " failures"};
        });
    add("entail/twoT-order/dense-2", "the bounded order structure entails everything binary",
        [](const Catalog & c, const SizeBounds & b) {
            auto report = entailment_dense_upto(*c.ego("twoT-order"), 2, b);
            return ClaimResult{"entail/twoT-order/dense-2", report.all_hold(),
                std::to_string(report.checked) + " relations checked, " +
                    std::to_string(report.failures.size()) + " failures"};
        });
    add("entail/threeT/dense-2", "the chain structure entails everything binary",
        [](const Catalog & c, const SizeBounds & b) {
            auto report = entailment_dense_upto(*c.ego("threeT"), 2, b);
            return ClaimResult{"entail/threeT/dense-2", report.all_hold(),
                std::to_string(report.checked) + " relations checked, " +
                    std::to_string(report.failures.size()) + " failures"};
        });
    add("entail/empty/leq-fails", "the bare carrier does not entail the order",
        [](const Catalog & c, const SizeBounds & b) {
            AlterEgo empty;
            empty.name = "empty";
            empty.over = c.algebra("bdl-2");
            auto leq = Relation::from_tuples(2, {{0, 0}, {0, 1}, {1, 1}});
            auto v = entails(empty, leq, b);
            return ClaimResult{"entail/empty/leq-fails", ! v.holds,
                ! v.holds ? "fails with witness" : "unexpectedly holds"};
        });
    add("clone/leq/neq-fails", "the order does not clone-entail inequality",
        [](const Catalog &, const SizeBounds & b) {
            auto leq = Relation::from_tuples(2, {{0, 0}, {0, 1}, {1, 1}});
            auto neq = Relation::from_tuples(2, {{0, 1}, {1, 0}});
            auto v = clone_entails(2, {leq}, neq, b);
            return ClaimResult{"clone/leq/neq-fails", ! v.holds,
                ! v.holds ? "violating polymorphism found" : "unexpectedly holds"};
        });
    add("equalizer/z2/diagonal", "the diagonal over the two-element group is equalizer-closed",
        [](const Catalog & c, const SizeBounds & b) {
            auto diag = Relation::from_tuples(2, {{0, 0}, {1, 1}});
            auto closure = equalizer_closure(*c.algebra("group-z2"), diag, b);
            return ClaimResult{"equalizer/z2/diagonal", closure == diag,
                std::to_string(closure.tuples.size()) + " tuples"};
        });

    return claims;
}

ManifestReport run_manifest(const Catalog & catalog, const std::string & filter,
    const SizeBounds & bounds, int jobs)
{
    auto claims = claim_manifest();
    std::vector<const Claim *> selected;
    for (const auto & c : claims)
        if (filter.empty() || c.id.find(filter) != std::string::npos)
            selected.push_back(&c);
    auto results = parallel_map<ClaimResult>(jobs, selected.size(), [&](std::size_t i) {
        try {
            return selected[i]->run(catalog, bounds);
        }
        catch (const std::exception & e) {
            return ClaimResult{selected[i]->id, false, std::string("error: ") + e.what()};
        }
    });
    ManifestReport report;
    report.results = std::move(results);
    for (const auto & r : report.results)
        if (r.pass)
            ++report.passed;
    return report;
}

}
