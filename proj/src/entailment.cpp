#include <dwb/entailment.hpp>

#include <algorithm>
#include <functional>

namespace dwb {

LabelledDual dual_of_relation(const AlterEgo & ego, const Relation & s,
    const SizeBounds & bounds)
{
    const auto & m = ego.algebra();
    auto ts = TupleSet::of(s.arity, s.tuples);
    auto check = check_subuniverse(m, ts);
    if (! check.closed)
        throw NotAlgebraic("relation is not algebraic over " + m.name());
    auto s_alg = algebra_on_tuples(m, ts, "s", bounds);
    auto homs = hom_enumerate(s_alg, m, {}, bounds);
    FiniteStructure dual{&ego, static_cast<int>(ts.size()),
        TupleSet::of(static_cast<int>(ts.size()), std::move(homs))};
    check_structure_closed(dual);

    LabelledDual out{std::move(dual), {}, {}};
    for (int coord = 0; coord < s.arity; ++coord) {
        Tuple proj(ts.size());
        for (std::size_t t = 0; t < ts.size(); ++t)
            proj[t] = ts.elems[t][coord];
        int where = out.dual.universe.find(proj);
        invariant(where >= 0, "coordinate projection is not a homomorphism of s");
        out.rho.push_back(where);
    }
    for (std::size_t p = 0; p < out.dual.size(); ++p)
        if (std::find(out.rho.begin(), out.rho.end(), static_cast<int>(p)) == out.rho.end())
            out.tau.push_back(static_cast<int>(p));
    return out;
}

EntailmentVerdict entails(const AlterEgo & ego, const Relation & s, const SizeBounds & bounds)
{
    auto labelled = dual_of_relation(ego, s, bounds);
    auto target = ego_power(ego, 1, bounds);
    auto maps = struct_morphisms(labelled.dual, target, bounds);

    EntailmentVerdict v;
    v.map_count = maps.size();
    for (const auto & u : maps) {
        Tuple value(s.arity);
        for (int i = 0; i < s.arity; ++i)
            value[i] = u[labelled.rho[i]];
        if (! s.contains(value)) {
            v.holds = false;
            v.witness = u;
            v.escaped = value;
            return v;
        }
    }

    // duality on s: evaluations exhaust the maps and separate the tuples
    std::vector<HomMap> evaluations;
    const auto sts = TupleSet::of(s.arity, s.tuples);
    for (std::size_t t = 0; t < sts.size(); ++t) {
        HomMap ev(labelled.dual.size());
        for (std::size_t h = 0; h < labelled.dual.size(); ++h)
            ev[h] = labelled.dual.universe.elems[h][t];
        evaluations.push_back(std::move(ev));
    }
    bool injective = true;
    for (std::size_t i = 0; i < evaluations.size() && injective; ++i)
        for (std::size_t j = i + 1; j < evaluations.size(); ++j)
            if (evaluations[i] == evaluations[j]) {
                injective = false;
                break;
            }
    std::sort(evaluations.begin(), evaluations.end());
    evaluations.erase(std::unique(evaluations.begin(), evaluations.end()), evaluations.end());
    v.on_duality = injective && evaluations.size() == maps.size();
    return v;
}

Relation pp_evaluate(const PPFormula & f, const AlterEgo & ego, const SizeBounds & bounds)
{
    const auto & m = ego.algebra();
    MapSearchProblem p;
    p.num_vars = f.num_vars;
    p.domain = m.size();

    std::vector<std::unique_ptr<std::vector<Elem>>> tables;
    std::vector<std::unique_ptr<std::unordered_set<Tuple, TupleHash>>> sets;
    std::vector<Elem> identity(m.size());
    for (Elem e = 0; e < m.size(); ++e)
        identity[e] = e;

    for (const auto & atom : f.atoms) {
        switch (atom.kind) {
        case PPAtom::Kind::equal: {
            FunctionalInstance inst;
            inst.args = {atom.vars[0]};
            inst.out = atom.vars[1];
            tables.push_back(std::make_unique<std::vector<Elem>>(identity));
            inst.fn = tables.back().get();
            inst.fn_domain = m.size();
            p.functional.push_back(std::move(inst));
            break;
        }
        case PPAtom::Kind::operation: {
            const OperationTable * op = nullptr;
            for (const auto & [name, o] : ego.total_ops)
                if (name == atom.symbol)
                    op = &o;
            if (! op)
                throw std::invalid_argument("formula names unknown operation " + atom.symbol);
            FunctionalInstance inst;
            inst.args.assign(atom.vars.begin(), atom.vars.end() - 1);
            inst.out = atom.vars.back();
            inst.fn = &op->table();
            inst.fn_domain = m.size();
            p.functional.push_back(std::move(inst));
            break;
        }
        case PPAtom::Kind::partial: {
            const PartialOperationTable * op = nullptr;
            for (const auto & [name, o] : ego.partial_ops)
                if (name == atom.symbol)
                    op = &o;
            if (! op)
                throw std::invalid_argument("formula names unknown partial operation " + atom.symbol);
            FunctionalInstance inst;
            inst.args.assign(atom.vars.begin(), atom.vars.end() - 1);
            inst.out = atom.vars.back();
            tables.push_back(std::make_unique<std::vector<Elem>>(op->flat()));
            inst.fn = tables.back().get();
            inst.fn_domain = m.size();
            p.functional.push_back(std::move(inst));
            break;
        }
        case PPAtom::Kind::relation: {
            const Relation * rel = nullptr;
            for (const auto & [name, r] : ego.relations)
                if (name == atom.symbol)
                    rel = &r;
            if (! rel)
                throw std::invalid_argument("formula names unknown relation " + atom.symbol);
            auto allowed = std::make_unique<std::unordered_set<Tuple, TupleHash>>();
            for (const auto & t : rel->tuples)
                allowed->insert(t);
            RelationalInstance inst;
            inst.vars = atom.vars;
            inst.allowed = allowed.get();
            sets.push_back(std::move(allowed));
            p.relational.push_back(std::move(inst));
            break;
        }
        }
    }

    auto solutions = solve_all(p, bounds);
    std::vector<Tuple> projected;
    for (const auto & sol : solutions) {
        Tuple t(f.free_vars.size());
        for (std::size_t i = 0; i < f.free_vars.size(); ++i)
            t[i] = sol[f.free_vars[i]];
        projected.push_back(std::move(t));
    }
    return Relation::from_tuples(static_cast<int>(f.free_vars.size()), std::move(projected));
}

PPFormula pp_certificate(const AlterEgo & ego, const Relation & s, const SizeBounds & bounds)
{
    auto verdict = entails(ego, s, bounds);
    if (! verdict.holds)
        throw std::invalid_argument("no certificate: the structure does not entail the relation");

    auto labelled = dual_of_relation(ego, s, bounds);
    const auto & dual = labelled.dual;

    PPFormula f;
    f.num_vars = static_cast<int>(dual.size());
    f.free_vars = labelled.rho;
    for (std::size_t h = 0; h < dual.size(); ++h)
        f.var_names.push_back("h" + std::to_string(h));
    for (int i = 0; i < s.arity; ++i)
        f.var_names[labelled.rho[i]] = "x" + std::to_string(i + 1);

    auto add_atoms_for = [&](PPAtom::Kind kind, const std::string & name, const Relation & rel) {
        // every tuple of the induced interpretation on D(s) becomes an atom
        int k = rel.arity;
        std::size_t n = dual.size();
        std::vector<std::size_t> pick(k, 0);
        if (n == 0)
            return;
        while (true) {
            bool in = true;
            for (int coord = 0; coord < dual.exponent && in; ++coord) {
                Tuple col(k);
                for (int i = 0; i < k; ++i)
                    col[i] = dual.universe.elems[pick[i]][coord];
                in = rel.contains(col);
            }
            if (in) {
                PPAtom atom;
                atom.kind = kind;
                atom.symbol = name;
                atom.vars.assign(pick.begin(), pick.end());
                f.atoms.push_back(std::move(atom));
            }
            int pos = k - 1;
            while (pos >= 0 && ++pick[pos] == n) {
                pick[pos] = 0;
                --pos;
            }
            if (pos < 0)
                break;
        }
    };

    for (const auto & [name, op] : ego.total_ops)
        add_atoms_for(PPAtom::Kind::operation, name, graph_of(op));
    for (const auto & [name, op] : ego.partial_ops)
        add_atoms_for(PPAtom::Kind::partial, name, graph_of(op));
    for (const auto & [name, rel] : ego.relations)
        add_atoms_for(PPAtom::Kind::relation, name, rel);

    auto evaluated = pp_evaluate(f, ego, bounds);
    if (! (evaluated == s))
        throw CertificateMismatch("primitive positive certificate evaluates to the wrong relation");
    return f;
}

CloneEntailmentVerdict clone_entails(int carrier, const std::vector<Relation> & rels,
    const Relation & s, const SizeBounds & bounds)
{
    std::size_t k = s.tuples.size();
    std::size_t cells = 1;
    for (std::size_t i = 0; i < k; ++i) {
        cells *= static_cast<std::size_t>(carrier);
        if (cells > static_cast<std::size_t>(bounds.max_search_nodes))
            throw SizeBoundExceeded("clone entailment table too large");
    }

    MapSearchProblem p;
    p.num_vars = static_cast<int>(cells);
    p.domain = carrier;

    std::vector<std::unique_ptr<std::unordered_set<Tuple, TupleHash>>> sets;

    // cell index of a column vector over the tuples of s
    auto cell_of = [&](const std::vector<Elem> & column) {
        std::size_t ix = 0;
        for (Elem e : column)
            ix = ix * carrier + static_cast<std::size_t>(e);
        return static_cast<int>(ix);
    };

    for (const auto & r : rels) {
        auto allowed = std::make_unique<std::unordered_set<Tuple, TupleHash>>();
        for (const auto & t : r.tuples)
            allowed->insert(t);
        const auto * aset = allowed.get();
        sets.push_back(std::move(allowed));

        // choose one r-tuple per argument slot; the rows give the cells
        std::size_t combos = 1;
        for (std::size_t i = 0; i < k; ++i) {
            combos *= r.tuples.size();
            if (combos > 1000000)
                throw SizeBoundExceeded("clone entailment constraint set too large");
        }
        if (k > 0 && r.tuples.empty())
            continue;  // vacuously preserved
        std::vector<std::size_t> pick(k, 0);
        while (true) {
            RelationalInstance inst;
            inst.vars.resize(r.arity);
            std::vector<Elem> column(k);
            for (int row = 0; row < r.arity; ++row) {
                for (std::size_t j = 0; j < k; ++j)
                    column[j] = r.tuples[pick[j]][row];
                inst.vars[row] = cell_of(column);
            }
            inst.allowed = aset;
            p.relational.push_back(std::move(inst));
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

    // the coordinate projections must escape s for a violation
    auto escape = std::make_unique<std::unordered_set<Tuple, TupleHash>>();
    for (const auto & t : s.tuples)
        escape->insert(t);
    RelationalInstance neg;
    neg.vars.resize(s.arity);
    for (int i = 0; i < s.arity; ++i) {
        std::vector<Elem> column(k);
        for (std::size_t t = 0; t < k; ++t)
            column[t] = s.tuples[t][i];
        neg.vars[i] = cell_of(column);
    }
    neg.allowed = escape.get();
    neg.negated = true;
    std::vector<int> rho_cells = neg.vars;
    sets.push_back(std::move(escape));
    p.relational.push_back(std::move(neg));

    CloneEntailmentVerdict v;
    if (auto violator = solve_first(p, bounds)) {
        v.holds = false;
        v.violator = *violator;
        v.escaped.resize(s.arity);
        for (int i = 0; i < s.arity; ++i)
            v.escaped[i] = (*violator)[rho_cells[i]];
    }
    return v;
}

Relation graph_of_dual(const FiniteStructure & z, const std::vector<int> & labels,
    const SizeBounds & bounds)
{
    // labels must cover z
    std::vector<char> covered(z.size(), 0);
    for (int l : labels) {
        if (l < 0 || l >= static_cast<int>(z.size()))
            throw std::invalid_argument("label outside the structure");
        covered[l] = 1;
    }
    for (char c : covered)
        if (! c)
            throw std::invalid_argument("labels must cover the structure");
    auto target = ego_power(*z.ego, 1, bounds);
    auto maps = struct_morphisms(z, target, bounds);
    std::vector<Tuple> tuples;
    for (const auto & u : maps) {
        Tuple t(labels.size());
        for (std::size_t i = 0; i < labels.size(); ++i)
            t[i] = u[labels[i]];
        tuples.push_back(std::move(t));
    }
    return Relation::from_tuples(static_cast<int>(labels.size()), std::move(tuples));
}

Relation project(const Relation & r, const ProjectionSpec & eta)
{
    std::vector<char> seen(r.arity, 0);
    for (int c : eta.coords) {
        if (c < 0 || c >= r.arity)
            throw std::invalid_argument("projection coordinate out of range");
        if (seen[c])
            throw std::invalid_argument("projection coordinates must be injective");
        seen[c] = 1;
    }
    std::vector<Tuple> tuples;
    for (const auto & t : r.tuples) {
        Tuple p(eta.coords.size());
        for (std::size_t i = 0; i < eta.coords.size(); ++i)
            p[i] = t[eta.coords[i]];
        tuples.push_back(std::move(p));
    }
    return Relation::from_tuples(static_cast<int>(eta.coords.size()), std::move(tuples));
}

std::string to_string(ProjectionClass c)
{
    switch (c) {
    case ProjectionClass::plain: return "plain";
    case ProjectionClass::retractive: return "retractive";
    case ProjectionClass::bijective: return "bijective";
    }
    return "?";
}

ProjectionClassification classify_projection(const FiniteAlgebra & m, const Relation & r,
    const ProjectionSpec & eta, const SizeBounds & bounds)
{
    auto rts = TupleSet::of(r.arity, r.tuples);
    auto r_alg = algebra_on_tuples(m, rts, "r", bounds);
    auto s = project(r, eta);
    auto sts = TupleSet::of(s.arity, s.tuples);
    auto s_alg = algebra_on_tuples(m, sts, "s", bounds);

    // natural projection p: r -> s by coordinate selection
    std::vector<Elem> p_map(rts.size());
    for (std::size_t i = 0; i < rts.size(); ++i) {
        Tuple proj(eta.coords.size());
        for (std::size_t c = 0; c < eta.coords.size(); ++c)
            proj[c] = rts.elems[i][eta.coords[c]];
        p_map[i] = sts.find(proj);
        invariant(p_map[i] >= 0, "projection image missing from the projected relation");
    }

    // section search restricted to the fibres of p
    std::vector<std::vector<Elem>> fibres(sts.size());
    for (std::size_t i = 0; i < rts.size(); ++i)
        fibres[p_map[i]].push_back(static_cast<Elem>(i));

    ProjectionClassification out;
    auto q = hom_first_restricted(s_alg, r_alg, fibres, bounds);
    if (! q)
        return out;
    for (std::size_t x = 0; x < sts.size(); ++x)
        invariant(p_map[(*q)[x]] == static_cast<Elem>(x), "section does not split the projection");
    out.section = *q;
    if (rts.size() == sts.size()) {
        for (std::size_t i = 0; i < rts.size(); ++i)
            invariant((*q)[p_map[i]] == static_cast<Elem>(i),
                "bijective projection must have a two-sided section");
        out.kind = ProjectionClass::bijective;
    }
    else
        out.kind = ProjectionClass::retractive;
    return out;
}

RetractionCertificate retraction_decomposition(const AlterEgo & ego, const Relation & s,
    const SizeBounds & bounds)
{
    auto verdict = entails(ego, s, bounds);
    if (! verdict.holds)
        throw std::invalid_argument("retraction decomposition needs a positive entailment");

    auto labelled = dual_of_relation(ego, s, bounds);
    std::vector<int> labels = labelled.rho;
    labels.insert(labels.end(), labelled.tau.begin(), labelled.tau.end());

    RetractionCertificate cert;
    cert.graph = graph_of_dual(labelled.dual, labels, bounds);
    cert.rho_positions = labelled.rho;
    cert.tau_positions = labelled.tau;
    for (int i = 0; i < s.arity; ++i)
        cert.eta.coords.push_back(i);

    if (! (project(cert.graph, cert.eta) == s))
        throw CertificateMismatch("graph of the double dual does not project onto the relation");
    cert.classification = classify_projection(ego.algebra(), cert.graph, cert.eta, bounds);
    if (cert.classification.kind == ProjectionClass::plain)
        throw CertificateMismatch("entailed relation is not a retractive projection of its double dual");
    return cert;
}

Relation product_rel(const Relation & r, const Relation & s)
{
    std::vector<Tuple> tuples;
    for (const auto & a : r.tuples)
        for (const auto & b : s.tuples) {
            Tuple t = a;
            t.insert(t.end(), b.begin(), b.end());
            tuples.push_back(std::move(t));
        }
    return Relation::from_tuples(r.arity + s.arity, std::move(tuples));
}

Relation intersect_rel(const Relation & r, const Relation & s)
{
    if (r.arity != s.arity)
        throw std::invalid_argument("intersection needs matching arities");
    std::vector<Tuple> tuples;
    for (const auto & t : r.tuples)
        if (s.contains(t))
            tuples.push_back(t);
    return Relation::from_tuples(r.arity, std::move(tuples));
}

std::vector<Relation> trivial_rels(int arity, int carrier)
{
    // one diagonal relation per partition of the coordinate set
    std::vector<Relation> out;
    std::vector<int> block(arity, 0);
    std::function<void(int, int)> rec = [&](int pos, int blocks) {
        if (pos == arity) {
            std::vector<Tuple> tuples;
            std::size_t total = 1;
            for (int b = 0; b < blocks; ++b)
                total *= static_cast<std::size_t>(carrier);
            for (std::size_t ix = 0; ix < total; ++ix) {
                std::vector<Elem> value(blocks);
                std::size_t rest = ix;
                for (int b = blocks - 1; b >= 0; --b) {
                    value[b] = static_cast<Elem>(rest % carrier);
                    rest /= carrier;
                }
                Tuple t(arity);
                for (int i = 0; i < arity; ++i)
                    t[i] = value[block[i]];
                tuples.push_back(std::move(t));
            }
            out.push_back(Relation::from_tuples(arity, std::move(tuples)));
            return;
        }
        for (int b = 0; b <= blocks; ++b) {
            block[pos] = b;
            rec(pos + 1, std::max(blocks, b + 1));
        }
    };
    rec(0, 0);
    return out;
}

Relation remove_repetitions(const Relation & r)
{
    // drop coordinates that repeat an earlier coordinate on every tuple
    std::vector<int> keep;
    for (int c = 0; c < r.arity; ++c) {
        bool duplicate = false;
        for (int earlier : keep) {
            bool same = true;
            for (const auto & t : r.tuples)
                if (t[c] != t[earlier]) {
                    same = false;
                    break;
                }
            if (same) {
                duplicate = true;
                break;
            }
        }
        if (! duplicate)
            keep.push_back(c);
    }
    return project(r, ProjectionSpec{keep});
}

std::vector<Relation> algebraic_relations(const FiniteAlgebra & m, int arity,
    const SizeBounds & bounds)
{
    // subuniverse enumeration over M^arity through the ego machinery with an
    // ego consisting of M's own operations
    AlterEgo self;
    self.name = "self";
    self.over = std::make_shared<FiniteAlgebra>(m);
    for (std::size_t i = 0; i < m.ops().size(); ++i)
        self.total_ops.emplace_back(m.signature().ops[i].name, m.op(static_cast<int>(i)));
    PowerContext ctx(self, arity, bounds);
    std::vector<Relation> out;
    for (auto mask : ctx.all_closed()) {
        auto st = ctx.structure(mask);
        out.push_back(Relation::from_tuples(arity, st.universe.elems));
    }
    return out;
}

DensityReport entailment_dense_upto(const AlterEgo & ego, int arity_bound,
    const SizeBounds & bounds)
{
    DensityReport report;
    report.arity_bound = arity_bound;
    for (int arity = 1; arity <= arity_bound; ++arity)
        for (const auto & s : algebraic_relations(ego.algebra(), arity, bounds)) {
            ++report.checked;
            if (! entails(ego, s, bounds).holds)
                report.failures.push_back(s);
        }
    return report;
}

Relation equalizer_closure(const FiniteAlgebra & m, const Relation & r,
    const SizeBounds & bounds)
{
    int n = r.arity;
    auto pw = power(m, n, bounds);
    auto homs = hom_enumerate(pw, m, {}, bounds);

    std::vector<char> in(static_cast<std::size_t>(pw.size()), 1);
    auto index_of = [&](const Tuple & t) { return power_index(m, t); };

    for (std::size_t i = 0; i < homs.size(); ++i)
        for (std::size_t j = 0; j < homs.size(); ++j) {
            if (i == j)
                continue;
            bool contains_r = true;
            for (const auto & t : r.tuples)
                if (homs[i][index_of(t)] != homs[j][index_of(t)]) {
                    contains_r = false;
                    break;
                }
            if (! contains_r)
                continue;
            for (int x = 0; x < pw.size(); ++x)
                if (homs[i][x] != homs[j][x])
                    in[x] = 0;
        }

    std::vector<Tuple> tuples;
    for (int x = 0; x < pw.size(); ++x)
        if (in[x])
            tuples.push_back(power_element(m, n, static_cast<std::size_t>(x)));
    return Relation::from_tuples(n, std::move(tuples));
}

}
