#include <dwb/homsearch.hpp>

#include <algorithm>
#include <array>
#include <numeric>

namespace dwb {

namespace {

    struct Searcher {
        const MapSearchProblem & p;
        const SizeBounds & bounds;
        bool lex_order;  // variable order by index (gives lex-first enumeration)

        std::vector<Elem> assignment;
        std::vector<int> trail;
        std::vector<std::vector<int>> fwatch, rwatch;
        std::vector<int> var_order;
        long long budget = 0;

        Searcher(const MapSearchProblem & p_, const SizeBounds & b, bool lex) :
            p(p_),
            bounds(b),
            lex_order(lex),
            assignment(p_.num_vars, -1)
        {
            fwatch.resize(p.num_vars);
            rwatch.resize(p.num_vars);
            for (std::size_t i = 0; i < p.functional.size(); ++i) {
                for (int v : p.functional[i].args)
                    fwatch[v].push_back(static_cast<int>(i));
                fwatch[p.functional[i].out].push_back(static_cast<int>(i));
            }
            for (std::size_t i = 0; i < p.relational.size(); ++i)
                for (int v : p.relational[i].vars)
                    rwatch[v].push_back(static_cast<int>(i));
            for (auto & w : fwatch) {
                std::sort(w.begin(), w.end());
                w.erase(std::unique(w.begin(), w.end()), w.end());
            }
            for (auto & w : rwatch) {
                std::sort(w.begin(), w.end());
                w.erase(std::unique(w.begin(), w.end()), w.end());
            }
            var_order.resize(p.num_vars);
            std::iota(var_order.begin(), var_order.end(), 0);
            if (! lex_order) {
                std::vector<int> degree(p.num_vars, 0);
                for (int v = 0; v < p.num_vars; ++v)
                    degree[v] = static_cast<int>(fwatch[v].size() + rwatch[v].size());
                std::stable_sort(var_order.begin(), var_order.end(),
                    [&](int a, int b) { return degree[a] > degree[b]; });
            }
        }

        bool functional_ok(const FunctionalInstance & fi)
        {
            std::size_t ix = 0;
            for (int v : fi.args) {
                if (assignment[v] < 0)
                    return true;  // not yet determined
                ix = ix * fi.fn_domain + static_cast<std::size_t>(assignment[v]);
            }
            Elem val = (*fi.fn)[ix];
            if (val < 0)
                return false;  // args landed outside a partial operation's domain
            if (assignment[fi.out] < 0)
                return assign(fi.out, val);
            return assignment[fi.out] == val;
        }

        bool relational_ok(const RelationalInstance & ri)
        {
            Tuple vals(ri.vars.size());
            int open = -1;
            for (std::size_t i = 0; i < ri.vars.size(); ++i) {
                if (assignment[ri.vars[i]] < 0) {
                    if (open >= 0)
                        return true;  // two or more free variables, nothing to do yet
                    open = static_cast<int>(i);
                }
                else
                    vals[i] = assignment[ri.vars[i]];
            }
            if (open < 0) {
                bool in = ri.allowed->contains(vals);
                return ri.negated ? ! in : in;
            }
            if (ri.negated)
                return true;  // escapes cannot be propagated early
            // forward check the single open variable; force it when unique
            int candidates = 0;
            Elem only = -1;
            for (Elem val = 0; val < p.domain; ++val) {
                vals[open] = val;
                if (ri.allowed->contains(vals)) {
                    ++candidates;
                    only = val;
                    if (candidates > 1)
                        break;
                }
            }
            if (candidates == 0)
                return false;
            if (candidates == 1)
                return assign(ri.vars[open], only);
            return true;
        }

        bool assign(int v, Elem val)
        {
            if (assignment[v] >= 0)
                return assignment[v] == val;
            if (! p.restricted.empty() && ! p.restricted[v].empty() &&
                ! std::binary_search(p.restricted[v].begin(), p.restricted[v].end(), val))
                return false;
            assignment[v] = val;
            trail.push_back(v);
            for (int i : fwatch[v])
                if (! functional_ok(p.functional[i]))
                    return false;
            for (int i : rwatch[v])
                if (! relational_ok(p.relational[i]))
                    return false;
            return true;
        }

        void rollback(std::size_t mark)
        {
            while (trail.size() > mark) {
                assignment[trail.back()] = -1;
                trail.pop_back();
            }
        }

        template <typename Emit>
        bool search(std::size_t next, Emit && emit)
        {
            int var = -1;
            for (std::size_t i = next; i < var_order.size(); ++i)
                if (assignment[var_order[i]] < 0) {
                    var = var_order[i];
                    next = i;
                    break;
                }
            if (var < 0)
                return emit(assignment);
            const std::vector<Elem> * dom = nullptr;
            if (! p.restricted.empty() && ! p.restricted[var].empty())
                dom = &p.restricted[var];
            int count = dom ? static_cast<int>(dom->size()) : p.domain;
            for (int vi = 0; vi < count; ++vi) {
                Elem val = dom ? (*dom)[vi] : vi;
                if (++budget > bounds.max_search_nodes)
                    throw SizeBoundExceeded("search node budget exhausted (" +
                        std::to_string(bounds.max_search_nodes) + ")");
                std::size_t mark = trail.size();
                if (assign(var, val)) {
                    if (! search(next + 1, emit))
                        return false;
                }
                rollback(mark);
            }
            return true;
        }

        bool seed_ok()
        {
            if (p.seed.empty())
                return true;
            for (int v = 0; v < p.num_vars; ++v)
                if (p.seed[v] >= 0 && ! assign(v, p.seed[v]))
                    return false;
            return true;
        }
    };

}

std::vector<HomMap> solve_all(const MapSearchProblem & p, const SizeBounds & bounds)
{
    Searcher s(p, bounds, false);
    std::vector<HomMap> out;
    if (s.seed_ok())
        s.search(0, [&](const std::vector<Elem> & a) {
            out.push_back(a);
            return true;
        });
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<HomMap> solve_first(const MapSearchProblem & p, const SizeBounds & bounds)
{
    Searcher s(p, bounds, true);
    std::optional<HomMap> found;
    if (s.seed_ok())
        s.search(0, [&](const std::vector<Elem> & a) {
            found = a;
            return false;
        });
    return found;
}

namespace {

    MapSearchProblem hom_problem(const FiniteAlgebra & a, const FiniteAlgebra & b,
        const std::vector<Elem> & partial)
    {
        if (! (a.signature() == b.signature()))
            throw std::invalid_argument("homomorphism endpoints must share a signature");
        MapSearchProblem p;
        p.num_vars = a.size();
        p.domain = b.size();
        if (! partial.empty()) {
            if (static_cast<int>(partial.size()) != a.size())
                throw std::invalid_argument("partial map has wrong length");
            p.seed = partial;
        }
        for (std::size_t fi = 0; fi < a.ops().size(); ++fi) {
            const auto & fa = a.op(static_cast<int>(fi));
            const auto & fb = b.op(static_cast<int>(fi));
            int k = fa.arity();
            if (k == 0) {
                // constants pin single variables
                FunctionalInstance inst;
                inst.args = {};
                inst.out = fa.apply({});
                inst.fn = &fb.table();
                inst.fn_domain = b.size();
                p.functional.push_back(std::move(inst));
                continue;
            }
            std::size_t cells = fa.table().size();
            for (std::size_t ix = 0; ix < cells; ++ix) {
                Tuple args = fa.args_of_index(ix);
                FunctionalInstance inst;
                inst.args.assign(args.begin(), args.end());
                inst.out = fa.table()[ix];
                inst.fn = &fb.table();
                inst.fn_domain = b.size();
                p.functional.push_back(std::move(inst));
            }
        }
        return p;
    }

}

std::vector<HomMap> hom_enumerate(const FiniteAlgebra & a, const FiniteAlgebra & b,
    const std::vector<Elem> & partial, const SizeBounds & bounds)
{
    auto p = hom_problem(a, b, partial);
    return solve_all(p, bounds);
}

std::optional<HomMap> hom_first(const FiniteAlgebra & a, const FiniteAlgebra & b,
    const std::vector<Elem> & partial, const SizeBounds & bounds)
{
    auto p = hom_problem(a, b, partial);
    return solve_first(p, bounds);
}

std::optional<HomMap> hom_first_restricted(const FiniteAlgebra & a, const FiniteAlgebra & b,
    const std::vector<std::vector<Elem>> & restricted, const SizeBounds & bounds)
{
    auto p = hom_problem(a, b, {});
    p.restricted = restricted;
    for (auto & dom : p.restricted)
        std::sort(dom.begin(), dom.end());
    return solve_first(p, bounds);
}

bool is_homomorphism(const FiniteAlgebra & a, const FiniteAlgebra & b, const HomMap & map)
{
    if (static_cast<int>(map.size()) != a.size())
        return false;
    for (Elem v : map)
        if (v < 0 || v >= b.size())
            return false;
    for (std::size_t fi = 0; fi < a.ops().size(); ++fi) {
        const auto & fa = a.op(static_cast<int>(fi));
        const auto & fb = b.op(static_cast<int>(fi));
        std::size_t cells = fa.table().size();
        for (std::size_t ix = 0; ix < cells; ++ix) {
            Tuple args = fa.args_of_index(ix);
            Tuple mapped(args.size());
            for (std::size_t i = 0; i < args.size(); ++i)
                mapped[i] = map[args[i]];
            if (map[fa.table()[ix]] != fb.apply(mapped))
                return false;
        }
    }
    return true;
}

QuasivarietyVerdict in_quasivariety(const FiniteAlgebra & a, const FiniteAlgebra & m,
    const SizeBounds & bounds)
{
    auto homs = hom_enumerate(a, m, {}, bounds);
    for (Elem x = 0; x < a.size(); ++x)
        for (Elem y = x + 1; y < a.size(); ++y) {
            bool separated = false;
            for (const auto & h : homs)
                if (h[x] != h[y]) {
                    separated = true;
                    break;
                }
            if (! separated)
                return {false, {x, y}};
        }
    return {};
}

std::optional<RetractPair> is_retract_of(const FiniteAlgebra & d, const FiniteAlgebra & a,
    const SizeBounds & bounds)
{
    auto sections = hom_enumerate(d, a, {}, bounds);
    for (const auto & q : sections) {
        std::vector<Elem> seed(a.size(), -1);
        bool consistent = true;
        for (Elem x = 0; x < d.size() && consistent; ++x) {
            if (seed[q[x]] >= 0 && seed[q[x]] != x)
                consistent = false;
            seed[q[x]] = x;
        }
        if (! consistent)
            continue;
        if (auto p = hom_first(a, d, seed, bounds))
            return RetractPair{q, *p};
    }
    return std::nullopt;
}

std::vector<std::vector<Elem>> term_clone(const FiniteAlgebra & a, int k,
    const SizeBounds & bounds)
{
    if (k < 1)
        throw std::invalid_argument("term clone arity must be >= 1");
    std::size_t cells = 1;
    for (int i = 0; i < k; ++i)
        cells *= static_cast<std::size_t>(a.size());
    std::unordered_set<Tuple, TupleHash> seen;
    std::vector<std::vector<Elem>> tables;
    auto add = [&](std::vector<Elem> t) {
        if (seen.insert(t).second) {
            if (tables.size() + 1 > static_cast<std::size_t>(bounds.max_clone_tables))
                throw SizeBoundExceeded("term clone exceeds table bound");
            tables.push_back(std::move(t));
        }
    };
    for (int coord = 0; coord < k; ++coord)
        add(OperationTable::projection(k, a.size(), coord).table());
    bool grew = true;
    while (grew) {
        grew = false;
        std::size_t before = tables.size();
        for (const auto & f : a.ops()) {
            int m = f.arity();
            if (m == 0) {
                add(std::vector<Elem>(cells, f.apply({})));
                continue;
            }
            std::vector<std::size_t> pick(m, 0);
            while (true) {
                std::vector<Elem> composed(cells);
                Tuple call(m);
                for (std::size_t ix = 0; ix < cells; ++ix) {
                    for (int i = 0; i < m; ++i)
                        call[i] = tables[pick[i]][ix];
                    composed[ix] = f.apply(call);
                }
                add(std::move(composed));
                int pos = m - 1;
                while (pos >= 0 && ++pick[pos] == before) {
                    pick[pos] = 0;
                    --pos;
                }
                if (pos < 0)
                    break;
            }
        }
        if (tables.size() != before)
            grew = true;
    }
    std::sort(tables.begin(), tables.end());
    return tables;
}

FreeAlgebra free_algebra(const FiniteAlgebra & m, int k, const SizeBounds & bounds)
{
    if (k < 0)
        throw std::invalid_argument("free algebra rank must be >= 0");
    std::size_t exponent = 1;
    for (int i = 0; i < k; ++i) {
        exponent *= static_cast<std::size_t>(m.size());
        if (exponent > static_cast<std::size_t>(bounds.max_carrier))
            throw SizeBoundExceeded("free algebra exponent exceeds bound");
    }
    int e = static_cast<int>(exponent);
    std::vector<Tuple> gens;
    for (int coord = 0; coord < k; ++coord) {
        Tuple proj(e);
        for (int j = 0; j < e; ++j)
            proj[j] = power_element(m, k, static_cast<std::size_t>(j))[coord];
        gens.push_back(std::move(proj));
    }
    auto elems = generate_in_power(m, e, gens, bounds);
    if (elems.elems.empty())
        throw std::invalid_argument("free algebra on no generators needs constants");
    auto alg = algebra_on_tuples(m, elems, "F(" + m.name() + "," + std::to_string(k) + ")", bounds);
    std::vector<int> positions;
    for (int coord = 0; coord < k; ++coord) {
        Tuple proj(e);
        for (int j = 0; j < e; ++j)
            proj[j] = power_element(m, k, static_cast<std::size_t>(j))[coord];
        positions.push_back(elems.find(proj));
    }
    return FreeAlgebra{std::move(alg), std::move(elems), std::move(positions)};
}

namespace {

    struct Blocks {
        std::vector<std::vector<int>> positions;        // coordinate blocks
        std::vector<std::vector<Tuple>> factor_elems;   // sorted projections per block
    };

    std::vector<Tuple> project_block(const TupleSet & ts, const std::vector<int> & block)
    {
        std::vector<Tuple> out;
        out.reserve(ts.elems.size());
        for (const auto & t : ts.elems) {
            Tuple p(block.size());
            for (std::size_t i = 0; i < block.size(); ++i)
                p[i] = t[block[i]];
            out.push_back(std::move(p));
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    // Finest coordinate partition with B equal to the product of its block
    // projections, found by merging correlated blocks until the cardinality
    // check passes exactly.
    Blocks decompose(const TupleSet & ts)
    {
        Blocks b;
        for (int j = 0; j < ts.exponent; ++j)
            b.positions.push_back({j});
        auto recompute = [&]() {
            b.factor_elems.clear();
            for (const auto & blk : b.positions)
                b.factor_elems.push_back(project_block(ts, blk));
        };
        recompute();
        while (true) {
            unsigned long long prod = 1;
            bool over = false;
            for (const auto & f : b.factor_elems) {
                prod *= f.size();
                if (prod > ts.elems.size() * 2ULL + 4ULL) {
                    over = true;
                    break;
                }
            }
            if (! over && prod == ts.elems.size())
                return b;
            if (b.positions.size() == 1)
                return b;  // indecomposable; caller decides what to do
            // merge the most correlated pair of blocks
            double best = 1.0;
            std::size_t bi = 0, bj = 1;
            for (std::size_t i = 0; i < b.positions.size(); ++i)
                for (std::size_t j = i + 1; j < b.positions.size(); ++j) {
                    std::vector<int> joint = b.positions[i];
                    joint.insert(joint.end(), b.positions[j].begin(), b.positions[j].end());
                    auto je = project_block(ts, joint);
                    double ratio = double(je.size()) /
                        (double(b.factor_elems[i].size()) * double(b.factor_elems[j].size()));
                    if (ratio < best) {
                        best = ratio;
                        bi = i;
                        bj = j;
                    }
                }
            b.positions[bi].insert(b.positions[bi].end(),
                b.positions[bj].begin(), b.positions[bj].end());
            b.positions.erase(b.positions.begin() + static_cast<long>(bj));
            recompute();
        }
    }

}

std::vector<HomMap> homs_from_tuple_algebra(const FiniteAlgebra & m, const TupleSet & ts,
    const SizeBounds & bounds)
{
    if (ts.elems.empty())
        throw std::invalid_argument("empty tuple algebra");
    if (ts.elems.size() <= static_cast<std::size_t>(bounds.max_carrier)) {
        auto alg = algebra_on_tuples(m, ts, "B", bounds);
        return hom_enumerate(alg, m, {}, bounds);
    }

    if (! lattice_reduct(m))
        throw SizeBoundExceeded("tuple algebra of size " + std::to_string(ts.elems.size()) +
            " exceeds the carrier bound and the generator has no lattice reduct");

    auto blocks = decompose(ts);
    std::size_t nb = blocks.positions.size();
    unsigned long long prod = 1;
    for (const auto & f : blocks.factor_elems)
        prod *= f.size();
    if (nb == 1 || prod != ts.elems.size())
        throw SizeBoundExceeded("tuple algebra is too large and does not factor into a product");
    for (const auto & f : blocks.factor_elems)
        if (f.size() > static_cast<std::size_t>(bounds.max_carrier))
            throw SizeBoundExceeded("product factor exceeds carrier bound");

    // factor index of each element, per block
    std::vector<std::vector<int>> coord(nb, std::vector<int>(ts.elems.size()));
    for (std::size_t bi = 0; bi < nb; ++bi) {
        const auto & fe = blocks.factor_elems[bi];
        for (std::size_t ei = 0; ei < ts.elems.size(); ++ei) {
            Tuple p(blocks.positions[bi].size());
            for (std::size_t i = 0; i < blocks.positions[bi].size(); ++i)
                p[i] = ts.elems[ei][blocks.positions[bi][i]];
            auto it = std::lower_bound(fe.begin(), fe.end(), p);
            coord[bi][ei] = static_cast<int>(it - fe.begin());
        }
    }

    std::vector<FiniteAlgebra> factors;
    for (std::size_t bi = 0; bi < nb; ++bi) {
        auto fts = TupleSet::of(static_cast<int>(blocks.positions[bi].size()),
            blocks.factor_elems[bi]);
        factors.push_back(algebra_on_tuples(m, fts, "factor", bounds));
    }

    // With a lattice reduct, congruences of finite products factor blockwise,
    // so every homomorphism into M depends on at most log2(|M|) blocks.
    int max_deps = 0;
    while ((1 << (max_deps + 1)) <= m.size())
        ++max_deps;

    std::vector<HomMap> all;
    std::unordered_set<Tuple, TupleHash> dedup;
    auto emit = [&](const HomMap & h) {
        if (dedup.insert(h).second)
            all.push_back(h);
    };

    // homs through no block: constant maps onto one-element subalgebras
    for (Elem c = 0; c < m.size(); ++c) {
        bool closed = true;
        for (const auto & f : m.ops()) {
            Tuple args(f.arity(), c);
            if (f.apply(args) != c) {
                closed = false;
                break;
            }
        }
        if (closed)
            emit(HomMap(ts.elems.size(), c));
    }

    std::vector<std::size_t> subset;
    std::function<void(std::size_t)> sweep = [&](std::size_t from) {
        if (! subset.empty()) {
            FiniteAlgebra pt = factors[subset[0]];
            for (std::size_t i = 1; i < subset.size(); ++i)
                pt = product(pt, factors[subset[i]], "pt", bounds);
            auto homs = hom_enumerate(pt, m, {}, bounds);
            // radix layout of pt matches the subset order used to build it
            std::vector<int> radix(subset.size());
            for (std::size_t i = 0; i < subset.size(); ++i)
                radix[i] = factors[subset[i]].size();
            auto pt_index = [&](std::size_t ei) {
                int ix = 0;
                for (std::size_t i = 0; i < subset.size(); ++i)
                    ix = ix * radix[i] + coord[subset[i]][ei];
                return ix;
            };
            for (const auto & h : homs) {
                // keep only homs depending on every chosen block
                bool depends_all = true;
                for (std::size_t i = 0; i < subset.size() && depends_all; ++i) {
                    bool depends = false;
                    int stride = 1;
                    for (std::size_t j = i + 1; j < subset.size(); ++j)
                        stride *= radix[j];
                    for (int x = 0; x < pt.size() && ! depends; ++x) {
                        int digit = (x / stride) % radix[i];
                        if (digit + 1 < radix[i] && h[x] != h[x + stride])
                            depends = true;
                    }
                    depends_all = depends;
                }
                if (! depends_all)
                    continue;
                HomMap lifted(ts.elems.size());
                for (std::size_t ei = 0; ei < ts.elems.size(); ++ei)
                    lifted[ei] = h[pt_index(ei)];
                emit(lifted);
            }
        }
        if (static_cast<int>(subset.size()) >= max_deps)
            return;
        for (std::size_t next = from; next < nb; ++next) {
            subset.push_back(next);
            sweep(next + 1);
            subset.pop_back();
        }
    };
    sweep(0);

    std::sort(all.begin(), all.end());
    return all;
}

}
