#include <dwb/structures.hpp>

#include <algorithm>
#include <bit>

namespace dwb {

PartialOperationTable::PartialOperationTable(int arity, int carrier,
    std::vector<Tuple> domain, std::vector<Elem> values) :
    arity_(arity),
    carrier_(carrier)
{
    if (domain.size() != values.size())
        throw std::invalid_argument("partial operation table not defined exactly on its domain");
    std::vector<std::pair<Tuple, Elem>> rows;
    rows.reserve(domain.size());
    for (std::size_t i = 0; i < domain.size(); ++i) {
        if (static_cast<int>(domain[i].size()) != arity)
            throw std::invalid_argument("partial operation domain tuple has wrong arity");
        for (Elem e : domain[i])
            if (e < 0 || e >= carrier)
                throw std::invalid_argument("partial operation domain outside carrier");
        if (values[i] < 0 || values[i] >= carrier)
            throw std::invalid_argument("partial operation value outside carrier");
        rows.emplace_back(std::move(domain[i]), values[i]);
    }
    std::sort(rows.begin(), rows.end());
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].first == rows[i - 1].first)
            throw std::invalid_argument("duplicate tuple in partial operation domain");
    domain_.reserve(rows.size());
    values_.reserve(rows.size());
    for (auto & [t, v] : rows) {
        domain_.push_back(std::move(t));
        values_.push_back(v);
    }
}

std::optional<Elem> PartialOperationTable::apply(const Tuple & args) const
{
    auto it = std::lower_bound(domain_.begin(), domain_.end(), args);
    if (it == domain_.end() || *it != args)
        return std::nullopt;
    return values_[static_cast<std::size_t>(it - domain_.begin())];
}

std::vector<Elem> PartialOperationTable::flat() const
{
    std::size_t cells = 1;
    for (int i = 0; i < arity_; ++i)
        cells *= static_cast<std::size_t>(carrier_);
    std::vector<Elem> t(cells, -1);
    for (std::size_t i = 0; i < domain_.size(); ++i) {
        std::size_t ix = 0;
        for (Elem e : domain_[i])
            ix = ix * carrier_ + static_cast<std::size_t>(e);
        t[ix] = values_[i];
    }
    return t;
}

Relation graph_of(const OperationTable & op)
{
    std::vector<Tuple> tuples;
    std::size_t cells = op.table().size();
    for (std::size_t ix = 0; ix < cells; ++ix) {
        Tuple t = op.args_of_index(ix);
        t.push_back(op.table()[ix]);
        tuples.push_back(std::move(t));
    }
    return Relation::from_tuples(op.arity() + 1, std::move(tuples));
}

Relation graph_of(const PartialOperationTable & op)
{
    std::vector<Tuple> tuples;
    for (std::size_t i = 0; i < op.domain().size(); ++i) {
        Tuple t = op.domain()[i];
        t.push_back(op.values()[i]);
        tuples.push_back(std::move(t));
    }
    return Relation::from_tuples(op.arity() + 1, std::move(tuples));
}

namespace {
    AlgebraicityReport::Item check_item(const FiniteAlgebra & m, const std::string & name,
        const std::string & kind, const Relation & rel)
    {
        AlgebraicityReport::Item item{name, kind};
        auto ts = TupleSet::of(rel.arity, rel.tuples);
        for (std::size_t fi = 0; fi < m.ops().size(); ++fi) {
            FiniteAlgebra probe("probe", m.size(),
                Signature{{m.signature().ops[fi]}}, {m.op(static_cast<int>(fi))});
            auto r = check_subuniverse(probe, ts);
            if (! r.closed) {
                item.algebraic = false;
                item.violating_op = m.signature().ops[fi].name;
                item.missing = r.missing;
                return item;
            }
        }
        return item;
    }
}

AlgebraicityReport is_algebraic_over(const AlterEgo & ego)
{
    AlgebraicityReport report;
    const auto & m = ego.algebra();
    for (const auto & [name, op] : ego.total_ops)
        report.items.push_back(check_item(m, name, "operation", graph_of(op)));
    for (const auto & [name, op] : ego.partial_ops)
        report.items.push_back(check_item(m, name, "partial", graph_of(op)));
    for (const auto & [name, rel] : ego.relations)
        report.items.push_back(check_item(m, name, "relation", rel));
    for (const auto & item : report.items)
        report.algebraic = report.algebraic && item.algebraic;
    return report;
}

FiniteStructure ego_power(const AlterEgo & ego, int k, const SizeBounds & bounds)
{
    const auto & m = ego.algebra();
    std::size_t total = 1;
    for (int i = 0; i < k; ++i) {
        total *= static_cast<std::size_t>(m.size());
        if (total > static_cast<std::size_t>(bounds.max_carrier))
            throw SizeBoundExceeded("power universe exceeds carrier bound");
    }
    std::vector<Tuple> elems;
    elems.reserve(total);
    for (std::size_t ix = 0; ix < total; ++ix)
        elems.push_back(power_element(m, k, ix));
    return FiniteStructure{&ego, k, TupleSet::of(k, std::move(elems))};
}

namespace {

    // pointwise application; nullopt when some coordinate leaves the domain
    std::optional<Tuple> apply_pointwise_partial(const PartialOperationTable & op,
        std::span<const Tuple> args, int exponent)
    {
        Tuple out(exponent);
        Tuple call(op.arity());
        for (int coord = 0; coord < exponent; ++coord) {
            for (int i = 0; i < op.arity(); ++i)
                call[i] = args[i][coord];
            auto v = op.apply(call);
            if (! v)
                return std::nullopt;
            out[coord] = *v;
        }
        return out;
    }

    Tuple apply_pointwise_total(const OperationTable & op, std::span<const Tuple> args,
        int exponent)
    {
        Tuple out(exponent);
        Tuple call(op.arity());
        for (int coord = 0; coord < exponent; ++coord) {
            for (int i = 0; i < op.arity(); ++i)
                call[i] = args[i][coord];
            out[coord] = op.apply(call);
        }
        return out;
    }

}

FiniteStructure substructure_generate(const AlterEgo & ego, int exponent,
    std::span<const Tuple> seed, const SizeBounds & bounds)
{
    std::unordered_set<Tuple, TupleHash> seen;
    std::vector<Tuple> elems;
    auto add = [&](const Tuple & t) {
        if (seen.insert(t).second) {
            elems.push_back(t);
            if (elems.size() > static_cast<std::size_t>(bounds.max_carrier))
                throw SizeBoundExceeded("generated substructure exceeds carrier bound");
        }
    };
    for (const auto & t : seed)
        add(t);
    bool grew = true;
    while (grew) {
        grew = false;
        std::size_t before = elems.size();
        for (const auto & [name, op] : ego.total_ops) {
            int k = op.arity();
            if (k == 0) {
                add(Tuple(exponent, op.apply({})));
                continue;
            }
            if (elems.empty())
                continue;
            std::vector<std::size_t> pick(k, 0);
            std::vector<Tuple> args(k);
            while (true) {
                for (int i = 0; i < k; ++i)
                    args[i] = elems[pick[i]];
                add(apply_pointwise_total(op, args, exponent));
                int pos = k - 1;
                while (pos >= 0 && ++pick[pos] == before) {
                    pick[pos] = 0;
                    --pos;
                }
                if (pos < 0)
                    break;
            }
        }
        for (const auto & [name, op] : ego.partial_ops) {
            int k = op.arity();
            if (elems.empty() && k > 0)
                continue;
            std::vector<std::size_t> pick(k, 0);
            std::vector<Tuple> args(k);
            while (true) {
                for (int i = 0; i < k; ++i)
                    args[i] = elems[pick[i]];
                if (auto out = apply_pointwise_partial(op, args, exponent))
                    add(*out);
                int pos = k - 1;
                while (pos >= 0 && ++pick[pos] == before) {
                    pick[pos] = 0;
                    --pos;
                }
                if (pos < 0)
                    break;
            }
        }
        if (elems.size() != before)
            grew = true;
    }
    return FiniteStructure{&ego, exponent, TupleSet::of(exponent, std::move(elems))};
}

void check_structure_closed(const FiniteStructure & x)
{
    const auto & ego = *x.ego;
    const auto & u = x.universe.elems;
    for (const auto & [name, op] : ego.total_ops) {
        int k = op.arity();
        std::vector<std::size_t> pick(k, 0);
        std::vector<Tuple> args(k);
        if (u.empty() && k > 0)
            continue;
        while (true) {
            for (int i = 0; i < k; ++i)
                args[i] = u[pick[i]];
            if (x.universe.find(apply_pointwise_total(op, args, x.exponent)) < 0)
                throw InvariantViolation("structure universe not closed under a total operation");
            int pos = k - 1;
            while (pos >= 0 && ++pick[pos] == u.size()) {
                pick[pos] = 0;
                --pos;
            }
            if (pos < 0)
                break;
        }
    }
    for (const auto & [name, op] : ego.partial_ops) {
        int k = op.arity();
        if (u.empty() && k > 0)
            continue;
        std::vector<std::size_t> pick(k, 0);
        std::vector<Tuple> args(k);
        while (true) {
            for (int i = 0; i < k; ++i)
                args[i] = u[pick[i]];
            if (auto out = apply_pointwise_partial(op, args, x.exponent))
                if (x.universe.find(*out) < 0)
                    throw InvariantViolation("structure universe not closed under a partial operation");
            int pos = k - 1;
            while (pos >= 0 && ++pick[pos] == u.size()) {
                pick[pos] = 0;
                --pos;
            }
            if (pos < 0)
                break;
        }
    }
}

namespace {

    struct MorphismProblem {
        MapSearchProblem p;
        // owned constraint payloads
        std::vector<std::unique_ptr<std::vector<Elem>>> tables;
        std::vector<std::unique_ptr<std::unordered_set<Tuple, TupleHash>>> sets;
    };

    // position table of `op` acting pointwise on the target universe;
    // -1 where undefined or (for partial ops) outside the domain
    std::vector<Elem> target_table_total(const FiniteStructure & y, const OperationTable & op)
    {
        int k = op.arity();
        std::size_t n = y.size();
        std::size_t cells = 1;
        for (int i = 0; i < k; ++i)
            cells *= n;
        std::vector<Elem> table(cells);
        std::vector<std::size_t> pick(k, 0);
        std::vector<Tuple> args(k);
        for (std::size_t ix = 0; ix < cells; ++ix) {
            std::size_t rest = ix;
            for (int pos = k - 1; pos >= 0; --pos) {
                pick[pos] = rest % n;
                rest /= n;
            }
            for (int i = 0; i < k; ++i)
                args[i] = y.universe.elems[pick[i]];
            int where = y.universe.find(apply_pointwise_total(op, args, y.exponent));
            if (where < 0)
                throw InvariantViolation("target structure not closed under a total operation");
            table[ix] = where;
        }
        return table;
    }

    std::vector<Elem> target_table_partial(const FiniteStructure & y,
        const PartialOperationTable & op)
    {
        int k = op.arity();
        std::size_t n = y.size();
        std::size_t cells = 1;
        for (int i = 0; i < k; ++i)
            cells *= n;
        std::vector<Elem> table(cells, -1);
        std::vector<std::size_t> pick(k, 0);
        std::vector<Tuple> args(k);
        for (std::size_t ix = 0; ix < cells; ++ix) {
            std::size_t rest = ix;
            for (int pos = k - 1; pos >= 0; --pos) {
                pick[pos] = rest % n;
                rest /= n;
            }
            for (int i = 0; i < k; ++i)
                args[i] = y.universe.elems[pick[i]];
            if (auto out = apply_pointwise_partial(op, args, y.exponent)) {
                int where = y.universe.find(*out);
                if (where < 0)
                    throw InvariantViolation("target structure not closed under a partial operation");
                table[ix] = where;
            }
        }
        return table;
    }

    MorphismProblem morphism_problem(const FiniteStructure & x, const FiniteStructure & y)
    {
        if (x.ego != y.ego)
            throw std::invalid_argument("structure morphisms need a shared alter ego");
        const auto & ego = *x.ego;
        MorphismProblem mp;
        mp.p.num_vars = static_cast<int>(x.size());
        mp.p.domain = static_cast<int>(y.size());
        if (x.size() == 0)
            return mp;  // only the empty map, vacuously a morphism

        auto add_functional = [&](const std::vector<int> & args, int out,
                                  const std::vector<Elem> * fn) {
            FunctionalInstance inst;
            inst.args = args;
            inst.out = out;
            inst.fn = fn;
            inst.fn_domain = static_cast<int>(y.size());
            mp.p.functional.push_back(std::move(inst));
        };

        for (const auto & [name, op] : ego.total_ops) {
            mp.tables.push_back(std::make_unique<std::vector<Elem>>(target_table_total(y, op)));
            const auto * fn = mp.tables.back().get();
            int k = op.arity();
            std::vector<std::size_t> pick(k, 0);
            std::vector<Tuple> args(k);
            if (x.size() == 0 && k > 0)
                continue;
            while (true) {
                for (int i = 0; i < k; ++i)
                    args[i] = x.universe.elems[pick[i]];
                int out = x.universe.find(apply_pointwise_total(op, args, x.exponent));
                if (out < 0)
                    throw InvariantViolation("source structure not closed under a total operation");
                std::vector<int> vars(pick.begin(), pick.end());
                add_functional(vars, out, fn);
                int pos = k - 1;
                while (pos >= 0 && ++pick[pos] == x.size()) {
                    pick[pos] = 0;
                    --pos;
                }
                if (pos < 0)
                    break;
            }
        }
        for (const auto & [name, op] : ego.partial_ops) {
            mp.tables.push_back(std::make_unique<std::vector<Elem>>(target_table_partial(y, op)));
            const auto * fn = mp.tables.back().get();
            int k = op.arity();
            std::vector<std::size_t> pick(k, 0);
            std::vector<Tuple> args(k);
            if (x.size() == 0 && k > 0)
                continue;
            while (true) {
                for (int i = 0; i < k; ++i)
                    args[i] = x.universe.elems[pick[i]];
                if (auto outT = apply_pointwise_partial(op, args, x.exponent)) {
                    int out = x.universe.find(*outT);
                    if (out < 0)
                        throw InvariantViolation("source structure not closed under a partial operation");
                    std::vector<int> vars(pick.begin(), pick.end());
                    add_functional(vars, out, fn);
                }
                int pos = k - 1;
                while (pos >= 0 && ++pick[pos] == x.size()) {
                    pick[pos] = 0;
                    --pos;
                }
                if (pos < 0)
                    break;
            }
        }
        for (const auto & [name, rel] : ego.relations) {
            int k = rel.arity;
            // allowed position tuples on the target side
            auto allowed = std::make_unique<std::unordered_set<Tuple, TupleHash>>();
            {
                std::size_t n = y.size();
                std::vector<std::size_t> pick(k, 0);
                if (n > 0) {
                    while (true) {
                        bool in = true;
                        for (int coord = 0; coord < y.exponent && in; ++coord) {
                            Tuple col(k);
                            for (int i = 0; i < k; ++i)
                                col[i] = y.universe.elems[pick[i]][coord];
                            in = rel.contains(col);
                        }
                        if (in)
                            allowed->insert(Tuple(pick.begin(), pick.end()));
                        int pos = k - 1;
                        while (pos >= 0 && ++pick[pos] == n) {
                            pick[pos] = 0;
                            --pos;
                        }
                        if (pos < 0)
                            break;
                    }
                }
            }
            mp.sets.push_back(std::move(allowed));
            const auto * aset = mp.sets.back().get();
            // instances on the source side
            std::size_t n = x.size();
            std::vector<std::size_t> pick(k, 0);
            if (n > 0) {
                while (true) {
                    bool in = true;
                    for (int coord = 0; coord < x.exponent && in; ++coord) {
                        Tuple col(k);
                        for (int i = 0; i < k; ++i)
                            col[i] = x.universe.elems[pick[i]][coord];
                        in = rel.contains(col);
                    }
                    if (in) {
                        RelationalInstance ri;
                        ri.vars.assign(pick.begin(), pick.end());
                        ri.allowed = aset;
                        mp.p.relational.push_back(std::move(ri));
                    }
                    int pos = k - 1;
                    while (pos >= 0 && ++pick[pos] == n) {
                        pick[pos] = 0;
                        --pos;
                    }
                    if (pos < 0)
                        break;
                }
            }
        }
        return mp;
    }

}

std::vector<StructMorphism> struct_morphisms(const FiniteStructure & x,
    const FiniteStructure & y, const SizeBounds & bounds)
{
    auto mp = morphism_problem(x, y);
    return solve_all(mp.p, bounds);
}

bool is_struct_morphism(const FiniteStructure & x, const FiniteStructure & y,
    const StructMorphism & map)
{
    if (map.size() != x.size())
        return false;
    for (Elem v : map)
        if (v < 0 || v >= static_cast<int>(y.size()))
            return false;
    auto mp = morphism_problem(x, y);
    for (const auto & fi : mp.p.functional) {
        std::size_t ix = 0;
        for (int v : fi.args)
            ix = ix * fi.fn_domain + static_cast<std::size_t>(map[v]);
        Elem val = (*fi.fn)[ix];
        if (val < 0 || map[fi.out] != val)
            return false;
    }
    for (const auto & ri : mp.p.relational) {
        Tuple vals(ri.vars.size());
        for (std::size_t i = 0; i < ri.vars.size(); ++i)
            vals[i] = map[ri.vars[i]];
        if (! ri.allowed->contains(vals))
            return false;
    }
    return true;
}

PowerContext::PowerContext(const AlterEgo & ego, int k, const SizeBounds & bounds) :
    ego_(&ego),
    k_(k)
{
    const auto & m = ego.algebra();
    std::size_t total = 1;
    for (int i = 0; i < k; ++i) {
        total *= static_cast<std::size_t>(m.size());
        if (total > 64 || total > static_cast<std::size_t>(bounds.max_carrier))
            throw SizeBoundExceeded("power universe exceeds the 64-element closure bound");
    }
    n_ = static_cast<int>(total);
    elems_.reserve(total);
    for (std::size_t ix = 0; ix < total; ++ix)
        elems_.push_back(power_element(m, k, ix));

    auto position = [&](const Tuple & t) { return static_cast<Elem>(power_index(m, t)); };

    for (const auto & [name, op] : ego.total_ops) {
        int a = op.arity();
        std::size_t cells = 1;
        for (int i = 0; i < a; ++i)
            cells *= total;
        std::vector<Elem> table(cells);
        std::vector<std::size_t> pick(a, 0);
        std::vector<Tuple> args(a);
        for (std::size_t ix = 0; ix < cells; ++ix) {
            std::size_t rest = ix;
            for (int pos = a - 1; pos >= 0; --pos) {
                pick[pos] = rest % total;
                rest /= total;
            }
            for (int i = 0; i < a; ++i)
                args[i] = elems_[pick[i]];
            table[ix] = position(apply_pointwise_total(op, args, k_));
        }
        total_tables_.push_back(std::move(table));
        total_arity_.push_back(a);
    }
    for (const auto & [name, op] : ego.partial_ops) {
        int a = op.arity();
        std::size_t cells = 1;
        for (int i = 0; i < a; ++i)
            cells *= total;
        std::vector<Elem> table(cells, -1);
        std::vector<std::size_t> pick(a, 0);
        std::vector<Tuple> args(a);
        for (std::size_t ix = 0; ix < cells; ++ix) {
            std::size_t rest = ix;
            for (int pos = a - 1; pos >= 0; --pos) {
                pick[pos] = rest % total;
                rest /= total;
            }
            for (int i = 0; i < a; ++i)
                args[i] = elems_[pick[i]];
            if (auto out = apply_pointwise_partial(op, args, k_))
                table[ix] = position(*out);
        }
        partial_tables_.push_back(std::move(table));
        partial_arity_.push_back(a);
    }
}

std::uint64_t PowerContext::close(std::uint64_t s) const
{
    bool grew = true;
    while (grew) {
        grew = false;
        for (std::size_t oi = 0; oi < total_tables_.size(); ++oi) {
            int a = total_arity_[oi];
            const auto & table = total_tables_[oi];
            if (a == 0) {
                std::uint64_t bit = 1ULL << table[0];
                if (! (s & bit)) {
                    s |= bit;
                    grew = true;
                }
                continue;
            }
            std::vector<int> members;
            for (int i = 0; i < n_; ++i)
                if (s & (1ULL << i))
                    members.push_back(i);
            if (members.empty())
                continue;
            std::vector<std::size_t> pick(a, 0);
            while (true) {
                std::size_t ix = 0;
                for (int i = 0; i < a; ++i)
                    ix = ix * n_ + static_cast<std::size_t>(members[pick[i]]);
                std::uint64_t bit = 1ULL << table[ix];
                if (! (s & bit)) {
                    s |= bit;
                    grew = true;
                }
                int pos = a - 1;
                while (pos >= 0 && ++pick[pos] == members.size()) {
                    pick[pos] = 0;
                    --pos;
                }
                if (pos < 0)
                    break;
            }
        }
        for (std::size_t oi = 0; oi < partial_tables_.size(); ++oi) {
            int a = partial_arity_[oi];
            const auto & table = partial_tables_[oi];
            std::vector<int> members;
            for (int i = 0; i < n_; ++i)
                if (s & (1ULL << i))
                    members.push_back(i);
            if (members.empty() && a > 0)
                continue;
            std::vector<std::size_t> pick(a, 0);
            while (true) {
                std::size_t ix = 0;
                for (int i = 0; i < a; ++i)
                    ix = ix * n_ + static_cast<std::size_t>(members[pick[i]]);
                Elem v = table[ix];
                if (v >= 0) {
                    std::uint64_t bit = 1ULL << v;
                    if (! (s & bit)) {
                        s |= bit;
                        grew = true;
                    }
                }
                int pos = a - 1;
                while (pos >= 0 && ++pick[pos] == members.size()) {
                    pick[pos] = 0;
                    --pos;
                }
                if (pos < 0)
                    break;
            }
        }
    }
    return s;
}

namespace {

    // Ganter next-closure over an arbitrary sub-universe given as a list of
    // global element indices.
    std::vector<std::uint64_t> next_closure_enumerate(const std::vector<int> & elements,
        const std::function<std::uint64_t(std::uint64_t)> & close)
    {
        std::vector<std::uint64_t> out;
        int n = static_cast<int>(elements.size());
        auto mask_below = [&](int i) {
            std::uint64_t m = 0;
            for (int j = 0; j < i; ++j)
                m |= 1ULL << elements[j];
            return m;
        };
        std::uint64_t a = close(0);
        out.push_back(a);
        while (true) {
            bool advanced = false;
            for (int i = n - 1; i >= 0 && ! advanced; --i) {
                std::uint64_t bit = 1ULL << elements[i];
                if (a & bit)
                    continue;
                std::uint64_t candidate = close((a & mask_below(i)) | bit);
                // lectic condition: nothing new below position i
                if ((candidate & mask_below(i) & ~a) == 0) {
                    a = candidate;
                    out.push_back(a);
                    advanced = true;
                }
            }
            if (! advanced)
                break;
        }
        return out;
    }

}

std::vector<std::uint64_t> PowerContext::all_closed() const
{
    std::vector<int> elements(n_);
    for (int i = 0; i < n_; ++i)
        elements[i] = i;
    auto closed = next_closure_enumerate(elements, [this](std::uint64_t s) { return close(s); });
    std::vector<std::uint64_t> out;
    for (auto m : closed)
        if (m != 0)
            out.push_back(m);
    std::sort(out.begin(), out.end(), canonical_mask_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<std::uint64_t> PowerContext::closed_within(std::uint64_t y) const
{
    std::vector<int> elements;
    for (int i = 0; i < n_; ++i)
        if (y & (1ULL << i))
            elements.push_back(i);
    auto closed = next_closure_enumerate(elements, [this](std::uint64_t s) { return close(s); });
    std::vector<std::uint64_t> out;
    for (auto m : closed)
        if (m != 0 && (m & ~y) == 0)
            out.push_back(m);
    std::sort(out.begin(), out.end(), canonical_mask_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

FiniteStructure PowerContext::structure(std::uint64_t mask) const
{
    std::vector<Tuple> elems;
    for (int i = 0; i < n_; ++i)
        if (mask & (1ULL << i))
            elems.push_back(elems_[i]);
    return FiniteStructure{ego_, k_, TupleSet::of(k_, std::move(elems))};
}

bool canonical_mask_less(std::uint64_t a, std::uint64_t b)
{
    int pa = std::popcount(a), pb = std::popcount(b);
    if (pa != pb)
        return pa < pb;
    // compare sorted element lists lexicographically
    while (a || b) {
        if (a == b)
            return false;
        int la = a ? std::countr_zero(a) : 64;
        int lb = b ? std::countr_zero(b) : 64;
        if (la != lb)
            return la < lb;
        a &= a - 1;
        b &= b - 1;
    }
    return false;
}

SubstructureEnumeration enumerate_substructures(const AlterEgo & ego, int k,
    std::size_t max_count, const SizeBounds & bounds)
{
    PowerContext ctx(ego, k, bounds);
    auto masks = ctx.all_closed();
    SubstructureEnumeration out;
    for (auto m : masks) {
        if (out.structures.size() >= max_count) {
            out.truncated = true;
            break;
        }
        out.structures.push_back(ctx.structure(m));
    }
    return out;
}

}
