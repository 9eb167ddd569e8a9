#include <dwb/endo.hpp>

#include <algorithm>

namespace dwb {

EndoMonoid EndoMonoid::from_maps(int carrier, std::vector<std::vector<Elem>> maps)
{
    std::sort(maps.begin(), maps.end());
    maps.erase(std::unique(maps.begin(), maps.end()), maps.end());
    std::vector<Elem> identity(carrier);
    for (Elem e = 0; e < carrier; ++e)
        identity[e] = e;
    bool has_id = std::binary_search(maps.begin(), maps.end(), identity);
    invariant(has_id, "endomorphism monoid must contain the identity");
    for (const auto & f : maps)
        for (const auto & g : maps) {
            std::vector<Elem> comp(carrier);
            for (Elem e = 0; e < carrier; ++e)
                comp[e] = f[g[e]];
            invariant(std::binary_search(maps.begin(), maps.end(), comp),
                "endomorphism monoid must be closed under composition");
        }
    return EndoMonoid{std::move(maps)};
}

EndoMonoid endomorphisms(const FiniteAlgebra & m, const SizeBounds & bounds)
{
    return EndoMonoid::from_maps(m.size(), hom_enumerate(m, m, {}, bounds));
}

AlterEgo endomorphism_ego(std::shared_ptr<const FiniteAlgebra> m, const SizeBounds & bounds)
{
    AlterEgo ego;
    ego.name = "End(" + m->name() + ")";
    ego.over = m;
    auto endos = endomorphisms(*m, bounds);
    for (std::size_t i = 0; i < endos.elements.size(); ++i)
        ego.total_ops.emplace_back("e" + std::to_string(i),
            OperationTable(1, m->size(), endos.elements[i]));
    return ego;
}

bool commutes_with_endomorphisms(const FiniteAlgebra & m, const EndoMonoid & endos,
    const std::vector<Elem> & table, int k)
{
    std::size_t cells = table.size();
    Tuple args(k);
    for (const auto & e : endos.elements)
        for (std::size_t ix = 0; ix < cells; ++ix) {
            std::size_t rest = ix;
            for (int pos = k - 1; pos >= 0; --pos) {
                args[pos] = static_cast<Elem>(rest % m.size());
                rest /= m.size();
            }
            std::size_t mapped = 0;
            for (int pos = 0; pos < k; ++pos)
                mapped = mapped * m.size() + static_cast<std::size_t>(e[args[pos]]);
            if (table[mapped] != e[table[ix]])
                return false;
        }
    return true;
}

EndoprimalityVerdict is_k_endoprimal(const FiniteAlgebra & m, int k, const SizeBounds & bounds)
{
    if (k < 1)
        throw std::invalid_argument("endoprimality needs k >= 1");
    std::size_t cells = 1;
    for (int i = 0; i < k; ++i) {
        cells *= static_cast<std::size_t>(m.size());
        if (cells > 64)
            throw SizeBoundExceeded("endoprimality table too large");
    }

    auto endos = endomorphisms(m, bounds);
    auto clone = term_clone(m, k, bounds);

    // search over table cells; commuting with e links cell x to cell e(x)
    MapSearchProblem p;
    p.num_vars = static_cast<int>(cells);
    p.domain = m.size();
    std::vector<std::unique_ptr<std::vector<Elem>>> tables;
    Tuple args(k);
    for (const auto & e : endos.elements) {
        tables.push_back(std::make_unique<std::vector<Elem>>(e));
        const auto * fn = tables.back().get();
        for (std::size_t ix = 0; ix < cells; ++ix) {
            std::size_t rest = ix;
            for (int pos = k - 1; pos >= 0; --pos) {
                args[pos] = static_cast<Elem>(rest % m.size());
                rest /= m.size();
            }
            std::size_t mapped = 0;
            for (int pos = 0; pos < k; ++pos)
                mapped = mapped * m.size() + static_cast<std::size_t>(e[args[pos]]);
            FunctionalInstance inst;
            inst.args = {static_cast<int>(ix)};
            inst.out = static_cast<int>(mapped);
            inst.fn = fn;
            inst.fn_domain = m.size();
            p.functional.push_back(std::move(inst));
        }
    }

    EndoprimalityVerdict v;
    v.k = k;
    auto commuting = solve_all(p, bounds);
    for (const auto & table : commuting)
        if (! std::binary_search(clone.begin(), clone.end(), table)) {
            v.holds = false;
            v.witness = table;
            return v;
        }
    return v;
}

DualityVerdict is_endodualisable_on(const FiniteAlgebra & m, const FiniteAlgebra & a,
    const SizeBounds & bounds)
{
    auto ego = endomorphism_ego(std::make_shared<FiniteAlgebra>(m), bounds);
    return check_duality_on(a, ego, bounds);
}

std::vector<Elem> double_stone_core(const FiniteAlgebra & l)
{
    const auto * star = l.op_named("star");
    const auto * plus = l.op_named("plus");
    if (! star || ! plus || star->arity() != 1 || plus->arity() != 1)
        throw std::invalid_argument("double Stone core needs unary star and plus");
    Elem zero = -1, one = -1;
    if (const auto * z = l.op_named("zero"))
        zero = z->apply({});
    if (const auto * o = l.op_named("one"))
        one = o->apply({});
    if (zero < 0 || one < 0)
        throw std::invalid_argument("double Stone core needs constants zero and one");
    std::vector<Elem> core;
    for (Elem x = 0; x < l.size(); ++x)
        if (star->apply_unary(x) == zero && plus->apply_unary(x) == one)
            core.push_back(x);
    return core;
}

}
