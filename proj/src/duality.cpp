#include <dwb/duality.hpp>
#include <dwb/parallel.hpp>

#include <algorithm>

namespace dwb {

std::string to_string(DualityKind k)
{
    switch (k) {
    case DualityKind::iso: return "iso";
    case DualityKind::not_injective: return "not-injective";
    case DualityKind::not_surjective: return "not-surjective";
    }
    return "?";
}

FiniteStructure dual_of_algebra(const FiniteAlgebra & a, const AlterEgo & ego,
    const SizeBounds & bounds)
{
    if (! (a.signature() == ego.algebra().signature()))
        throw std::invalid_argument("dual_of_algebra needs a shared signature");
    auto homs = hom_enumerate(a, ego.algebra(), {}, bounds);
    FiniteStructure x{&ego, a.size(), TupleSet::of(a.size(), std::move(homs))};
    check_structure_closed(x);  // values of ego operations on homs are again homs
    return x;
}

DualOfStructure dual_of_structure(const FiniteStructure & x, const SizeBounds & bounds)
{
    const auto & ego = *x.ego;
    auto target = ego_power(ego, 1, bounds);
    auto morphisms = struct_morphisms(x, target, bounds);
    if (morphisms.empty())
        throw EmptyHomset("structure admits no morphisms into the alter ego");
    auto ts = TupleSet::of(static_cast<int>(x.size()), std::move(morphisms));
    // closure under the pointwise operations follows from algebraicity;
    // algebra_on_tuples still checks it
    auto alg = algebra_on_tuples(ego.algebra(), ts, "E(X)", bounds);
    return DualOfStructure{std::move(ts), std::move(alg)};
}

DualityVerdict check_duality_on(const FiniteAlgebra & a, const AlterEgo & ego,
    const SizeBounds & bounds)
{
    DualityVerdict v;
    auto qv = in_quasivariety(a, ego.algebra(), bounds);
    auto da = dual_of_algebra(a, ego, bounds);
    auto target = ego_power(ego, 1, bounds);
    auto morphisms = struct_morphisms(da, target, bounds);

    std::vector<HomMap> evaluations;
    for (Elem e = 0; e < a.size(); ++e) {
        HomMap ev(da.size());
        for (std::size_t h = 0; h < da.size(); ++h)
            ev[h] = da.universe.elems[h][e];
        evaluations.push_back(std::move(ev));
    }
    // evaluations are always morphisms
    for (const auto & ev : evaluations)
        invariant(std::binary_search(morphisms.begin(), morphisms.end(), ev),
            "evaluation is not a structure morphism");

    bool injective = true;
    for (std::size_t i = 0; i < evaluations.size() && injective; ++i)
        for (std::size_t j = i + 1; j < evaluations.size(); ++j)
            if (evaluations[i] == evaluations[j]) {
                injective = false;
                v.inseparable = {static_cast<Elem>(i), static_cast<Elem>(j)};
                break;
            }
    invariant(injective == qv.member,
        "evaluation injectivity must match quasivariety membership");

    std::sort(evaluations.begin(), evaluations.end());
    evaluations.erase(std::unique(evaluations.begin(), evaluations.end()), evaluations.end());
    v.evaluation_count = evaluations.size();
    v.morphism_count = morphisms.size();

    if (! injective) {
        v.kind = DualityKind::not_injective;
        if (! qv.member)
            v.inseparable = qv.inseparable;
        return v;
    }
    for (const auto & m : morphisms)
        if (! std::binary_search(evaluations.begin(), evaluations.end(), m)) {
            v.kind = DualityKind::not_surjective;
            v.witness = m;
            return v;
        }
    v.kind = DualityKind::iso;
    return v;
}

DualityVerdict check_fullness_on(const FiniteStructure & x, const SizeBounds & bounds)
{
    DualityVerdict v;
    const auto & ego = *x.ego;
    const auto & m = ego.algebra();
    auto target = ego_power(ego, 1, bounds);
    auto morphisms = struct_morphisms(x, target, bounds);
    if (morphisms.empty())
        throw EmptyHomset("fullness check on a structure with empty dual");
    auto ts = TupleSet::of(static_cast<int>(x.size()), std::move(morphisms));

    auto homs = homs_from_tuple_algebra(m, ts, bounds);

    std::vector<HomMap> evaluations;
    for (std::size_t y = 0; y < x.size(); ++y) {
        HomMap ev(ts.size());
        for (std::size_t phi = 0; phi < ts.size(); ++phi)
            ev[phi] = ts.elems[phi][y];
        evaluations.push_back(std::move(ev));
    }
    for (const auto & ev : evaluations)
        invariant(std::binary_search(homs.begin(), homs.end(), ev),
            "evaluation is not a homomorphism of the dual algebra");

    bool injective = true;
    for (std::size_t i = 0; i < evaluations.size() && injective; ++i)
        for (std::size_t j = i + 1; j < evaluations.size(); ++j)
            if (evaluations[i] == evaluations[j]) {
                injective = false;
                v.inseparable = {static_cast<Elem>(i), static_cast<Elem>(j)};
                break;
            }

    std::sort(evaluations.begin(), evaluations.end());
    evaluations.erase(std::unique(evaluations.begin(), evaluations.end()), evaluations.end());
    v.evaluation_count = evaluations.size();
    v.morphism_count = homs.size();

    if (! injective) {
        v.kind = DualityKind::not_injective;
        return v;
    }
    for (const auto & h : homs)
        if (! std::binary_search(evaluations.begin(), evaluations.end(), h)) {
            v.kind = DualityKind::not_surjective;
            v.witness = h;
            return v;
        }
    v.kind = DualityKind::iso;
    return v;
}

namespace {

    // restriction of every morphism of Y to the positions of X
    std::unordered_set<Tuple, TupleHash> restrictions_to(const std::vector<StructMorphism> & morY,
        const std::vector<int> & positions)
    {
        std::unordered_set<Tuple, TupleHash> out;
        for (const auto & psi : morY) {
            Tuple r(positions.size());
            for (std::size_t i = 0; i < positions.size(); ++i)
                r[i] = psi[positions[i]];
            out.insert(std::move(r));
        }
        return out;
    }

    struct SweepHit {
        std::size_t y_index;
        std::uint64_t x_mask;
        StructMorphism phi;
    };

    std::optional<SweepHit> sweep_ambient(const PowerContext & ctx, std::uint64_t ymask,
        std::size_t y_index, const FiniteStructure & target, const SizeBounds & bounds)
    {
        auto y = ctx.structure(ymask);
        auto morY = struct_morphisms(y, target, bounds);
        // X positions are relative to Y's sorted universe
        for (auto xmask : ctx.closed_within(ymask)) {
            auto x = ctx.structure(xmask);
            std::vector<int> positions;
            for (std::size_t i = 0; i < x.size(); ++i)
                positions.push_back(y.universe.find(x.universe.elems[i]));
            auto extendable = restrictions_to(morY, positions);
            auto morX = struct_morphisms(x, target, bounds);
            for (const auto & phi : morX)
                if (! extendable.contains(phi))
                    return SweepHit{y_index, xmask, phi};
        }
        return std::nullopt;
    }

}

std::optional<InjectivityWitness> search_injectivity_failure(const AlterEgo & ego,
    int power_bound, std::size_t size_bound, const SizeBounds & bounds, int jobs)
{
    for (int k = 1; k <= power_bound; ++k) {
        PowerContext ctx(ego, k, bounds);
        auto target = ego_power(ego, 1, bounds);
        std::vector<std::uint64_t> ys;
        for (auto m : ctx.all_closed())
            if (static_cast<std::size_t>(std::popcount(m)) <= size_bound)
                ys.push_back(m);
        // canonical order: increasing |Y| then element order (already sorted)
        auto hits = parallel_map<std::optional<SweepHit>>(jobs, ys.size(), [&](std::size_t i) {
            return sweep_ambient(ctx, ys[i], i, target, bounds);
        });
        for (const auto & hit : hits) {
            if (! hit)
                continue;
            auto y = ctx.structure(ys[hit->y_index]);
            auto x = ctx.structure(hit->x_mask);
            return InjectivityWitness{k, y.universe.elems, x.universe.elems, hit->phi};
        }
    }
    return std::nullopt;
}

bool verify_injectivity_witness(const AlterEgo & ego, const InjectivityWitness & w,
    const SizeBounds & bounds)
{
    FiniteStructure y{&ego, w.exponent, TupleSet::of(w.exponent, w.ambient)};
    FiniteStructure x{&ego, w.exponent, TupleSet::of(w.exponent, w.sub)};
    check_structure_closed(y);
    check_structure_closed(x);
    for (const auto & t : x.universe.elems)
        if (y.universe.find(t) < 0)
            return false;
    auto target = ego_power(ego, 1, bounds);
    if (! is_struct_morphism(x, target, w.phi))
        return false;
    // direct extension search, independent of the sweep's restriction sets
    std::vector<Elem> seed(y.size(), -1);
    for (std::size_t i = 0; i < x.size(); ++i)
        seed[y.universe.find(x.universe.elems[i])] = w.phi[i];
    auto morY = struct_morphisms(y, target, bounds);
    for (const auto & psi : morY) {
        bool extends = true;
        for (std::size_t i = 0; i < y.size() && extends; ++i)
            if (seed[i] >= 0 && psi[i] != seed[i])
                extends = false;
        if (extends)
            return false;  // an extension exists, witness invalid
    }
    return true;
}

StructMorphism dual_of_hom(const FiniteAlgebra & a, const FiniteAlgebra & b,
    const HomMap & u, const FiniteStructure & da, const FiniteStructure & db)
{
    invariant(is_homomorphism(a, b, u), "dual_of_hom needs a homomorphism");
    StructMorphism out(db.size());
    for (std::size_t h = 0; h < db.size(); ++h) {
        Tuple composed(a.size());
        for (Elem e = 0; e < a.size(); ++e)
            composed[e] = db.universe.elems[h][u[e]];
        int where = da.universe.find(composed);
        invariant(where >= 0, "composition with a homomorphism left the dual");
        out[h] = where;
    }
    return out;
}

}
