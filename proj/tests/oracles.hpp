#pragma once

// Independent brute-force oracles for the test suites. Everything here
// enumerates candidate maps exhaustively and checks the defining conditions
// directly, without going through the search engines it is used to test.

#include <dwb/structures.hpp>

#include <cstdint>
#include <vector>

namespace oracles {

using namespace dwb;

// all maps src_size -> tgt_size as value vectors, lexicographic
inline std::vector<std::vector<Elem>> all_maps(std::size_t src_size, int tgt_size)
{
    std::vector<std::vector<Elem>> out;
    std::vector<Elem> cur(src_size, 0);
    while (true) {
        out.push_back(cur);
        int pos = static_cast<int>(src_size) - 1;
        while (pos >= 0 && ++cur[pos] == tgt_size) {
            cur[pos] = 0;
            --pos;
        }
        if (pos < 0)
            break;
    }
    if (src_size == 0)
        out.assign(1, {});
    return out;
}

inline bool map_is_hom(const FiniteAlgebra & a, const FiniteAlgebra & b,
    const std::vector<Elem> & map)
{
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

inline std::vector<std::vector<Elem>> brute_force_homs(const FiniteAlgebra & a,
    const FiniteAlgebra & b)
{
    std::vector<std::vector<Elem>> out;
    for (const auto & map : all_maps(static_cast<std::size_t>(a.size()), b.size()))
        if (map_is_hom(a, b, map))
            out.push_back(map);
    return out;
}

// direct preservation check of a map from a structure into the ego's carrier
inline bool map_preserves_structure(const FiniteStructure & x, const std::vector<Elem> & map)
{
    const auto & ego = *x.ego;
    const auto & u = x.universe.elems;
    auto column_in = [&](const Relation & r, const std::vector<std::size_t> & pick) {
        for (int coord = 0; coord < x.exponent; ++coord) {
            Tuple col(r.arity);
            for (int i = 0; i < r.arity; ++i)
                col[i] = u[pick[i]][coord];
            if (! r.contains(col))
                return false;
        }
        return true;
    };
    auto sweep = [&](const Relation & r, auto && body) {
        std::vector<std::size_t> pick(r.arity, 0);
        if (u.empty())
            return true;
        while (true) {
            if (! body(pick))
                return false;
            int pos = r.arity - 1;
            while (pos >= 0 && ++pick[pos] == u.size()) {
                pick[pos] = 0;
                --pos;
            }
            if (pos < 0)
                break;
        }
        return true;
    };
    for (const auto & [name, op] : ego.total_ops) {
        auto graph = graph_of(op);
        bool ok = sweep(graph, [&](const std::vector<std::size_t> & pick) {
            if (! column_in(graph, pick))
                return true;
            Tuple vals(graph.arity);
            for (int i = 0; i < graph.arity; ++i)
                vals[i] = map[pick[i]];
            return graph.contains(vals);
        });
        if (! ok)
            return false;
    }
    for (const auto & [name, op] : ego.partial_ops) {
        auto graph = graph_of(op);
        bool ok = sweep(graph, [&](const std::vector<std::size_t> & pick) {
            if (! column_in(graph, pick))
                return true;
            Tuple vals(graph.arity);
            for (int i = 0; i < graph.arity; ++i)
                vals[i] = map[pick[i]];
            return graph.contains(vals);
        });
        if (! ok)
            return false;
    }
    for (const auto & [name, rel] : ego.relations) {
        bool ok = sweep(rel, [&](const std::vector<std::size_t> & pick) {
            if (! column_in(rel, pick))
                return true;
            Tuple vals(rel.arity);
            for (int i = 0; i < rel.arity; ++i)
                vals[i] = map[pick[i]];
            return rel.contains(vals);
        });
        if (! ok)
            return false;
    }
    return true;
}

inline std::vector<std::vector<Elem>> brute_force_structure_maps(const FiniteStructure & x)
{
    std::vector<std::vector<Elem>> out;
    int m = x.ego->algebra().size();
    for (const auto & map : all_maps(x.size(), m))
        if (map_preserves_structure(x, map))
            out.push_back(map);
    return out;
}

// all k-ary tables over a carrier preserving every relation of R
inline bool table_preserves(int carrier, int k, const std::vector<Elem> & table,
    const Relation & r)
{
    // choose one r-tuple per argument position
    if (r.tuples.empty())
        return k > 0;  // vacuous unless the table is a constant
    std::vector<std::size_t> pick(k, 0);
    while (true) {
        Tuple out_row(r.arity);
        for (int row = 0; row < r.arity; ++row) {
            std::size_t cell = 0;
            for (int j = 0; j < k; ++j)
                cell = cell * carrier + static_cast<std::size_t>(r.tuples[pick[j]][row]);
            out_row[row] = table[cell];
        }
        if (! r.contains(out_row))
            return false;
        if (k == 0)
            break;
        int pos = k - 1;
        while (pos >= 0 && ++pick[pos] == r.tuples.size()) {
            pick[pos] = 0;
            --pos;
        }
        if (pos < 0)
            break;
    }
    return true;
}

inline std::vector<std::vector<Elem>> brute_force_polymorphisms(int carrier, int k,
    const std::vector<Relation> & rels)
{
    std::size_t cells = 1;
    for (int i = 0; i < k; ++i)
        cells *= static_cast<std::size_t>(carrier);
    std::vector<std::vector<Elem>> out;
    for (const auto & table : all_maps(cells, carrier)) {
        bool ok = true;
        for (const auto & r : rels)
            if (! table_preserves(carrier, k, table, r)) {
                ok = false;
                break;
            }
        if (ok)
            out.push_back(table);
    }
    return out;
}

// closure of a seed under the operations, computed destructively
inline std::vector<Elem> brute_force_closure(const FiniteAlgebra & a, std::vector<Elem> seed)
{
    std::vector<char> in(a.size(), 0);
    for (Elem e : seed)
        in[e] = 1;
    bool grew = true;
    while (grew) {
        grew = false;
        for (const auto & f : a.ops()) {
            int k = f.arity();
            std::vector<Elem> members;
            for (Elem e = 0; e < a.size(); ++e)
                if (in[e])
                    members.push_back(e);
            if (k == 0) {
                Elem v = f.apply({});
                if (! in[v]) {
                    in[v] = 1;
                    grew = true;
                }
                continue;
            }
            if (members.empty())
                continue;
            std::vector<std::size_t> pick(k, 0);
            while (true) {
                Tuple args(k);
                for (int i = 0; i < k; ++i)
                    args[i] = members[pick[i]];
                Elem v = f.apply(args);
                if (! in[v]) {
                    in[v] = 1;
                    grew = true;
                }
                int pos = k - 1;
                while (pos >= 0 && ++pick[pos] == members.size()) {
                    pick[pos] = 0;
                    --pos;
                }
                if (pos < 0)
                    break;
            }
        }
    }
    std::vector<Elem> out;
    for (Elem e = 0; e < a.size(); ++e)
        if (in[e])
            out.push_back(e);
    return out;
}

}
