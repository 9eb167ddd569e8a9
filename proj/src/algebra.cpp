#include <dwb/algebra.hpp>

#include <algorithm>
#include <unordered_set>

namespace dwb {

std::string hex64(std::uint64_t v)
{
    static const char * digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[v & 0xf];
        v >>= 4;
    }
    return out;
}

int Signature::index_of(const std::string & name) const
{
    for (std::size_t i = 0; i < ops.size(); ++i)
        if (ops[i].name == name)
            return static_cast<int>(i);
    return -1;
}

OperationTable::OperationTable(int arity, int carrier, std::vector<Elem> table) :
    arity_(arity),
    carrier_(carrier),
    table_(std::move(table))
{
    std::size_t expected = 1;
    for (int i = 0; i < arity_; ++i)
        expected *= static_cast<std::size_t>(carrier_);
    if (table_.size() != expected)
        throw std::invalid_argument("operation table has wrong length");
    for (Elem v : table_)
        if (v < 0 || v >= carrier_)
            throw std::invalid_argument("operation table value outside carrier");
}

OperationTable OperationTable::constant(int carrier, Elem value)
{
    return OperationTable(0, carrier, {value});
}

OperationTable OperationTable::projection(int arity, int carrier, int coord)
{
    std::size_t total = 1;
    for (int i = 0; i < arity; ++i)
        total *= static_cast<std::size_t>(carrier);
    std::vector<Elem> t(total);
    for (std::size_t ix = 0; ix < total; ++ix) {
        std::size_t rest = ix;
        Elem picked = 0;
        for (int pos = arity - 1; pos >= 0; --pos) {
            Elem digit = static_cast<Elem>(rest % carrier);
            rest /= carrier;
            if (pos == coord)
                picked = digit;
        }
        t[ix] = picked;
    }
    return OperationTable(arity, carrier, std::move(t));
}

Tuple OperationTable::args_of_index(std::size_t ix) const
{
    Tuple args(arity_);
    for (int pos = arity_ - 1; pos >= 0; --pos) {
        args[pos] = static_cast<Elem>(ix % carrier_);
        ix /= carrier_;
    }
    return args;
}

Relation Relation::from_tuples(int arity, std::vector<Tuple> tuples)
{
    for (const auto & t : tuples)
        if (static_cast<int>(t.size()) != arity)
            throw std::invalid_argument("relation tuple has wrong arity");
    std::sort(tuples.begin(), tuples.end());
    tuples.erase(std::unique(tuples.begin(), tuples.end()), tuples.end());
    return Relation{arity, std::move(tuples)};
}

bool Relation::contains(const Tuple & t) const
{
    return std::binary_search(tuples.begin(), tuples.end(), t);
}

FiniteAlgebra::FiniteAlgebra(std::string name, int carrier_size, Signature sig,
    std::vector<OperationTable> interp, std::vector<std::string> labels) :
    name_(std::move(name)),
    size_(carrier_size),
    sig_(std::move(sig)),
    interp_(std::move(interp)),
    labels_(std::move(labels))
{
    if (size_ < 1)
        throw std::invalid_argument("carrier must be nonempty");
    if (sig_.ops.size() != interp_.size())
        throw std::invalid_argument("every symbol needs an interpretation");
    for (std::size_t i = 0; i < interp_.size(); ++i) {
        if (interp_[i].arity() != sig_.ops[i].arity)
            throw std::invalid_argument("interpretation arity mismatch for " + sig_.ops[i].name);
        if (interp_[i].carrier() != size_)
            throw std::invalid_argument("interpretation carrier mismatch for " + sig_.ops[i].name);
    }
    for (std::size_t i = 0; i < sig_.ops.size(); ++i)
        for (std::size_t j = i + 1; j < sig_.ops.size(); ++j)
            if (sig_.ops[i].name == sig_.ops[j].name)
                throw std::invalid_argument("duplicate operation symbol " + sig_.ops[i].name);
    if (labels_.empty()) {
        labels_.reserve(size_);
        for (int e = 0; e < size_; ++e)
            labels_.push_back(std::to_string(e));
    }
    if (static_cast<int>(labels_.size()) != size_)
        throw std::invalid_argument("label table size mismatch");
}

const OperationTable * FiniteAlgebra::op_named(const std::string & name) const
{
    int ix = sig_.index_of(name);
    return ix < 0 ? nullptr : &interp_[ix];
}

Elem FiniteAlgebra::element_by_label(const std::string & l) const
{
    for (int e = 0; e < size_; ++e)
        if (labels_[e] == l)
            return e;
    return -1;
}

TupleSet TupleSet::of(int exponent, std::vector<Tuple> elems)
{
    for (const auto & t : elems)
        if (static_cast<int>(t.size()) != exponent)
            throw std::invalid_argument("tuple width mismatch");
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    return TupleSet{exponent, std::move(elems)};
}

int TupleSet::find(const Tuple & t) const
{
    auto it = std::lower_bound(elems.begin(), elems.end(), t);
    if (it == elems.end() || *it != t)
        return -1;
    return static_cast<int>(it - elems.begin());
}

Tuple power_element(const FiniteAlgebra & m, int k, std::size_t index)
{
    Tuple t(k);
    for (int pos = k - 1; pos >= 0; --pos) {
        t[pos] = static_cast<Elem>(index % m.size());
        index /= m.size();
    }
    return t;
}

std::size_t power_index(const FiniteAlgebra & m, const Tuple & t)
{
    std::size_t ix = 0;
    for (Elem e : t)
        ix = ix * m.size() + static_cast<std::size_t>(e);
    return ix;
}

FiniteAlgebra power(const FiniteAlgebra & m, int k, const SizeBounds & bounds)
{
    if (k < 1)
        throw std::invalid_argument("power exponent must be >= 1");
    std::size_t carrier = 1;
    for (int i = 0; i < k; ++i) {
        carrier *= static_cast<std::size_t>(m.size());
        if (carrier > static_cast<std::size_t>(bounds.max_carrier))
            throw SizeBoundExceeded("power " + m.name() + "^" + std::to_string(k) +
                " exceeds carrier bound " + std::to_string(bounds.max_carrier));
    }
    int n = static_cast<int>(carrier);
    std::vector<OperationTable> interp;
    interp.reserve(m.ops().size());
    for (const auto & f : m.ops()) {
        std::size_t cells = 1;
        for (int i = 0; i < f.arity(); ++i)
            cells *= static_cast<std::size_t>(n);
        std::vector<Elem> table(cells);
        std::vector<Tuple> args(f.arity());
        Tuple argv(f.arity());
        for (std::size_t ix = 0; ix < cells; ++ix) {
            std::size_t rest = ix;
            for (int pos = f.arity() - 1; pos >= 0; --pos) {
                argv[pos] = static_cast<Elem>(rest % n);
                rest /= n;
            }
            for (int pos = 0; pos < f.arity(); ++pos)
                args[pos] = power_element(m, k, static_cast<std::size_t>(argv[pos]));
            Tuple out(k);
            Tuple call(f.arity());
            for (int coord = 0; coord < k; ++coord) {
                for (int pos = 0; pos < f.arity(); ++pos)
                    call[pos] = args[pos][coord];
                out[coord] = f.apply(call);
            }
            table[ix] = static_cast<Elem>(power_index(m, out));
        }
        interp.emplace_back(f.arity(), n, std::move(table));
    }
    return FiniteAlgebra(m.name() + "^" + std::to_string(k), n, m.signature(), std::move(interp));
}

FiniteAlgebra product(const FiniteAlgebra & a, const FiniteAlgebra & b,
    const std::string & name, const SizeBounds & bounds)
{
    if (! (a.signature() == b.signature()))
        throw std::invalid_argument("product factors must share a signature");
    std::size_t carrier = static_cast<std::size_t>(a.size()) * b.size();
    if (carrier > static_cast<std::size_t>(bounds.max_carrier))
        throw SizeBoundExceeded("product exceeds carrier bound");
    int n = static_cast<int>(carrier);
    auto encode = [&](Elem x, Elem y) { return x * b.size() + y; };
    std::vector<OperationTable> interp;
    for (std::size_t fi = 0; fi < a.ops().size(); ++fi) {
        const auto & fa = a.op(static_cast<int>(fi));
        const auto & fb = b.op(static_cast<int>(fi));
        std::size_t cells = 1;
        for (int i = 0; i < fa.arity(); ++i)
            cells *= static_cast<std::size_t>(n);
        std::vector<Elem> table(cells);
        Tuple argsA(fa.arity()), argsB(fa.arity()), argv(fa.arity());
        for (std::size_t ix = 0; ix < cells; ++ix) {
            std::size_t rest = ix;
            for (int pos = fa.arity() - 1; pos >= 0; --pos) {
                argv[pos] = static_cast<Elem>(rest % n);
                rest /= n;
            }
            for (int pos = 0; pos < fa.arity(); ++pos) {
                argsA[pos] = argv[pos] / b.size();
                argsB[pos] = argv[pos] % b.size();
            }
            table[ix] = encode(fa.apply(argsA), fb.apply(argsB));
        }
        interp.emplace_back(fa.arity(), n, std::move(table));
    }
    std::vector<std::string> labels;
    labels.reserve(carrier);
    for (int x = 0; x < a.size(); ++x)
        for (int y = 0; y < b.size(); ++y)
            labels.push_back(a.label(x) + b.label(y));
    return FiniteAlgebra(name, n, a.signature(), std::move(interp), std::move(labels));
}

std::vector<Elem> subuniverse_generate(const FiniteAlgebra & a, std::span<const Elem> seed)
{
    std::vector<char> in(a.size(), 0);
    std::vector<Elem> out;
    auto add = [&](Elem e) {
        if (! in[e]) {
            in[e] = 1;
            out.push_back(e);
        }
    };
    for (Elem e : seed) {
        if (e < 0 || e >= a.size())
            throw std::invalid_argument("seed element outside carrier");
        add(e);
    }
    bool grew = true;
    while (grew) {
        grew = false;
        for (const auto & f : a.ops()) {
            int k = f.arity();
            std::size_t before = out.size();
            if (k == 0) {
                add(f.apply({}));
            }
            else {
                // enumerate k-tuples over the current set
                std::vector<std::size_t> pick(k, 0);
                if (out.empty())
                    continue;
                while (true) {
                    Tuple args(k);
                    for (int i = 0; i < k; ++i)
                        args[i] = out[pick[i]];
                    add(f.apply(args));
                    int pos = k - 1;
                    while (pos >= 0 && ++pick[pos] == before) {
                        pick[pos] = 0;
                        --pos;
                    }
                    if (pos < 0)
                        break;
                }
            }
            if (out.size() != before)
                grew = true;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

TupleSet generate_in_power(const FiniteAlgebra & m, int exponent,
    std::span<const Tuple> seed, const SizeBounds & bounds)
{
    std::unordered_set<Tuple, TupleHash> seen;
    std::vector<Tuple> elems;
    auto add = [&](const Tuple & t) {
        if (seen.insert(t).second) {
            elems.push_back(t);
            if (elems.size() > static_cast<std::size_t>(bounds.max_carrier))
                throw SizeBoundExceeded("generated subalgebra exceeds carrier bound " +
                    std::to_string(bounds.max_carrier));
        }
    };
    for (const auto & t : seed) {
        if (static_cast<int>(t.size()) != exponent)
            throw std::invalid_argument("generator width mismatch");
        add(t);
    }
    bool grew = true;
    while (grew) {
        grew = false;
        for (const auto & f : m.ops()) {
            int k = f.arity();
            std::size_t before = elems.size();
            if (k == 0) {
                add(Tuple(exponent, f.apply({})));
            }
            else if (! elems.empty()) {
                std::vector<std::size_t> pick(k, 0);
                while (true) {
                    Tuple out(exponent);
                    Tuple call(k);
                    for (int coord = 0; coord < exponent; ++coord) {
                        for (int i = 0; i < k; ++i)
                            call[i] = elems[pick[i]][coord];
                        out[coord] = f.apply(call);
                    }
                    add(out);
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
    }
    return TupleSet::of(exponent, std::move(elems));
}

ClosureCheck check_subuniverse(const FiniteAlgebra & m, const TupleSet & ts)
{
    for (const auto & f : m.ops()) {
        int k = f.arity();
        if (k == 0) {
            Tuple c(ts.exponent, f.apply({}));
            if (ts.find(c) < 0)
                return {false, "", std::move(c)};
        }
        else if (! ts.elems.empty()) {
            std::vector<std::size_t> pick(k, 0);
            while (true) {
                Tuple out(ts.exponent);
                Tuple call(k);
                for (int coord = 0; coord < ts.exponent; ++coord) {
                    for (int i = 0; i < k; ++i)
                        call[i] = ts.elems[pick[i]][coord];
                    out[coord] = f.apply(call);
                }
                if (ts.find(out) < 0)
                    return {false, "", std::move(out)};
                int pos = k - 1;
                while (pos >= 0 && ++pick[pos] == ts.elems.size()) {
                    pick[pos] = 0;
                    --pos;
                }
                if (pos < 0)
                    break;
            }
        }
    }
    return {};
}

namespace {
    // fills in the violating operation name for check_subuniverse results
    ClosureCheck check_subuniverse_named(const FiniteAlgebra & m, const TupleSet & ts)
    {
        for (std::size_t fi = 0; fi < m.ops().size(); ++fi) {
            const auto & f = m.op(static_cast<int>(fi));
            FiniteAlgebra probe("probe", m.size(), Signature{{m.signature().ops[fi]}}, {f});
            auto r = check_subuniverse(probe, ts);
            if (! r.closed) {
                r.violating_op = m.signature().ops[fi].name;
                return r;
            }
        }
        return {};
    }
}

FiniteAlgebra algebra_on_tuples(const FiniteAlgebra & m, const TupleSet & ts,
    const std::string & name, const SizeBounds & bounds)
{
    if (ts.elems.empty())
        throw std::invalid_argument("algebra needs a nonempty tuple set");
    if (ts.elems.size() > static_cast<std::size_t>(bounds.max_carrier))
        throw SizeBoundExceeded("tuple-set algebra exceeds carrier bound");
    int n = static_cast<int>(ts.elems.size());
    std::vector<OperationTable> interp;
    for (std::size_t fi = 0; fi < m.ops().size(); ++fi) {
        const auto & f = m.op(static_cast<int>(fi));
        int k = f.arity();
        std::size_t cells = 1;
        for (int i = 0; i < k; ++i)
            cells *= static_cast<std::size_t>(n);
        std::vector<Elem> table(cells);
        Tuple argv(k), call(k);
        for (std::size_t ix = 0; ix < cells; ++ix) {
            std::size_t rest = ix;
            for (int pos = k - 1; pos >= 0; --pos) {
                argv[pos] = static_cast<Elem>(rest % n);
                rest /= n;
            }
            Tuple out(ts.exponent);
            for (int coord = 0; coord < ts.exponent; ++coord) {
                for (int i = 0; i < k; ++i)
                    call[i] = ts.elems[argv[i]][coord];
                out[coord] = f.apply(call);
            }
            int where = ts.find(out);
            if (where < 0) {
                auto named = check_subuniverse_named(m, ts);
                throw NotAlgebraic("tuple set for " + name + " is not closed under " +
                    (named.violating_op.empty() ? m.signature().ops[fi].name : named.violating_op));
            }
            table[ix] = where;
        }
        interp.emplace_back(k, n, std::move(table));
    }
    return FiniteAlgebra(name, n, m.signature(), std::move(interp));
}

std::optional<std::pair<int, int>> lattice_reduct(const FiniteAlgebra & m)
{
    int n = m.size();
    auto is_semilattice = [&](const OperationTable & f) {
        if (f.arity() != 2)
            return false;
        for (Elem x = 0; x < n; ++x)
            for (Elem y = 0; y < n; ++y) {
                if (f.apply(std::array{x, y}) != f.apply(std::array{y, x}))
                    return false;
                if (f.apply(std::array{x, x}) != x)
                    return false;
                for (Elem z = 0; z < n; ++z) {
                    Elem xy = f.apply(std::array{x, y});
                    Elem yz = f.apply(std::array{y, z});
                    if (f.apply(std::array{xy, z}) != f.apply(std::array{x, yz}))
                        return false;
                }
            }
        return true;
    };
    for (std::size_t i = 0; i < m.ops().size(); ++i) {
        if (! is_semilattice(m.op(static_cast<int>(i))))
            continue;
        for (std::size_t j = 0; j < m.ops().size(); ++j) {
            if (i == j || ! is_semilattice(m.op(static_cast<int>(j))))
                continue;
            const auto & join = m.op(static_cast<int>(i));
            const auto & meet = m.op(static_cast<int>(j));
            bool absorb = true;
            for (Elem x = 0; x < n && absorb; ++x)
                for (Elem y = 0; y < n && absorb; ++y) {
                    if (join.apply(std::array{x, meet.apply(std::array{x, y})}) != x)
                        absorb = false;
                    if (meet.apply(std::array{x, join.apply(std::array{x, y})}) != x)
                        absorb = false;
                }
            if (absorb)
                return std::make_pair(static_cast<int>(i), static_cast<int>(j));
        }
    }
    return std::nullopt;
}

}
