#include <dwb/speclang.hpp>

#include <algorithm>
#include <cctype>
#include <sstream>

namespace dwb {

std::string format_diagnostic(const Diagnostic & d)
{
    std::ostringstream out;
    out << d.span.line << ":" << d.span.col << ": " << d.message;
    if (! d.expected.empty()) {
        out << " (expected ";
        for (std::size_t i = 0; i < d.expected.size(); ++i)
            out << (i ? ", " : "") << d.expected[i];
        out << ")";
    }
    if (d.has_related)
        out << "; see " << d.related.line << ":" << d.related.col;
    return out.str();
}

namespace {

    enum class Tok {
        ident, nat, lbrace, rbrace, lbracket, rbracket, lparen, rparen,
        comma, slash, equals, semicolon, end, bad
    };

    const char * tok_name(Tok t)
    {
        switch (t) {
        case Tok::ident: return "name";
        case Tok::nat: return "number";
        case Tok::lbrace: return "'{'";
        case Tok::rbrace: return "'}'";
        case Tok::lbracket: return "'['";
        case Tok::rbracket: return "']'";
        case Tok::lparen: return "'('";
        case Tok::rparen: return "')'";
        case Tok::comma: return "','";
        case Tok::slash: return "'/'";
        case Tok::equals: return "'='";
        case Tok::semicolon: return "';'";
        case Tok::end: return "end of file";
        case Tok::bad: return "invalid character";
        }
        return "?";
    }

    struct Token {
        Tok kind = Tok::end;
        std::string text;
        long value = 0;
        Span span;
    };

    std::vector<Token> lex(const std::string & text)
    {
        std::vector<Token> out;
        int line = 1, col = 1;
        std::size_t i = 0;
        auto push = [&](Tok k, std::string t, long v, Span s) {
            out.push_back({k, std::move(t), v, s});
        };
        while (i < text.size()) {
            char c = text[i];
            if (c == '\n') {
                ++line;
                col = 1;
                ++i;
                continue;
            }
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++col;
                ++i;
                continue;
            }
            if (c == '#') {
                while (i < text.size() && text[i] != '\n')
                    ++i;
                continue;
            }
            Span here{line, col};
            auto single = [&](Tok k) {
                push(k, std::string(1, c), 0, here);
                ++i;
                ++col;
            };
            switch (c) {
            case '{': single(Tok::lbrace); continue;
            case '}': single(Tok::rbrace); continue;
            case '[': single(Tok::lbracket); continue;
            case ']': single(Tok::rbracket); continue;
            case '(': single(Tok::lparen); continue;
            case ')': single(Tok::rparen); continue;
            case ',': single(Tok::comma); continue;
            case '/': single(Tok::slash); continue;
            case '=': single(Tok::equals); continue;
            case ';': single(Tok::semicolon); continue;
            default: break;
            }
            if (std::isdigit(static_cast<unsigned char>(c))) {
                std::string t;
                while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                    t += text[i];
                    ++i;
                    ++col;
                }
                push(Tok::nat, t, std::stol(t), here);
                continue;
            }
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::string t;
                while (i < text.size() &&
                    (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_' ||
                        text[i] == '-')) {
                    t += text[i];
                    ++i;
                    ++col;
                }
                push(Tok::ident, t, 0, here);
                continue;
            }
            push(Tok::bad, std::string(1, c), 0, here);
            ++i;
            ++col;
        }
        out.push_back({Tok::end, "", 0, {line, col}});
        return out;
    }

    struct Parser {
        const std::vector<Token> & toks;
        std::size_t pos = 0;
        SpecDocument & doc;

        const Token & peek() const { return toks[pos]; }
        const Token & get() { return toks[pos + 1 < toks.size() ? pos++ : pos]; }

        bool at_keyword(const char * kw) const
        {
            return peek().kind == Tok::ident && peek().text == kw;
        }

        void error(const std::string & message, std::vector<std::string> expected = {})
        {
            doc.diagnostics.push_back({peek().span, message, std::move(expected), {}, false});
        }

        // skip to the next top-level declaration keyword
        void recover()
        {
            int depth = 0;
            while (peek().kind != Tok::end) {
                if (peek().kind == Tok::lbrace)
                    ++depth;
                if (peek().kind == Tok::rbrace && depth > 0)
                    --depth;
                else if (depth == 0 && peek().kind == Tok::ident &&
                    (peek().text == "algebra" || peek().text == "ego" ||
                        peek().text == "rel" || peek().text == "check"))
                    return;
                get();
            }
        }

        bool expect(Tok kind, const char * what)
        {
            if (peek().kind == kind)
                return true;
            error(std::string("found ") + tok_name(peek().kind) +
                (peek().text.empty() ? "" : " '" + peek().text + "'"), {what});
            return false;
        }

        std::optional<std::string> name(const char * what)
        {
            if (! expect(Tok::ident, what))
                return std::nullopt;
            return get().text;
        }

        std::optional<long> nat(const char * what)
        {
            if (! expect(Tok::nat, what))
                return std::nullopt;
            return get().value;
        }

        bool punct(Tok kind, const char * what)
        {
            if (! expect(kind, what))
                return false;
            get();
            return true;
        }

        std::optional<std::vector<long>> table()
        {
            if (! punct(Tok::lbracket, "'['"))
                return std::nullopt;
            std::vector<long> out;
            while (peek().kind == Tok::nat)
                out.push_back(get().value);
            if (! punct(Tok::rbracket, "']'"))
                return std::nullopt;
            return out;
        }

        std::optional<std::vector<std::vector<long>>> tuples()
        {
            if (! punct(Tok::lbrace, "'{'"))
                return std::nullopt;
            std::vector<std::vector<long>> out;
            while (peek().kind == Tok::lparen) {
                get();
                std::vector<long> t;
                if (auto v = nat("number"))
                    t.push_back(*v);
                else
                    return std::nullopt;
                while (peek().kind == Tok::comma) {
                    get();
                    if (auto v = nat("number"))
                        t.push_back(*v);
                    else
                        return std::nullopt;
                }
                if (! punct(Tok::rparen, "')'"))
                    return std::nullopt;
                out.push_back(std::move(t));
                if (peek().kind == Tok::comma)
                    get();
            }
            if (! punct(Tok::rbrace, "'}'"))
                return std::nullopt;
            return out;
        }

        std::optional<AstOpDef> opdef()
        {
            AstOpDef op;
            op.span = peek().span;
            get();  // "op"
            if (auto n = name("operation name"))
                op.name = *n;
            else
                return std::nullopt;
            if (! punct(Tok::slash, "'/'"))
                return std::nullopt;
            if (auto a = nat("arity"))
                op.arity = *a;
            else
                return std::nullopt;
            if (! punct(Tok::equals, "'='"))
                return std::nullopt;
            if (auto t = table())
                op.table = *t;
            else
                return std::nullopt;
            return op;
        }

        std::optional<AstPartialDef> partialdef()
        {
            AstPartialDef op;
            op.span = peek().span;
            get();  // "partial"
            if (auto n = name("partial operation name"))
                op.name = *n;
            else
                return std::nullopt;
            if (! punct(Tok::slash, "'/'"))
                return std::nullopt;
            if (auto a = nat("arity"))
                op.arity = *a;
            else
                return std::nullopt;
            if (! at_keyword("dom")) {
                error("found " + std::string(tok_name(peek().kind)), {"'dom'"});
                return std::nullopt;
            }
            get();
            if (auto d = tuples())
                op.domain = *d;
            else
                return std::nullopt;
            if (! punct(Tok::equals, "'='"))
                return std::nullopt;
            if (auto t = table())
                op.values = *t;
            else
                return std::nullopt;
            return op;
        }

        void algebra()
        {
            AstAlgebra a;
            a.span = peek().span;
            get();  // "algebra"
            if (auto n = name("algebra name"))
                a.name = *n;
            else
                return recover();
            if (! punct(Tok::lbrace, "'{'"))
                return recover();
            if (! at_keyword("size")) {
                error("algebra body must start with its size", {"'size'"});
                return recover();
            }
            get();
            if (auto s = nat("carrier size"))
                a.size = *s;
            else
                return recover();
            if (at_keyword("labels")) {
                get();
                while (peek().kind == Tok::ident || peek().kind == Tok::nat) {
                    if (at_keyword("op"))
                        break;
                    a.labels.push_back(get().text);
                }
            }
            while (at_keyword("op")) {
                if (auto op = opdef())
                    a.ops.push_back(std::move(*op));
                else
                    return recover();
            }
            if (! punct(Tok::rbrace, "'}'"))
                return recover();
            doc.algebras.push_back(std::move(a));
        }

        void ego()
        {
            AstEgo e;
            e.span = peek().span;
            get();  // "ego"
            if (auto n = name("ego name"))
                e.name = *n;
            else
                return recover();
            if (! at_keyword("over")) {
                error("found " + std::string(tok_name(peek().kind)), {"'over'"});
                return recover();
            }
            get();
            e.over_span = peek().span;
            if (auto n = name("algebra name"))
                e.over = *n;
            else
                return recover();
            if (! punct(Tok::lbrace, "'{'"))
                return recover();
            while (true) {
                if (at_keyword("op")) {
                    if (auto op = opdef())
                        e.ops.push_back(std::move(*op));
                    else
                        return recover();
                }
                else if (at_keyword("partial")) {
                    if (auto op = partialdef())
                        e.partials.push_back(std::move(*op));
                    else
                        return recover();
                }
                else if (at_keyword("rel")) {
                    get();
                    Span s = peek().span;
                    if (auto n = name("relation name"))
                        e.relrefs.emplace_back(*n, s);
                    else
                        return recover();
                }
                else
                    break;
            }
            if (! punct(Tok::rbrace, "'}'"))
                return recover();
            doc.egos.push_back(std::move(e));
        }

        void relation()
        {
            AstRelation r;
            r.span = peek().span;
            get();  // "rel"
            if (auto n = name("relation name"))
                r.name = *n;
            else
                return recover();
            if (! punct(Tok::slash, "'/'"))
                return recover();
            if (auto a = nat("arity"))
                r.arity = *a;
            else
                return recover();
            if (! at_keyword("on")) {
                error("found " + std::string(tok_name(peek().kind)), {"'on'"});
                return recover();
            }
            get();
            r.on_span = peek().span;
            if (auto n = name("algebra name"))
                r.on = *n;
            else
                return recover();
            if (! punct(Tok::equals, "'='"))
                return recover();
            if (auto t = tuples())
                r.tuples = *t;
            else
                return recover();
            doc.relations.push_back(std::move(r));
        }

        void check()
        {
            AstCheck c;
            c.span = peek().span;
            get();  // "check"
            if (auto n = name("check name"))
                c.name = *n;
            else
                return recover();
            if (! punct(Tok::lbrace, "'{'"))
                return recover();
            while (peek().kind == Tok::ident) {
                AstCommand cmd;
                cmd.span = peek().span;
                cmd.op = get().text;
                while (peek().kind == Tok::ident) {
                    std::string key = get().text;
                    if (! punct(Tok::equals, "'='"))
                        return recover();
                    if (peek().kind == Tok::ident || peek().kind == Tok::nat)
                        cmd.args.emplace_back(key, get().text);
                    else {
                        error("found " + std::string(tok_name(peek().kind)),
                            {"argument value"});
                        return recover();
                    }
                }
                if (! punct(Tok::semicolon, "';'"))
                    return recover();
                c.commands.push_back(std::move(cmd));
            }
            if (! punct(Tok::rbrace, "'}'"))
                return recover();
            doc.checks.push_back(std::move(c));
        }

        void run()
        {
            while (peek().kind != Tok::end) {
                if (at_keyword("algebra"))
                    algebra();
                else if (at_keyword("ego"))
                    ego();
                else if (at_keyword("rel"))
                    relation();
                else if (at_keyword("check"))
                    check();
                else {
                    error("found " + std::string(tok_name(peek().kind)) +
                        (peek().text.empty() ? "" : " '" + peek().text + "'"),
                        {"'algebra'", "'ego'", "'rel'", "'check'"});
                    get();
                    recover();
                }
            }
        }
    };

}

SpecDocument parse(const std::string & text)
{
    SpecDocument doc;
    auto toks = lex(text);
    Parser parser{toks, 0, doc};
    parser.run();
    std::stable_sort(doc.diagnostics.begin(), doc.diagnostics.end(),
        [](const Diagnostic & a, const Diagnostic & b) {
            return a.span.line != b.span.line ? a.span.line < b.span.line
                                              : a.span.col < b.span.col;
        });
    return doc;
}

std::shared_ptr<const FiniteAlgebra> ElaboratedDoc::algebra(const std::string & name) const
{
    for (const auto & a : algebras)
        if (a->name() == name)
            return a;
    return nullptr;
}

std::shared_ptr<const AlterEgo> ElaboratedDoc::ego(const std::string & name) const
{
    for (const auto & e : egos)
        if (e->name == name)
            return e;
    return nullptr;
}

const NamedRelation * ElaboratedDoc::relation(const std::string & name) const
{
    for (const auto & r : relations)
        if (r.name == name)
            return &r;
    return nullptr;
}

const std::vector<std::string> & known_check_ops()
{
    static const std::vector<std::string> ops = {
        "duality", "fullness", "entails", "clone-entails", "endoprimal",
        "free-algebra", "injectivity-sweep", "manifest",
    };
    return ops;
}

namespace {

    struct Elaborator {
        const SpecDocument & doc;
        const Catalog * catalog;
        bool verify_algebraic;
        const SizeBounds & bounds;
        ElaboratedDoc out;

        void diag(Span span, std::string message)
        {
            out.diagnostics.push_back({span, std::move(message), {}, {}, false});
        }

        void diag_dup(Span span, std::string message, Span earlier)
        {
            out.diagnostics.push_back({span, std::move(message), {}, earlier, true});
        }

        std::shared_ptr<const FiniteAlgebra> find_algebra(const std::string & name)
        {
            if (auto a = out.algebra(name))
                return a;
            if (catalog)
                if (const auto * e = catalog->find(name); e && e->algebra)
                    return e->algebra;
            return nullptr;
        }

        std::optional<OperationTable> build_op(const AstOpDef & op, long size)
        {
            std::size_t expected = 1;
            for (long i = 0; i < op.arity; ++i)
                expected *= static_cast<std::size_t>(size);
            if (op.table.size() != expected) {
                diag(op.span, "operation " + op.name + "/" + std::to_string(op.arity) +
                    " needs " + std::to_string(expected) + " values, found " +
                    std::to_string(op.table.size()));
                return std::nullopt;
            }
            std::vector<Elem> t;
            for (long v : op.table) {
                if (v < 0 || v >= size) {
                    diag(op.span, "value " + std::to_string(v) + " exceeds carrier " +
                        std::to_string(size));
                    return std::nullopt;
                }
                t.push_back(static_cast<Elem>(v));
            }
            return OperationTable(static_cast<int>(op.arity), static_cast<int>(size),
                std::move(t));
        }

        void run()
        {
            // duplicate names per kind
            auto check_dups = [&](auto & items, auto name_of, const char * kind) {
                for (std::size_t i = 0; i < items.size(); ++i)
                    for (std::size_t j = i + 1; j < items.size(); ++j)
                        if (name_of(items[i]) == name_of(items[j]))
                            diag_dup(items[j].span, std::string("duplicate ") + kind +
                                " name " + name_of(items[j]), items[i].span);
            };
            check_dups(doc.algebras, [](const AstAlgebra & a) { return a.name; }, "algebra");
            check_dups(doc.egos, [](const AstEgo & e) { return e.name; }, "ego");
            check_dups(doc.relations, [](const AstRelation & r) { return r.name; }, "relation");
            check_dups(doc.checks, [](const AstCheck & c) { return c.name; }, "check");

            for (const auto & a : doc.algebras) {
                if (a.size < 1) {
                    diag(a.span, "algebra " + a.name + " needs a carrier of size at least 1");
                    continue;
                }
                if (! a.labels.empty() && static_cast<long>(a.labels.size()) != a.size) {
                    diag(a.span, "algebra " + a.name + " declares " +
                        std::to_string(a.labels.size()) + " labels for carrier " +
                        std::to_string(a.size));
                    continue;
                }
                Signature sig;
                std::vector<OperationTable> interp;
                bool ok = true;
                for (const auto & op : a.ops) {
                    if (auto t = build_op(op, a.size)) {
                        sig.ops.push_back({op.name, static_cast<int>(op.arity)});
                        interp.push_back(std::move(*t));
                    }
                    else
                        ok = false;
                }
                if (! ok)
                    continue;
                try {
                    out.algebras.push_back(std::make_shared<FiniteAlgebra>(
                        a.name, static_cast<int>(a.size), sig, interp, a.labels));
                }
                catch (const std::exception & e) {
                    diag(a.span, e.what());
                }
            }

            for (const auto & r : doc.relations) {
                auto on = find_algebra(r.on);
                if (! on) {
                    diag(r.on_span, "relation " + r.name + " refers to undefined algebra " + r.on);
                    continue;
                }
                std::vector<Tuple> tuples;
                bool ok = true;
                for (const auto & t : r.tuples) {
                    if (static_cast<long>(t.size()) != r.arity) {
                        diag(r.span, "tuple of width " + std::to_string(t.size()) +
                            " in relation " + r.name + "/" + std::to_string(r.arity));
                        ok = false;
                        break;
                    }
                    Tuple tt;
                    for (long v : t) {
                        if (v < 0 || v >= on->size()) {
                            diag(r.span, "value " + std::to_string(v) + " exceeds carrier " +
                                std::to_string(on->size()));
                            ok = false;
                        }
                        tt.push_back(static_cast<Elem>(v));
                    }
                    tuples.push_back(std::move(tt));
                }
                if (ok)
                    out.relations.push_back({r.name, r.on,
                        Relation::from_tuples(static_cast<int>(r.arity), std::move(tuples))});
            }

            for (const auto & e : doc.egos) {
                auto over = find_algebra(e.over);
                if (! over) {
                    diag(e.over_span, "ego " + e.name + " refers to undefined algebra " + e.over);
                    continue;
                }
                AlterEgo ego;
                ego.name = e.name;
                ego.over = over;
                bool ok = true;
                for (const auto & op : e.ops) {
                    if (auto t = build_op(op, over->size()))
                        ego.total_ops.emplace_back(op.name, std::move(*t));
                    else
                        ok = false;
                }
                for (const auto & op : e.partials) {
                    if (op.domain.size() != op.values.size()) {
                        diag(op.span, "partial " + op.name + " has " +
                            std::to_string(op.domain.size()) + " domain tuples but " +
                            std::to_string(op.values.size()) + " values");
                        ok = false;
                        continue;
                    }
                    std::vector<Tuple> dom;
                    std::vector<Elem> vals;
                    bool op_ok = true;
                    for (const auto & t : op.domain) {
                        if (static_cast<long>(t.size()) != op.arity) {
                            diag(op.span, "domain tuple of width " + std::to_string(t.size()) +
                                " in partial " + op.name + "/" + std::to_string(op.arity));
                            op_ok = false;
                            break;
                        }
                        Tuple tt;
                        for (long v : t) {
                            if (v < 0 || v >= over->size()) {
                                diag(op.span, "value " + std::to_string(v) +
                                    " exceeds carrier " + std::to_string(over->size()));
                                op_ok = false;
                            }
                            tt.push_back(static_cast<Elem>(v));
                        }
                        dom.push_back(std::move(tt));
                    }
                    for (long v : op.values) {
                        if (v < 0 || v >= over->size()) {
                            diag(op.span, "value " + std::to_string(v) + " exceeds carrier " +
                                std::to_string(over->size()));
                            op_ok = false;
                        }
                        vals.push_back(static_cast<Elem>(v));
                    }
                    if (! op_ok) {
                        ok = false;
                        continue;
                    }
                    try {
                        ego.partial_ops.emplace_back(op.name,
                            PartialOperationTable(static_cast<int>(op.arity), over->size(),
                                std::move(dom), std::move(vals)));
                    }
                    catch (const std::exception & ex) {
                        diag(op.span, ex.what());
                        ok = false;
                    }
                }
                for (const auto & [name, span] : e.relrefs) {
                    const auto * named = out.relation(name);
                    if (! named) {
                        diag(span, "ego " + e.name + " refers to undefined relation " + name);
                        ok = false;
                        continue;
                    }
                    if (named->on != e.over) {
                        diag(span, "relation " + name + " is over " + named->on +
                            ", not " + e.over);
                        ok = false;
                        continue;
                    }
                    ego.relations.emplace_back(name, named->rel);
                }
                if (! ok)
                    continue;
                if (verify_algebraic) {
                    auto report = is_algebraic_over(ego);
                    if (! report.algebraic) {
                        for (const auto & item : report.items)
                            if (! item.algebraic)
                                diag(e.span, "ego " + e.name + ": " + item.kind + " " +
                                    item.name + " is not algebraic (violates " +
                                    item.violating_op + ")");
                        continue;
                    }
                }
                out.egos.push_back(std::make_shared<AlterEgo>(std::move(ego)));
            }

            for (const auto & c : doc.checks) {
                CheckPlan plan;
                plan.name = c.name;
                bool ok = true;
                for (const auto & cmd : c.commands) {
                    const auto & ops = known_check_ops();
                    if (std::find(ops.begin(), ops.end(), cmd.op) == ops.end()) {
                        diag(cmd.span, "unknown check operation " + cmd.op);
                        ok = false;
                        continue;
                    }
                    CheckStep step;
                    step.op = cmd.op;
                    step.span = cmd.span;
                    for (const auto & [k, v] : cmd.args)
                        step.args[k] = v;
                    plan.steps.push_back(std::move(step));
                }
                if (ok)
                    out.checks.push_back(std::move(plan));
            }

            std::stable_sort(out.diagnostics.begin(), out.diagnostics.end(),
                [](const Diagnostic & a, const Diagnostic & b) {
                    return a.span.line != b.span.line ? a.span.line < b.span.line
                                                      : a.span.col < b.span.col;
                });
        }
    };

}

ElaboratedDoc elaborate(const SpecDocument & doc, const Catalog * catalog,
    bool verify_algebraic, const SizeBounds & bounds)
{
    Elaborator el{doc, catalog, verify_algebraic, bounds, {}};
    el.run();
    return std::move(el.out);
}

namespace {

    bool plain_label(const std::string & s)
    {
        if (s.empty())
            return false;
        for (char c : s)
            if (! (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-'))
                return false;
        return true;
    }

    void write_table(std::ostream & os, const std::vector<Elem> & t)
    {
        os << "[";
        for (std::size_t i = 0; i < t.size(); ++i)
            os << (i ? " " : "") << t[i];
        os << "]";
    }

    void write_tuples(std::ostream & os, const std::vector<Tuple> & ts)
    {
        os << "{";
        for (std::size_t i = 0; i < ts.size(); ++i) {
            os << (i ? " (" : "(");
            for (std::size_t j = 0; j < ts[i].size(); ++j)
                os << (j ? "," : "") << ts[i][j];
            os << ")";
        }
        os << "}";
    }

}

std::string serialize_algebra(const FiniteAlgebra & a)
{
    std::ostringstream os;
    os << "algebra " << a.name() << " {\n  size " << a.size() << "\n";
    bool default_labels = true;
    for (int e = 0; e < a.size(); ++e)
        if (a.label(e) != std::to_string(e))
            default_labels = false;
    if (! default_labels) {
        os << "  labels";
        for (int e = 0; e < a.size(); ++e)
            os << " " << (plain_label(a.label(e)) ? a.label(e) : std::to_string(e));
        os << "\n";
    }
    for (std::size_t i = 0; i < a.ops().size(); ++i) {
        os << "  op " << a.signature().ops[i].name << "/" << a.signature().ops[i].arity << " = ";
        write_table(os, a.op(static_cast<int>(i)).table());
        os << "\n";
    }
    os << "}\n";
    return os.str();
}

std::string serialize_ego(const AlterEgo & e)
{
    std::ostringstream os;
    for (const auto & [name, rel] : e.relations) {
        os << "rel " << name << "/" << rel.arity << " on " << e.over->name() << " = ";
        write_tuples(os, rel.tuples);
        os << "\n";
    }
    os << "ego " << e.name << " over " << e.over->name() << " {\n";
    for (const auto & [name, op] : e.total_ops) {
        os << "  op " << name << "/" << op.arity() << " = ";
        write_table(os, op.table());
        os << "\n";
    }
    for (const auto & [name, op] : e.partial_ops) {
        os << "  partial " << name << "/" << op.arity() << " dom ";
        write_tuples(os, op.domain());
        os << " = ";
        write_table(os, op.values());
        os << "\n";
    }
    for (const auto & [name, rel] : e.relations)
        os << "  rel " << name << "\n";
    os << "}\n";
    return os.str();
}

std::string serialize_catalog(const Catalog & c)
{
    std::ostringstream os;
    os << "# workbench catalog, canonical text form\n";
    for (const auto & entry : c.entries)
        if (entry.algebra)
            os << "\n" << serialize_algebra(*entry.algebra);
    for (const auto & entry : c.entries)
        if (entry.ego)
            os << "\n" << serialize_ego(*entry.ego);
    return os.str();
}

}
