#pragma once

// Text format for algebras, alter egos, relations and check scripts, with a
// recovering parser and position-carrying diagnostics.
//
//   doc       := decl* ;
//   decl      := algebra | ego | relation | check ;
//   algebra   := "algebra" NAME "{" "size" NAT ("labels" LABEL+)? opdef* "}" ;
//   opdef     := "op" NAME "/" NAT "=" "[" NAT+ "]" ;          # row-major, lex arg order
//   ego       := "ego" NAME "over" NAME "{" (opdef|partial|relref)* "}" ;
//   partial   := "partial" NAME "/" NAT "dom" tuples "=" "[" NAT+ "]" ;
//   relref    := "rel" NAME ;
//   relation  := "rel" NAME "/" NAT "on" NAME "=" tuples ;
//   check     := "check" NAME "{" command+ "}" ;
//   command   := NAME (NAME "=" VALUE)* ";" ;
//   tuples    := "{" ("(" NAT ("," NAT)* ")")* "}" ;
//
// Comments run from '#' to end of line. Whitespace is free-form.

#include <dwb/catalog.hpp>

#include <map>

namespace dwb {

struct Span {
    int line = 0;
    int col = 0;
};

struct Diagnostic {
    Span span;
    std::string message;
    std::vector<std::string> expected;  // expected-token hints, when applicable
    Span related;                       // second span, e.g. earlier duplicate
    bool has_related = false;
};

std::string format_diagnostic(const Diagnostic & d);

struct AstOpDef {
    std::string name;
    long arity = 0;
    std::vector<long> table;
    Span span;
};

struct AstPartialDef {
    std::string name;
    long arity = 0;
    std::vector<std::vector<long>> domain;
    std::vector<long> values;
    Span span;
};

struct AstAlgebra {
    std::string name;
    long size = 0;
    std::vector<std::string> labels;
    std::vector<AstOpDef> ops;
    Span span;
};

struct AstEgo {
    std::string name;
    std::string over;
    Span over_span;
    std::vector<AstOpDef> ops;
    std::vector<AstPartialDef> partials;
    std::vector<std::pair<std::string, Span>> relrefs;
    Span span;
};

struct AstRelation {
    std::string name;
    long arity = 0;
    std::string on;
    Span on_span;
    std::vector<std::vector<long>> tuples;
    Span span;
};

struct AstCommand {
    std::string op;
    std::vector<std::pair<std::string, std::string>> args;
    Span span;
};

struct AstCheck {
    std::string name;
    std::vector<AstCommand> commands;
    Span span;
};

struct SpecDocument {
    std::vector<AstAlgebra> algebras;
    std::vector<AstEgo> egos;
    std::vector<AstRelation> relations;
    std::vector<AstCheck> checks;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return diagnostics.empty(); }
};

// Total: never throws, recovers at declaration boundaries.
SpecDocument parse(const std::string & text);

struct NamedRelation {
    std::string name;
    std::string on;
    Relation rel;
};

struct CheckStep {
    std::string op;
    std::map<std::string, std::string> args;
    Span span;
};

struct CheckPlan {
    std::string name;
    std::vector<CheckStep> steps;
};

struct ElaboratedDoc {
    std::vector<std::shared_ptr<const FiniteAlgebra>> algebras;
    std::vector<std::shared_ptr<const AlterEgo>> egos;
    std::vector<NamedRelation> relations;
    std::vector<CheckPlan> checks;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return diagnostics.empty(); }
    std::shared_ptr<const FiniteAlgebra> algebra(const std::string & name) const;
    std::shared_ptr<const AlterEgo> ego(const std::string & name) const;
    const NamedRelation * relation(const std::string & name) const;
};

// Known check-script operations, for command validation.
const std::vector<std::string> & known_check_ops();

// Resolves names against the document first, then the catalog. Ego
// algebraicity is verified unless switched off.
ElaboratedDoc elaborate(const SpecDocument & doc, const Catalog * catalog,
    bool verify_algebraic = true, const SizeBounds & bounds = {});

// Canonical text form; parse of the output elaborates to equal objects.
std::string serialize_algebra(const FiniteAlgebra & a);
std::string serialize_ego(const AlterEgo & e);
std::string serialize_catalog(const Catalog & c);

}
