#pragma once

// Entailment of algebraic relations from an alter ego's structure: the
// single-test-algebra decision, primitive positive certificates, clone
// entailment, projection classification and the retraction decomposition.

#include <dwb/duality.hpp>
#include <dwb/structures.hpp>

namespace dwb {

// The dual of the relation-as-algebra with its coordinate labelling.
// Coordinates sharing one projection homomorphism alias the same position.
struct LabelledDual {
    FiniteStructure dual;          // D(s) inside ego^|s|
    std::vector<int> rho;          // position of the i-th coordinate projection
    std::vector<int> tau;          // remaining positions, ascending
};
LabelledDual dual_of_relation(const AlterEgo & ego, const Relation & s,
    const SizeBounds & bounds = {});

struct EntailmentVerdict {
    bool holds = true;
    // on failure: a structure-preserving map u with its escaping value tuple
    HomMap witness;
    Tuple escaped;
    // set when the ego's structure already yields a duality on s
    bool on_duality = false;
    std::size_t map_count = 0;
};

// Does the ego's structure entail s? Decided by one check on D(s):
// every structure-preserving map u must send the coordinate projections
// back into s.
EntailmentVerdict entails(const AlterEgo & ego, const Relation & s,
    const SizeBounds & bounds = {});

struct PPAtom {
    enum class Kind { relation, operation, partial, equal };
    Kind kind = Kind::relation;
    std::string symbol;
    std::vector<int> vars;
};

struct PPFormula {
    int num_vars = 0;
    std::vector<int> free_vars;   // variable index per free position
    std::vector<PPAtom> atoms;
    std::vector<std::string> var_names;
};

// Conjunctive-query evaluation of the formula in the ego's carrier algebra,
// by backtracking over all variables; returns the free-variable projection.
Relation pp_evaluate(const PPFormula & f, const AlterEgo & ego, const SizeBounds & bounds = {});

// Certificate for a positive entailment: the primitive positive type of the
// coordinate projections in D(s). Validated by evaluation; a mismatch is an
// engine bug and aborts.
PPFormula pp_certificate(const AlterEgo & ego, const Relation & s,
    const SizeBounds & bounds = {});

struct CloneEntailmentVerdict {
    bool holds = true;
    std::vector<Elem> violator;  // flat |s|-ary table on failure
    Tuple escaped;
};

// Clone entailment over a bare carrier: s must be invariant under every
// |s|-ary operation preserving R. Searched by backtracking over the table
// cells with relational propagation.
CloneEntailmentVerdict clone_entails(int carrier, const std::vector<Relation> & rels,
    const Relation & s, const SizeBounds & bounds = {});

// Value tuples of all structure-preserving maps Z -> ego at the labelled
// elements; labels may repeat and must cover Z.
Relation graph_of_dual(const FiniteStructure & z, const std::vector<int> & labels,
    const SizeBounds & bounds = {});

struct ProjectionSpec {
    std::vector<int> coords;  // 0-based, injective
};

Relation project(const Relation & r, const ProjectionSpec & eta);

enum class ProjectionClass { plain, retractive, bijective };
std::string to_string(ProjectionClass c);

struct ProjectionClassification {
    ProjectionClass kind = ProjectionClass::plain;
    HomMap section;  // q with p after q the identity, when retractive or better
};

// Classifies the natural projection p of the relation-as-algebra of r onto
// that of r_eta, by searching for a section.
ProjectionClassification classify_projection(const FiniteAlgebra & m, const Relation & r,
    const ProjectionSpec & eta, const SizeBounds & bounds = {});

struct RetractionCertificate {
    Relation graph;            // value tuples of all maps on the labelled dual
    ProjectionSpec eta;        // selects the coordinate-projection labels
    ProjectionClassification classification;
    std::vector<int> rho_positions;
    std::vector<int> tau_positions;
};

// Canonical decomposition of an entailed relation: s is a retractive
// projection of the labelled graph of its double dual, bijective when the
// ego's structure yields a duality on s. Verified before returning.
RetractionCertificate retraction_decomposition(const AlterEgo & ego, const Relation & s,
    const SizeBounds & bounds = {});

// Set-level constructs.
Relation product_rel(const Relation & r, const Relation & s);
Relation intersect_rel(const Relation & r, const Relation & s);  // arity mismatch throws
std::vector<Relation> trivial_rels(int arity, int carrier);
Relation remove_repetitions(const Relation & r);

// All nonempty subuniverses of M^arity (next-closure enumeration).
std::vector<Relation> algebraic_relations(const FiniteAlgebra & m, int arity,
    const SizeBounds & bounds = {});

struct DensityReport {
    int arity_bound = 0;
    std::size_t checked = 0;
    std::vector<Relation> failures;
    bool all_hold() const { return failures.empty(); }
};

// Checks entailment of every algebraic relation of arity up to the bound.
// A clean report is evidence up to the bound, not a density proof.
DensityReport entailment_dense_upto(const AlterEgo & ego, int arity_bound,
    const SizeBounds & bounds = {});

// Intersection of all equalizers of pairs of n-ary algebraic total
// operations that contain r; r is equalizer-representable iff the result
// equals r.
Relation equalizer_closure(const FiniteAlgebra & m, const Relation & r,
    const SizeBounds & bounds = {});

}
