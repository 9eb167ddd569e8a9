#pragma once

// Built-in algebras and alter egos, plus the machine-readable claim
// manifest used for regression runs.

#include <dwb/duality.hpp>
#include <dwb/endo.hpp>
#include <dwb/entailment.hpp>

#include <functional>
#include <memory>

namespace dwb {

enum class Provenance {
    literature,           // tables stated explicitly in the source literature
    standard_definition,  // standard textbook definition, not restated there
    derived,              // derived here from defining conditions
};

std::string to_string(Provenance p);

struct CatalogEntry {
    std::string id;
    std::shared_ptr<const FiniteAlgebra> algebra;  // exactly one of these is set
    std::shared_ptr<const AlterEgo> ego;
    Provenance provenance = Provenance::literature;
    std::string source;  // short citation
    std::string notes;
};

struct Catalog {
    std::vector<CatalogEntry> entries;

    const CatalogEntry * find(const std::string & id) const;
    std::shared_ptr<const FiniteAlgebra> algebra(const std::string & id) const;
    std::shared_ptr<const AlterEgo> ego(const std::string & id) const;
};

// Constructs and self-validates the catalog: every ego must be algebraic
// over its algebra, the median operation must satisfy its defining
// equations, and the discriminator its identities. Violations throw
// SelfValidationFailed.
Catalog load_catalog(const SizeBounds & bounds = {});

struct ClaimResult {
    std::string id;
    bool pass = false;
    std::string detail;
};

struct Claim {
    std::string id;
    std::string description;
    std::function<ClaimResult(const Catalog &, const SizeBounds &)> run;
};

std::vector<Claim> claim_manifest();

struct ManifestReport {
    std::vector<ClaimResult> results;
    std::size_t passed = 0;
    bool all_pass() const { return passed == results.size(); }
};

// Runs every claim whose id contains the filter substring. Claims run in
// parallel; results keep manifest order.
ManifestReport run_manifest(const Catalog & catalog, const std::string & filter,
    const SizeBounds & bounds = {}, int jobs = 1);

}
