#pragma once

// Report emission and result caching for the command-line front end.
// Reports are byte-identical across runs and worker counts for fixed inputs
// and bounds; elapsed time is reported as zero unless timings are requested.

#include <dwb/catalog.hpp>
#include <dwb/speclang.hpp>

#include <json.hpp>

#include <optional>

namespace dwb {

struct ReportInput {
    std::string id;
    std::string digest;
};

struct ReportBounds {
    int power_bound = 0;
    long long size_bound = 0;
    long long op_limit = 0;

    std::string key() const
    {
        return std::to_string(power_bound) + ":" + std::to_string(size_bound) + ":" +
            std::to_string(op_limit);
    }
};

std::string digest_algebra(const FiniteAlgebra & a);
std::string digest_ego(const AlterEgo & e);
std::string digest_text(const std::string & text);

nlohmann::ordered_json make_report(const std::string & command,
    const nlohmann::ordered_json & params, const std::vector<ReportInput> & inputs,
    const std::string & verdict, const nlohmann::ordered_json & witness,
    const ReportBounds & bounds, long long elapsed_ms);

std::string render_json(const nlohmann::ordered_json & report);
std::string render_markdown(const nlohmann::ordered_json & report);

class ResultCache {
public:
    explicit ResultCache(std::string dir) : dir_(std::move(dir)) {}

    bool enabled() const { return ! dir_.empty(); }
    static std::string key(const std::string & command, const nlohmann::ordered_json & params,
        const std::vector<ReportInput> & inputs, const ReportBounds & bounds);

    // nullopt on miss; corrupt entries are dropped with a warning on stderr
    std::optional<std::string> load(const std::string & key) const;
    void store(const std::string & key, const std::string & bytes) const;

private:
    std::string dir_;
};

// Witness re-verification from a report alone (inputs resolved by id against
// the catalog and any loaded documents). Returns an explanation on failure.
struct WitnessCheck {
    bool valid = false;
    std::string detail;
};
WitnessCheck verify_witness_report(const nlohmann::ordered_json & report,
    const Catalog & catalog, const ElaboratedDoc * doc, const SizeBounds & bounds);

}
