#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "gtg/weights.hpp"

namespace gtg {

inline constexpr const char* kRecordSchema = "gtg-record-v1";

// Ensemble description; read from a flat key=value file.
struct ExperimentConfig {
    std::vector<std::uint32_t> sizes;  // ascending
    int d = 2;
    bool c_auto = true;    // c = 0.9 * min(connectivity bound, admissible bound)
    double c = 0.0;        // used when !c_auto
    std::string dist_spec = "exp";
    double alpha = 0.5;
    std::uint32_t seeds = 1;
    std::uint64_t base_seed = 1;
    bool delta_auto = true;  // delta = 1/n
    double delta = 0.0;
    double laziness = 0.5;
    std::uint32_t exact_pairs_cap = 3000;   // all-pairs paths up to this n
    std::uint32_t exact_mix_cap = 2000;     // all-starts mixing up to this n
    std::uint64_t sample_pairs = 1'000'000; // sampled-mode path draws
    std::uint32_t sample_starts = 64;
    double gap_tol = 1e-4;
    std::string out_dir = "gtg-out";

    double resolve_c(const WeightDistribution& dist) const;
};

// key=value lines; '#' starts a comment. Unknown keys and malformed values
// are errors; `sizes` must be ascending and `seeds` >= 1.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

// One fully populated record per (n, seed index). Stage failures land in the
// record's "errors" array; the stages that did run keep their fields.
nlohmann::json run_instance(const ExperimentConfig& cfg, std::uint32_t n,
                            std::uint32_t seed_index);

struct EnsembleResult {
    std::vector<nlohmann::json> records;
    std::uint64_t failures = 0;  // records that carry errors
    std::vector<std::string> files_written;
};

// Runs every (size, seed) cell, writes records.jsonl, fit.json (when enough
// data) and the plots into cfg.out_dir. Timestamps go only to run.log.
EnsembleResult run_ensemble(const ExperimentConfig& cfg);

// Schema guard: throws unless the record carries the known schema tag.
void validate_record(const nlohmann::json& record);
std::vector<nlohmann::json> load_records(const std::string& path);

enum class ScalingMetric { MixingTime, RelaxationTime };

// Least-squares slope of ln(median metric) vs ln n. Needs >= 4 distinct
// sizes with >= 5 records each.
struct ScalingFit {
    double exponent = 0.0;
    double intercept = 0.0;
    double stderr_exponent = 0.0;
    double r2 = 0.0;
    double prediction = 0.0;  // 2/d
    std::vector<std::pair<double, double>> points;  // (n, median metric)
};

ScalingFit fit_scaling(const std::vector<nlohmann::json>& records, ScalingMetric metric);

// Scatter + fit, degree histogram, per-edge load histogram. Empty input
// writes nothing and returns an empty list.
std::vector<std::string> emit_plots(const std::vector<nlohmann::json>& records,
                                    const std::string& out_dir);

}  // namespace gtg
