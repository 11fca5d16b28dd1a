#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "gtg/experiment.hpp"
#include "gtg/weights.hpp"

using namespace gtg;
using nlohmann::json;

namespace {

json synthetic_record(std::uint32_t n, int seed_index, double tau, double gap) {
    json rec;
    rec["schema"] = kRecordSchema;
    rec["n"] = n;
    rec["d"] = 2;
    rec["c"] = 1.0;
    rec["seed"] = seed_index;
    rec["seed_index"] = seed_index;
    rec["tau"] = tau;
    rec["gap"] = gap;
    rec["errors"] = json::array();
    return rec;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("config parsing") {
    const auto cfg = parse_config_text(
        "# comment\n"
        "sizes = 128,256,512\n"
        "d = 2\n"
        "c = auto\n"
        "weights = pareto:3\n"
        "alpha = 0.4\n"
        "seeds = 3\n"
        "base_seed = 99\n"
        "delta = 0.01\n"
        "laziness = 0.5\n"
        "out = /tmp/gtg_cfg_test\n");
    CHECK(cfg.sizes == std::vector<std::uint32_t>{128, 256, 512});
    CHECK(cfg.c_auto);
    CHECK(cfg.dist_spec == "pareto:3");
    CHECK(cfg.alpha == 0.4);
    CHECK(cfg.seeds == 3);
    CHECK(cfg.base_seed == 99);
    CHECK_FALSE(cfg.delta_auto);
    CHECK(cfg.delta == 0.01);

    CHECK_THROWS(parse_config_text("sizes = 10,5\nseeds = 1\n"));     // not ascending
    CHECK_THROWS(parse_config_text("sizes = 10,20\nseeds = 0\n"));    // seeds < 1
    CHECK_THROWS(parse_config_text("sizes = 10\nbogus = 1\n"));       // unknown key
    CHECK_THROWS(parse_config_text("seeds = 2\n"));                   // sizes missing
    CHECK_THROWS(parse_config_text("sizes = 10\nweights = what\n"));  // bad dist
}

TEST_CASE("auto c resolves to the effective default") {
    ExperimentConfig cfg;
    cfg.sizes = {100};
    const auto dist = WeightDistribution::exponential();
    CHECK(cfg.resolve_c(dist) == doctest::Approx(effective_c_default(dist, 2)).epsilon(1e-12));
    cfg.c_auto = false;
    cfg.c = 0.37;
    CHECK(cfg.resolve_c(dist) == 0.37);
}

TEST_CASE("single instance record carries every field") {
    ExperimentConfig cfg;
    cfg.sizes = {100};
    cfg.seeds = 1;
    const json rec = run_instance(cfg, 100, 0);
    validate_record(rec);
    for (const char* key :
         {"n", "d", "c", "seed", "theta", "edges", "connected", "components", "min_deg",
          "max_deg", "edge_ratio", "k", "occ_min_high", "occ_max_high", "hh_complete",
          "hh_premise", "rho", "rho_mode", "tau", "tau_mode", "gap", "pi_min", "bound",
          "bound_satisfied", "deg_hist", "z_hist", "errors"})
        CHECK_MESSAGE(rec.contains(key), key);
    CHECK(rec["errors"].empty());
    CHECK(rec["tau_mode"] == "exact");
    CHECK(rec["rho_mode"] == "exact");
    CHECK(rec["bound_satisfied"].get<bool>());
}

TEST_CASE("ensemble reruns are byte-identical") {
    const std::string dir_a = std::filesystem::temp_directory_path() / "gtg_ens_a";
    const std::string dir_b = std::filesystem::temp_directory_path() / "gtg_ens_b";
    std::filesystem::remove_all(dir_a);
    std::filesystem::remove_all(dir_b);

    ExperimentConfig cfg;
    cfg.sizes = {60, 90};
    cfg.seeds = 2;
    cfg.base_seed = 5;

    cfg.out_dir = dir_a;
    const auto a = run_ensemble(cfg);
    cfg.out_dir = dir_b;
    const auto b = run_ensemble(cfg);

    CHECK(a.records.size() == 4);
    CHECK(read_file(dir_a + "/records.jsonl") == read_file(dir_b + "/records.jsonl"));
    CHECK(read_file(dir_a + "/records.jsonl").size() > 0);

    // loader round trip + schema guard
    const auto loaded = load_records(dir_a + "/records.jsonl");
    CHECK(loaded.size() == 4);
    json bad = loaded[0];
    bad["schema"] = "gtg-record-v999";
    CHECK_THROWS(validate_record(bad));

    std::filesystem::remove_all(dir_a);
    std::filesystem::remove_all(dir_b);
}

TEST_CASE("scaling fit on synthetic records") {
    std::vector<json> records;
    for (std::uint32_t n : {100u, 200u, 400u, 800u, 1600u})
        for (int s = 0; s < 5; ++s)
            records.push_back(synthetic_record(n, s, 7.0 * n, 1.0 / n));

    const auto fit_tau = fit_scaling(records, ScalingMetric::MixingTime);
    CHECK(fit_tau.exponent == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(fit_tau.stderr_exponent <= 1e-9);
    CHECK(fit_tau.r2 == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(fit_tau.prediction == doctest::Approx(1.0));

    const auto fit_relax = fit_scaling(records, ScalingMetric::RelaxationTime);
    CHECK(fit_relax.exponent == doctest::Approx(1.0).epsilon(1e-9));

    std::vector<json> quad;
    for (std::uint32_t n : {100u, 200u, 400u, 800u})
        for (int s = 0; s < 5; ++s)
            quad.push_back(synthetic_record(n, s, static_cast<double>(n) * n, 1.0));
    CHECK(fit_scaling(quad, ScalingMetric::MixingTime).exponent == doctest::Approx(2.0).epsilon(1e-9));

    // medians shrug off one wild outlier per size
    std::vector<json> noisy = records;
    for (std::uint32_t n : {100u, 200u, 400u, 800u, 1600u})
        noisy.push_back(synthetic_record(n, 9, 1e6, 1.0 / n));
    CHECK(fit_scaling(noisy, ScalingMetric::MixingTime).exponent ==
          doctest::Approx(1.0).epsilon(1e-6));

    // insufficient data
    std::vector<json> few(records.begin(), records.begin() + 10);
    CHECK_THROWS(fit_scaling(few, ScalingMetric::MixingTime));
    std::vector<json> thin;
    for (std::uint32_t n : {100u, 200u, 400u, 800u})
        for (int s = 0; s < 3; ++s) thin.push_back(synthetic_record(n, s, 7.0 * n, 0.5));
    CHECK_THROWS(fit_scaling(thin, ScalingMetric::MixingTime));
}

TEST_CASE("plot emission") {
    const std::string dir = std::filesystem::temp_directory_path() / "gtg_plots";
    std::filesystem::remove_all(dir);

    CHECK(emit_plots({}, dir).empty());
    CHECK_FALSE(std::filesystem::exists(dir + "/mixing_scaling.svg"));

    // single record: scatter only, no fit line
    std::vector<json> one{synthetic_record(100, 0, 42.0, 0.01)};
    one[0]["deg_hist"] = json::array({{5, 10}, {6, 20}});
    one[0]["z_hist"] = json::array({{0, 3}, {1, 7}});
    const auto files = emit_plots(one, dir);
    CHECK(files.size() == 3);
    const std::string scatter = read_file(dir + "/mixing_scaling.svg");
    CHECK(scatter.find("<svg") != std::string::npos);
    CHECK(scatter.find("slope") == std::string::npos);  // no fit line with one size

    // two sizes: fit line appears
    std::vector<json> two{synthetic_record(100, 0, 42.0, 0.01),
                          synthetic_record(200, 0, 84.0, 0.005)};
    emit_plots(two, dir);
    CHECK(read_file(dir + "/mixing_scaling.svg").find("slope") != std::string::npos);

    std::filesystem::remove_all(dir);
}
