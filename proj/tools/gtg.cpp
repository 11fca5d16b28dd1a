// Command-line front end: generate instances, analyze them, build the
// canonical-path system, measure mixing, and run seeded ensembles.
//
// Exit codes: 0 success, 2 configuration/usage error, 3 instance failures
// occurred (partial results written).

#include <cmath>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "gtg/analysis.hpp"
#include "gtg/canonical.hpp"
#include "gtg/experiment.hpp"
#include "gtg/generator.hpp"
#include "gtg/mixing.hpp"
#include "gtg/weights.hpp"

using nlohmann::json;

namespace {

double recovered_c(const gtg::Graph& g) {
    return g.theta() * std::log(static_cast<double>(g.node_count())) / g.node_count();
}

void write_or_print(const std::string& path, const json& doc) {
    if (path.empty()) {
        std::cout << doc.dump(2) << "\n";
    } else {
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot open " + path);
        out << doc.dump(2) << "\n";
    }
}

int cmd_generate(std::uint32_t n, int d, const std::string& c_spec, const std::string& weights,
                 double alpha, std::uint64_t seed, const std::string& out) {
    gtg::GtgConfig cfg;
    cfg.n = n;
    cfg.d = d;
    cfg.dist = gtg::WeightDistribution::parse(weights);
    cfg.alpha = alpha;
    cfg.seed = seed;
    cfg.c = c_spec == "auto" ? gtg::effective_c_default(cfg.dist, d) : std::stod(c_spec);
    const gtg::Graph g = gtg::generate_gtg(cfg);
    g.save(out);
    std::cerr << "wrote " << out << ": n=" << g.node_count() << " d=" << d << " c=" << cfg.c
              << " edges=" << g.edge_count() << "\n";
    return 0;
}

int cmd_analyze(const std::string& in, const std::string& weights, double alpha,
                const std::string& json_out) {
    const gtg::Graph g = gtg::Graph::load(in);
    const auto dist = gtg::WeightDistribution::parse(weights);
    const double c = recovered_c(g);
    const double omega = gtg::omega_default(g.node_count());

    json rec;
    rec["schema"] = gtg::kRecordSchema;
    rec["n"] = g.node_count();
    rec["d"] = g.dim();
    rec["c"] = c;
    rec["seed"] = g.seed();
    rec["dist"] = weights;
    rec["alpha"] = alpha;
    rec["errors"] = json::array();

    const auto comps = gtg::connected_components(g);
    rec["connected"] = comps.connected();
    rec["components"] = comps.count();
    const auto deg = gtg::degree_report(g, dist, c, omega);
    rec["min_deg"] = deg.min_deg;
    rec["max_deg"] = deg.max_deg;
    rec["edge_ratio"] = g.node_count() >= 3 ? json(gtg::edge_count_ratio(g)) : json();

    const int k = gtg::grid_side(g.node_count(), g.dim(), alpha);
    const auto hl = gtg::high_low_partition(g, alpha, dist);
    const auto occ = gtg::cube_occupancy(g, k, hl);
    rec["k"] = k;
    rec["occ_min_high"] = occ.min_high_norm;
    rec["occ_max_high"] = occ.max_high_norm;
    rec["occ_min_low"] = occ.min_low_norm;
    rec["occ_max_low"] = occ.max_low_norm;
    const auto hh = gtg::adjacent_cube_hh_edges(g, k, hl, alpha, dist);
    rec["hh_complete"] = hh.complete;
    rec["hh_premise"] = hh.premise_holds;
    rec["hh_min_edges_norm"] = hh.min_edges_norm;
    write_or_print(json_out, rec);
    return 0;
}

int cmd_paths(const std::string& in, const std::string& mode, std::uint64_t pairs,
              std::uint64_t seed, const std::string& weights, double alpha,
              const std::string& csv_out, const std::string& summary_out) {
    const gtg::Graph g = gtg::Graph::load(in);
    const auto dist = gtg::WeightDistribution::parse(weights);
    const int k = gtg::grid_side(g.node_count(), g.dim(), alpha);
    const auto hl = gtg::high_low_partition(g, alpha, dist);
    const auto cubes = gtg::index_cubes(g, k, hl);
    const auto reps = gtg::assign_representatives(g, cubes, hl, seed);

    gtg::PathBuildOptions opt;
    opt.exact = mode == "exact";
    opt.sample_pairs = pairs;
    opt.seed = seed;
    const auto ps = gtg::build_paths(g, cubes, hl, reps, opt);

    const double n = g.node_count();
    const double omega = gtg::omega_default(n);
    const auto partition =
        gtg::build_partition(dist, n, g.dim(), alpha, gtg::default_epsilon(gtg::default_nu(dist, g.dim()), g.dim()),
                             gtg::default_nu(dist, g.dim()), omega);
    const auto stats = gtg::edge_stats(g, cubes, hl, ps, partition);

    if (!csv_out.empty()) {
        std::ofstream csv(csv_out);
        if (!csv) throw std::runtime_error("cannot open " + csv_out);
        csv << "edge_i,edge_j,Z,sigma,load_class\n";
        for (std::uint32_t e = 0; e < g.edge_count(); ++e) {
            const auto [i, j] = g.edges()[e];
            const int ci = partition.classify(g.weight(i));
            const int cj = partition.classify(g.weight(j));
            csv << i << ',' << j << ',' << ps.usage[e] << ',' << ps.sigma[e] << ','
                << gtg::WeightPartition::class_name(std::min(ci, cj)) << ':'
                << gtg::WeightPartition::class_name(std::max(ci, cj)) << "\n";
        }
        std::cerr << "wrote " << csv_out << "\n";
    }

    std::uint64_t max_z = 0;
    for (std::uint64_t z : ps.usage) max_z = std::max(max_z, z);
    json summary;
    summary["rho"] = gtg::compute_rho(g, ps);
    summary["rho_check"] = stats.rho;
    summary["max_Z"] = max_z;
    summary["mode"] = ps.exact ? "exact" : "sampled";
    summary["pairs"] = ps.pairs_requested;
    summary["failures"] = ps.failures;
    summary["resamples"] = ps.resamples;
    summary["max_path_len"] = ps.max_len;
    summary["path_len_bound"] = g.dim() * k + 2;
    summary["k"] = k;
    write_or_print(summary_out, summary);
    return ps.failures == 0 ? 0 : 3;
}

int cmd_mix(const std::string& in, const std::string& delta_spec, double lazy,
            const std::string& mode, const std::string& weights, double alpha,
            std::uint64_t seed, const std::string& json_out) {
    const gtg::Graph g = gtg::Graph::load(in);
    const auto dist = gtg::WeightDistribution::parse(weights);
    if (lazy == 0.0 && gtg::is_bipartite(g))
        throw std::invalid_argument("simple walk on a bipartite graph does not mix; use laziness > 0");
    const double delta = delta_spec == "auto" ? 1.0 / g.node_count() : std::stod(delta_spec);

    json rec;
    rec["n"] = g.node_count();
    rec["d"] = g.dim();
    rec["c"] = recovered_c(g);
    rec["seed"] = g.seed();
    rec["lazy"] = lazy;
    rec["delta"] = delta;

    const bool exact = mode == "exact" ? true : mode == "sampled" ? false : g.node_count() <= 2000;
    const auto mt = gtg::mixing_time(g, delta, lazy, exact, 1 << 22, seed);
    rec["tau"] = mt.tau;
    rec["tau_mode"] = mt.exact ? "exact" : "sampled";
    rec["gap"] = gtg::spectral_gap(g, lazy);

    const int k = gtg::grid_side(g.node_count(), g.dim(), alpha);
    const auto hl = gtg::high_low_partition(g, alpha, dist);
    const auto cubes = gtg::index_cubes(g, k, hl);
    const auto reps = gtg::assign_representatives(g, cubes, hl, seed);
    gtg::PathBuildOptions opt;
    opt.exact = g.node_count() <= 3000;
    opt.seed = seed;
    const auto ps = gtg::build_paths(g, cubes, hl, reps, opt);
    rec["rho"] = gtg::compute_rho(g, ps);
    rec["rho_mode"] = ps.exact ? "exact" : "sampled";

    const auto st = gtg::stationary(g);
    rec["bound"] = gtg::canonical_bound(rec["rho"].get<double>(), st.min_positive(), delta);
    rec["bound_satisfied"] = mt.tau <= 2.0 * rec["bound"].get<double>();
    write_or_print(json_out, rec);
    return 0;
}

int cmd_experiment(const std::string& config_path) {
    const auto cfg = gtg::parse_config_file(config_path);
    const auto result = gtg::run_ensemble(cfg);
    std::cerr << result.records.size() << " records, " << result.failures << " with errors; wrote:\n";
    for (const auto& f : result.files_written) std::cerr << "  " << f << "\n";
    return result.failures == 0 ? 0 : 3;
}

int cmd_fit(const std::string& records_path, const std::string& plots_dir) {
    const auto records = gtg::load_records(records_path);
    json out;
    for (auto [metric, name] : {std::pair{gtg::ScalingMetric::MixingTime, "tau"},
                                std::pair{gtg::ScalingMetric::RelaxationTime, "relaxation"}}) {
        try {
            const auto fit = gtg::fit_scaling(records, metric);
            out[name] = {{"exponent", fit.exponent},
                         {"stderr", fit.stderr_exponent},
                         {"r2", fit.r2},
                         {"prediction", fit.prediction}};
        } catch (const std::exception& ex) {
            out[name] = {{"error", ex.what()}};
        }
    }
    std::cout << out.dump(2) << "\n";
    if (!plots_dir.empty()) {
        for (const auto& f : gtg::emit_plots(records, plots_dir)) std::cerr << "wrote " << f << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"geographical threshold graph toolkit"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "sample an instance and write it to a file");
    std::uint32_t n = 1000;
    int d = 2;
    std::string c_spec = "auto", weights = "exp", out_file = "graph.gtg";
    double alpha = 0.5;
    std::uint64_t seed = 1;
    gen->add_option("--n", n, "node count")->required();
    gen->add_option("--d", d, "dimension (>= 2)");
    gen->add_option("--c", c_spec, "threshold constant or 'auto'");
    gen->add_option("--weights", weights, "exp | pareto:<gamma> | const:<w0>");
    gen->add_option("--alpha", alpha, "high-weight fraction");
    gen->add_option("--seed", seed, "instance seed");
    gen->add_option("--out", out_file, "output path")->required();

    // analyze
    auto* ana = app.add_subcommand("analyze", "structural report for a stored instance");
    std::string in_file, json_out;
    ana->add_option("--in", in_file, "graph file")->required();
    ana->add_option("--weights", weights, "weight distribution used to build the instance");
    ana->add_option("--alpha", alpha, "high-weight fraction");
    ana->add_option("--json", json_out, "write the report here instead of stdout");

    // paths
    auto* pth = app.add_subcommand("paths", "canonical-path system and per-edge statistics");
    std::string mode = "exact", csv_out, summary_out;
    std::uint64_t pairs = 1'000'000;
    pth->add_option("--in", in_file, "graph file")->required();
    pth->add_option("--mode", mode, "exact | sampled")->check(CLI::IsMember({"exact", "sampled"}));
    pth->add_option("--pairs", pairs, "ordered-pair draws in sampled mode");
    pth->add_option("--seed", seed, "path/representative seed");
    pth->add_option("--weights", weights, "weight distribution");
    pth->add_option("--alpha", alpha, "high-weight fraction");
    pth->add_option("--csv", csv_out, "per-edge CSV output path");
    pth->add_option("--summary", summary_out, "summary JSON path (stdout when omitted)");

    // mix
    auto* mix = app.add_subcommand("mix", "mixing time, spectral gap, congestion bound");
    std::string delta_spec = "auto", mix_mode = "default";
    double lazy = 0.5;
    mix->add_option("--in", in_file, "graph file")->required();
    mix->add_option("--delta", delta_spec, "target distance or 'auto' (= 1/n)");
    mix->add_option("--lazy", lazy, "holding probability in [0,1)");
    mix->add_option("--mode", mix_mode, "exact | sampled | default")
        ->check(CLI::IsMember({"exact", "sampled", "default"}));
    mix->add_option("--weights", weights, "weight distribution");
    mix->add_option("--alpha", alpha, "high-weight fraction");
    mix->add_option("--seed", seed, "sampling seed");
    mix->add_option("--json", json_out, "write the report here instead of stdout");

    // experiment
    auto* exp = app.add_subcommand("experiment", "run a seeded ensemble from a config file");
    std::string config_path;
    exp->add_option("--config", config_path, "key=value config file")->required();

    // fit
    auto* fit = app.add_subcommand("fit", "scaling fit and plots from stored records");
    std::string records_path, plots_dir;
    fit->add_option("--in", records_path, "records.jsonl")->required();
    fit->add_option("--plots", plots_dir, "emit plots into this directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
            return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        if (gen->parsed()) return cmd_generate(n, d, c_spec, weights, alpha, seed, out_file);
        if (ana->parsed()) return cmd_analyze(in_file, weights, alpha, json_out);
        if (pth->parsed())
            return cmd_paths(in_file, mode, pairs, seed, weights, alpha, csv_out, summary_out);
        if (mix->parsed())
            return cmd_mix(in_file, delta_spec, lazy, mix_mode, weights, alpha, seed, json_out);
        if (exp->parsed()) return cmd_experiment(config_path);
        if (fit->parsed()) return cmd_fit(records_path, plots_dir);
    } catch (const std::invalid_argument& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 3;
    }
    return 0;
}
