#include "gtg/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "gtg/analysis.hpp"
#include "gtg/canonical.hpp"
#include "gtg/generator.hpp"
#include "gtg/mixing.hpp"
#include "gtg/rng.hpp"
#include "gtg/svg.hpp"

namespace gtg {

using nlohmann::json;

double ExperimentConfig::resolve_c(const WeightDistribution& dist) const {
    return c_auto ? effective_c_default(dist, d) : c;
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
    std::size_t used = 0;
    double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument("config: bad number for " + key);
    return x;
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
    std::size_t used = 0;
    unsigned long long x = std::stoull(v, &used);
    if (used != v.size()) throw std::invalid_argument("config: bad integer for " + key);
    return x;
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("config: expected key=value, got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "sizes") {
            cfg.sizes.clear();
            std::istringstream vs(value);
            std::string tok;
            while (std::getline(vs, tok, ','))
                cfg.sizes.push_back(static_cast<std::uint32_t>(to_u64(key, trim(tok))));
        } else if (key == "d") {
            cfg.d = static_cast<int>(to_u64(key, value));
        } else if (key == "c") {
            if (value == "auto") {
                cfg.c_auto = true;
            } else {
                cfg.c_auto = false;
                cfg.c = to_double(key, value);
            }
        } else if (key == "weights") {
            WeightDistribution::parse(value);  // validates
            cfg.dist_spec = value;
        } else if (key == "alpha") {
            cfg.alpha = to_double(key, value);
        } else if (key == "seeds") {
            cfg.seeds = static_cast<std::uint32_t>(to_u64(key, value));
        } else if (key == "base_seed") {
            cfg.base_seed = to_u64(key, value);
        } else if (key == "delta") {
            if (value == "auto") {
                cfg.delta_auto = true;
            } else {
                cfg.delta_auto = false;
                cfg.delta = to_double(key, value);
            }
        } else if (key == "laziness") {
            cfg.laziness = to_double(key, value);
        } else if (key == "exact_pairs_cap") {
            cfg.exact_pairs_cap = static_cast<std::uint32_t>(to_u64(key, value));
        } else if (key == "exact_mix_cap") {
            cfg.exact_mix_cap = static_cast<std::uint32_t>(to_u64(key, value));
        } else if (key == "sample_pairs") {
            cfg.sample_pairs = to_u64(key, value);
        } else if (key == "sample_starts") {
            cfg.sample_starts = static_cast<std::uint32_t>(to_u64(key, value));
        } else if (key == "gap_tol") {
            cfg.gap_tol = to_double(key, value);
        } else if (key == "out") {
            cfg.out_dir = value;
        } else {
            throw std::invalid_argument("config: unknown key '" + key + "'");
        }
    }
    if (cfg.sizes.empty()) throw std::invalid_argument("config: sizes is required");
    if (!std::is_sorted(cfg.sizes.begin(), cfg.sizes.end()) ||
        std::adjacent_find(cfg.sizes.begin(), cfg.sizes.end()) != cfg.sizes.end())
        throw std::invalid_argument("config: sizes must be strictly ascending");
    if (cfg.seeds < 1) throw std::invalid_argument("config: seeds must be >= 1");
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) throw std::invalid_argument("config: alpha in (0,1)");
    if (!(cfg.laziness >= 0.0 && cfg.laziness < 1.0))
        throw std::invalid_argument("config: laziness in [0,1)");
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

json run_instance(const ExperimentConfig& cfg, std::uint32_t n, std::uint32_t seed_index) {
    const WeightDistribution dist = WeightDistribution::parse(cfg.dist_spec);
    const double c = cfg.resolve_c(dist);
    const std::uint64_t seed = mix64(cfg.base_seed, n, seed_index);

    json rec;
    rec["schema"] = kRecordSchema;
    rec["n"] = n;
    rec["d"] = cfg.d;
    rec["c"] = c;
    rec["dist"] = cfg.dist_spec;
    rec["alpha"] = cfg.alpha;
    rec["lazy"] = cfg.laziness;
    rec["seed_index"] = seed_index;
    rec["seed"] = seed;
    json errors = json::array();

    GtgConfig gc;
    gc.n = n;
    gc.d = cfg.d;
    gc.c = c;
    gc.dist = dist;
    gc.alpha = cfg.alpha;
    gc.seed = seed;

    Graph g;
    try {
        g = generate_gtg(gc);
    } catch (const std::exception& ex) {
        errors.push_back(std::string("generate: ") + ex.what());
        rec["errors"] = errors;
        return rec;
    }
    rec["theta"] = g.theta();
    rec["edges"] = g.edge_count();

    const double omega = omega_default(n);
    rec["omega"] = omega;

    const auto comps = connected_components(g);
    rec["connected"] = comps.connected();
    rec["components"] = comps.count();

    const auto deg = degree_report(g, dist, c, omega);
    rec["min_deg"] = deg.min_deg;
    rec["max_deg"] = deg.max_deg;
    rec["deg_interval_low"] = deg.lower_defined ? json(deg.lower) : json();
    rec["deg_interval_high"] = deg.upper;
    rec["deg_within"] = deg.within;
    rec["edge_ratio"] = n >= 3 ? json(edge_count_ratio(g)) : json();

    {  // degree histogram: exact (degree, count) pairs
        std::map<std::uint32_t, std::uint64_t> hist;
        for (std::uint32_t v = 0; v < n; ++v) ++hist[g.degree(v)];
        json jh = json::array();
        for (const auto& [d_, cnt] : hist) jh.push_back({d_, cnt});
        rec["deg_hist"] = jh;
    }

    const int k = grid_side(n, cfg.d, cfg.alpha);
    rec["k"] = k;
    const auto hl = high_low_partition(g, cfg.alpha, dist);
    rec["high_nodes"] = hl.high.size();

    const auto occ = cube_occupancy(g, k, hl);
    rec["occ_min_high"] = occ.min_high_norm;
    rec["occ_max_high"] = occ.max_high_norm;
    rec["occ_min_low"] = occ.min_low_norm;
    rec["occ_max_low"] = occ.max_low_norm;

    const auto hh = adjacent_cube_hh_edges(g, k, hl, cfg.alpha, dist);
    rec["hh_complete"] = hh.complete;
    rec["hh_premise"] = hh.premise_holds;
    rec["hh_min_edges_norm"] = hh.min_edges_norm;

    const double log_n = std::log(static_cast<double>(n));

    rec["rho"] = json();
    try {
        const auto cubes = index_cubes(g, k, hl);
        const auto reps = assign_representatives(g, cubes, hl, seed);
        PathBuildOptions opt;
        opt.exact = n <= cfg.exact_pairs_cap;
        opt.sample_pairs = cfg.sample_pairs;
        opt.seed = seed;
        const PathSystem ps = build_paths(g, cubes, hl, reps, opt);
        const double rho = compute_rho(g, ps);
        rec["rho"] = rho;
        rec["rho_mode"] = ps.exact ? "exact" : "sampled";
        rec["path_failures"] = ps.failures;
        rec["path_resamples"] = ps.resamples;
        rec["max_path_len"] = ps.max_len;
        rec["path_len_bound"] = cfg.d * k + 2;
        std::uint64_t max_z = 0;
        for (std::uint64_t z : ps.usage) max_z = std::max(max_z, z);
        rec["max_z"] = max_z;
        // Both normalizations of the congestion growth rate.
        rec["rho_over_n_scaling"] = rho / std::pow(n / log_n, 2.0 / cfg.d);
        rec["rho_over_log_scaling"] = rho / std::pow(log_n, 2.0 / cfg.d);
        if (ps.failures > 0) errors.push_back("paths: " + ps.first_failure);

        json zh = json::array();
        std::map<int, std::uint64_t> zbins;
        for (std::uint64_t z : ps.usage)
            ++zbins[z == 0 ? -1 : static_cast<int>(std::floor(std::log2(static_cast<double>(z))))];
        for (const auto& [b, cnt] : zbins) zh.push_back({b, cnt});
        rec["z_hist"] = zh;
    } catch (const std::exception& ex) {
        errors.push_back(std::string("paths: ") + ex.what());
    }

    rec["tau"] = json();
    rec["gap"] = json();
    if (comps.connected()) {
        const double delta = cfg.delta_auto ? 1.0 / n : cfg.delta;
        rec["delta"] = delta;
        try {
            const MixingTime mt = mixing_time(g, delta, cfg.laziness, n <= cfg.exact_mix_cap,
                                              1 << 22, seed, cfg.sample_starts, cfg.exact_mix_cap);
            rec["tau"] = mt.tau;
            rec["tau_mode"] = mt.exact ? "exact" : "sampled";
        } catch (const std::exception& ex) {
            errors.push_back(std::string("mixing: ") + ex.what());
        }
        try {
            const double gap = spectral_gap(g, cfg.laziness, cfg.gap_tol);
            rec["gap"] = gap;
            rec["relaxation"] = 1.0 / gap;
        } catch (const std::exception& ex) {
            errors.push_back(std::string("gap: ") + ex.what());
        }
        const Stationary st = stationary(g);
        const double pi_min = st.min_positive();
        rec["pi_min"] = pi_min;
        if (!rec["rho"].is_null() && !rec["tau"].is_null()) {
            const double bound = canonical_bound(rec["rho"].get<double>(), pi_min, delta);
            rec["bound"] = bound;
            rec["bound_satisfied"] = rec["tau"].get<double>() <= 2.0 * bound;
        }
    } else {
        errors.push_back("mixing: skipped (graph disconnected)");
    }

    rec["errors"] = errors;
    return rec;
}

void validate_record(const json& record) {
    if (!record.is_object() || !record.contains("schema") || !record["schema"].is_string() ||
        record["schema"].get<std::string>() != kRecordSchema)
        throw std::invalid_argument("record schema mismatch (expected " +
                                    std::string(kRecordSchema) + ")");
    for (const char* key : {"n", "d", "c", "seed", "errors"})
        if (!record.contains(key)) throw std::invalid_argument(std::string("record missing ") + key);
}

std::vector<json> load_records(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("records: cannot open " + path);
    std::vector<json> out;
    std::string line;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        json rec = json::parse(line);
        validate_record(rec);
        out.push_back(std::move(rec));
    }
    return out;
}

namespace {

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size();
    return m % 2 ? v[m / 2] : 0.5 * (v[m / 2 - 1] + v[m / 2]);
}

}  // namespace

ScalingFit fit_scaling(const std::vector<json>& records, ScalingMetric metric) {
    std::map<double, std::vector<double>> by_size;
    int d = 2;
    for (const auto& rec : records) {
        validate_record(rec);
        d = rec["d"].get<int>();
        const char* key = metric == ScalingMetric::MixingTime ? "tau" : "gap";
        if (!rec.contains(key) || rec[key].is_null()) continue;
        double value = rec[key].get<double>();
        if (metric == ScalingMetric::RelaxationTime) value = 1.0 / value;
        if (value > 0.0) by_size[rec["n"].get<double>()].push_back(value);
    }

    ScalingFit fit;
    for (const auto& [n, values] : by_size) {
        if (values.size() < 5) continue;
        fit.points.push_back({n, median(values)});
    }
    if (fit.points.size() < 4)
        throw std::invalid_argument("fit_scaling: need >= 4 sizes with >= 5 records each");

    const std::size_t m = fit.points.size();
    double sx = 0, sy = 0;
    for (const auto& [n, y] : fit.points) {
        sx += std::log(n);
        sy += std::log(y);
    }
    const double mx = sx / m, my = sy / m;
    double sxx = 0, sxy = 0;
    for (const auto& [n, y] : fit.points) {
        const double dx = std::log(n) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(y) - my);
    }
    fit.exponent = sxy / sxx;
    fit.intercept = my - fit.exponent * mx;
    double sse = 0, sst = 0;
    for (const auto& [n, y] : fit.points) {
        const double resid = std::log(y) - (fit.intercept + fit.exponent * std::log(n));
        sse += resid * resid;
        sst += (std::log(y) - my) * (std::log(y) - my);
    }
    fit.stderr_exponent = std::sqrt(sse / static_cast<double>(m - 2) / sxx);
    fit.r2 = sst > 0.0 ? 1.0 - sse / sst : 1.0;
    fit.prediction = 2.0 / d;
    return fit;
}

std::vector<std::string> emit_plots(const std::vector<json>& records, const std::string& out_dir) {
    std::vector<std::string> written;
    if (records.empty()) return written;
    std::filesystem::create_directories(out_dir);

    // tau vs n, log-log
    std::vector<std::pair<double, double>> points;
    for (const auto& rec : records)
        if (rec.contains("tau") && !rec["tau"].is_null())
            points.push_back({rec["n"].get<double>(), rec["tau"].get<double>()});
    {
        double slope = 0, intercept = 0;
        std::size_t distinct = 0;
        {
            std::map<double, bool> seen;
            for (auto [x, y] : points) seen[x] = true;
            distinct = seen.size();
        }
        bool with_fit = distinct >= 2;
        if (with_fit) {
            double sx = 0, sy = 0, sxx = 0, sxy = 0;
            for (auto [x, y] : points) {
                sx += std::log(x);
                sy += std::log(y);
            }
            const double mx = sx / points.size(), my = sy / points.size();
            for (auto [x, y] : points) {
                sxx += (std::log(x) - mx) * (std::log(x) - mx);
                sxy += (std::log(x) - mx) * (std::log(y) - my);
            }
            slope = sxy / sxx;
            intercept = my - slope * mx;
        }
        const std::string path = out_dir + "/mixing_scaling.svg";
        svg_loglog_scatter(path, "Mixing time vs n", "n", "tau(1/n)", points, with_fit, slope,
                           intercept);
        written.push_back(path);
    }

    // degree histogram, aggregated over the records at the largest n
    double n_max = 0;
    for (const auto& rec : records) n_max = std::max(n_max, rec["n"].get<double>());
    std::map<std::uint64_t, double> deg_hist;
    std::map<long long, double> z_hist;
    for (const auto& rec : records) {
        if (rec["n"].get<double>() != n_max) continue;
        if (rec.contains("deg_hist"))
            for (const auto& pair : rec["deg_hist"])
                deg_hist[pair[0].get<std::uint64_t>()] += pair[1].get<double>();
        if (rec.contains("z_hist") && !rec["z_hist"].is_null())
            for (const auto& pair : rec["z_hist"])
                z_hist[pair[0].get<long long>()] += pair[1].get<double>();
    }
    if (!deg_hist.empty()) {
        // coarsen to at most 40 bars
        const std::uint64_t lo = deg_hist.begin()->first, hi = deg_hist.rbegin()->first;
        const std::uint64_t span = std::max<std::uint64_t>(1, (hi - lo + 40) / 40);
        std::map<std::uint64_t, double> coarse;
        for (const auto& [d_, cnt] : deg_hist) coarse[(d_ - lo) / span] += cnt;
        std::vector<std::pair<std::string, double>> bins;
        for (const auto& [b, cnt] : coarse)
            bins.push_back({std::to_string(lo + b * span), cnt});
        const std::string path = out_dir + "/degree_histogram.svg";
        svg_histogram(path, "Degree histogram (largest n)", "degree", bins);
        written.push_back(path);
    }
    if (!z_hist.empty()) {
        std::vector<std::pair<std::string, double>> bins;
        for (const auto& [b, cnt] : z_hist)
            bins.push_back({b < 0 ? "0" : "2^" + std::to_string(b), cnt});
        const std::string path = out_dir + "/edge_load_histogram.svg";
        svg_histogram(path, "Canonical-path edge load (largest n)", "paths per edge", bins);
        written.push_back(path);
    }
    return written;
}

EnsembleResult run_ensemble(const ExperimentConfig& cfg) {
    EnsembleResult result;
    std::filesystem::create_directories(cfg.out_dir);
    std::ofstream log(cfg.out_dir + "/run.log", std::ios::app);
    const auto stamp = [&]() -> std::ostream& {
        const std::time_t now = std::time(nullptr);
        char buf[32];
        std::strftime(buf, sizeof(buf), "%F %T", std::localtime(&now));
        log << buf << " ";
        return log;
    };

    for (std::uint32_t n : cfg.sizes) {
        for (std::uint32_t s = 0; s < cfg.seeds; ++s) {
            json rec = run_instance(cfg, n, s);
            if (!rec["errors"].empty()) ++result.failures;
            stamp() << "n=" << n << " seed_index=" << s << " errors=" << rec["errors"].size()
                    << "\n" << std::flush;
            result.records.push_back(std::move(rec));
        }
    }

    const std::string records_path = cfg.out_dir + "/records.jsonl";
    {
        std::ofstream out(records_path);
        for (const auto& rec : result.records) out << rec.dump() << "\n";
    }
    result.files_written.push_back(records_path);

    json fits;
    for (auto [metric, name] : {std::pair{ScalingMetric::MixingTime, "tau"},
                                std::pair{ScalingMetric::RelaxationTime, "relaxation"}}) {
        try {
            const ScalingFit fit = fit_scaling(result.records, metric);
            json jf;
            jf["exponent"] = fit.exponent;
            jf["intercept"] = fit.intercept;
            jf["stderr"] = fit.stderr_exponent;
            jf["r2"] = fit.r2;
            jf["prediction"] = fit.prediction;
            jf["points"] = fit.points;
            fits[name] = jf;
        } catch (const std::exception& ex) {
            stamp() << "fit " << name << " skipped: " << ex.what() << "\n";
        }
    }
    if (!fits.is_null()) {
        const std::string fit_path = cfg.out_dir + "/fit.json";
        std::ofstream out(fit_path);
        out << fits.dump(2) << "\n";
        result.files_written.push_back(fit_path);
    }

    for (const auto& f : emit_plots(result.records, cfg.out_dir)) result.files_written.push_back(f);
    stamp() << "done: " << result.records.size() << " records, " << result.failures
            << " with errors\n";
    return result;
}

}  // namespace gtg
