#include "gtg/mixing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>

#include "gtg/analysis.hpp"
#include "gtg/parallel.hpp"
#include "gtg/rng.hpp"

namespace gtg {

WalkState point_mass(std::uint32_t n, std::uint32_t at) {
    WalkState s;
    s.probs.assign(n, 0.0);
    s.probs.at(at) = 1.0;
    return s;
}

double Stationary::min_positive() const {
    double m = std::numeric_limits<double>::infinity();
    for (double p : probs)
        if (p > 0.0) m = std::min(m, p);
    return m;
}

Stationary stationary(const Graph& g) {
    if (g.edge_count() == 0) throw std::invalid_argument("stationary: graph has no edges");
    Stationary st;
    st.probs.resize(g.node_count());
    const double denom = 2.0 * static_cast<double>(g.edge_count());
    for (std::uint32_t v = 0; v < g.node_count(); ++v) {
        st.probs[v] = g.degree(v) / denom;
        if (g.degree(v) == 0) ++st.isolated;
    }
    return st;
}

void step_into(const Graph& g, std::span<const double> in, std::span<double> out, double laziness) {
    const std::uint32_t n = g.node_count();
    for (std::uint32_t j = 0; j < n; ++j) out[j] = laziness * in[j];
    const double move = 1.0 - laziness;
    for (std::uint32_t i = 0; i < n; ++i) {
        const std::uint32_t deg = g.degree(i);
        if (deg == 0 || in[i] == 0.0) continue;
        const double contrib = move * in[i] / deg;
        for (std::uint32_t j : g.neighbors(i)) out[j] += contrib;
    }
}

WalkState step(const Graph& g, const WalkState& s, double laziness) {
    WalkState out;
    out.probs.resize(s.probs.size());
    out.t = s.t + 1;
    step_into(g, s.probs, out.probs, laziness);
    return out;
}

double variational_distance(std::span<const double> s, std::span<const double> pi) {
    if (s.size() != pi.size()) throw std::invalid_argument("variational_distance: length mismatch");
    double sum = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) sum += std::fabs(s[i] - pi[i]);
    return 0.5 * sum;
}

std::vector<double> tv_trace(const Graph& g, std::uint32_t start, double laziness, int steps) {
    const Stationary st = stationary(g);
    std::vector<double> cur(g.node_count(), 0.0), next(g.node_count());
    cur[start] = 1.0;
    std::vector<double> trace;
    trace.push_back(variational_distance(cur, st.probs));
    for (int t = 0; t < steps; ++t) {
        step_into(g, cur, next, laziness);
        cur.swap(next);
        trace.push_back(variational_distance(cur, st.probs));
    }
    return trace;
}

namespace {

int mixing_time_with_pi(const Graph& g, std::span<const double> pi, std::uint32_t start,
                        double delta, double laziness, int t_max, std::vector<double>& cur,
                        std::vector<double>& next) {
    std::fill(cur.begin(), cur.end(), 0.0);
    cur[start] = 1.0;
    double dist = variational_distance(cur, pi);
    if (dist <= delta) return 0;
    for (int t = 1; t <= t_max; ++t) {
        step_into(g, cur, next, laziness);
        cur.swap(next);
        dist = variational_distance(cur, pi);
        if (dist <= delta) return t;
    }
    std::ostringstream os;
    os << "mixing_time: no crossing within " << t_max << " steps from node " << start
       << " (last distance " << dist << ")";
    throw std::runtime_error(os.str());
}

}  // namespace

int mixing_time_from(const Graph& g, std::uint32_t start, double delta, double laziness,
                     int t_max) {
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("mixing_time: delta in (0,1)");
    const Stationary st = stationary(g);
    std::vector<double> cur(g.node_count()), next(g.node_count());
    return mixing_time_with_pi(g, st.probs, start, delta, laziness, t_max, cur, next);
}

MixingTime mixing_time(const Graph& g, double delta, double laziness, bool exact, int t_max,
                       std::uint64_t sample_seed, std::uint32_t sample_starts,
                       std::uint32_t exact_cap) {
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("mixing_time: delta in (0,1)");
    const std::uint32_t n = g.node_count();
    if (!connected_components(g).connected())
        throw std::invalid_argument("mixing_time: graph must be connected");
    if (exact && n > exact_cap)
        throw std::invalid_argument("mixing_time: exact mode capped at " + std::to_string(exact_cap) +
                                    " nodes; use sampled mode");

    std::vector<std::uint32_t> starts;
    if (exact) {
        starts.resize(n);
        for (std::uint32_t v = 0; v < n; ++v) starts[v] = v;
    } else {
        std::set<std::uint32_t> chosen;
        std::uint32_t deg_min_node = 0, deg_max_node = 0;
        for (std::uint32_t v = 0; v < n; ++v) {
            if (g.degree(v) < g.degree(deg_min_node)) deg_min_node = v;
            if (g.degree(v) > g.degree(deg_max_node)) deg_max_node = v;
        }
        chosen.insert(deg_min_node);
        chosen.insert(deg_max_node);
        SplitMix64 stream(mix64(sample_seed, 0x5742ull));
        const std::uint32_t want = std::min<std::uint32_t>(n, sample_starts + 2);
        while (chosen.size() < want) chosen.insert(static_cast<std::uint32_t>(stream.next_below(n)));
        starts.assign(chosen.begin(), chosen.end());
    }

    const Stationary st = stationary(g);
    std::vector<int> taus(starts.size(), 0);
    std::mutex error_mutex;
    std::string error;
    parallel_for_chunks(starts.size(), [&](std::size_t b, std::size_t e) {
        std::vector<double> cur(n), next(n);
        for (std::size_t s = b; s < e; ++s) {
            try {
                taus[s] = mixing_time_with_pi(g, st.probs, starts[s], delta, laziness, t_max, cur,
                                              next);
            } catch (const std::exception& ex) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (error.empty()) error = ex.what();
                taus[s] = -1;
            }
        }
    });
    if (!error.empty()) throw std::runtime_error(error);

    MixingTime out;
    out.exact = exact && starts.size() == n;
    out.starts = static_cast<std::uint32_t>(starts.size());
    out.tau = *std::max_element(taus.begin(), taus.end());
    return out;
}

double canonical_bound(double rho, double pi_min, double delta) {
    if (!(rho > 0.0) || !(pi_min > 0.0 && pi_min < 1.0) || !(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("canonical_bound: rho > 0, pi_min and delta in (0,1)");
    return rho * (std::log(1.0 / pi_min) + std::log(1.0 / delta));
}

double spectral_gap(const Graph& g, double laziness, double tol, std::uint64_t max_iter) {
    const std::uint32_t n = g.node_count();
    if (n < 2) throw std::invalid_argument("spectral_gap: need n >= 2");
    if (!connected_components(g).connected())
        throw std::invalid_argument("spectral_gap: graph must be connected");

    const Stationary st = stationary(g);
    const auto& pi = st.probs;

    // Function-side half-lazy operator (Ax)_i = (x_i + mean of x over the
    // neighbors of i) / 2; self-adjoint in the pi inner product with
    // eigenvalues in [0, 1], top eigenfunction constant.
    std::vector<double> x(n), ax(n);
    SplitMix64 stream(mix64(0xC0FFEEull, n));
    for (double& xi : x) xi = stream.next_unit() - 0.5;

    const auto project_and_normalize = [&](std::vector<double>& v) {
        double mean = 0.0;
        for (std::uint32_t i = 0; i < n; ++i) mean += pi[i] * v[i];
        for (std::uint32_t i = 0; i < n; ++i) v[i] -= mean;
        double norm = 0.0;
        for (std::uint32_t i = 0; i < n; ++i) norm += pi[i] * v[i] * v[i];
        norm = std::sqrt(norm);
        if (norm > 0.0)
            for (double& vi : v) vi /= norm;
        return norm;
    };

    project_and_normalize(x);

    const auto apply = [&](const std::vector<double>& in, std::vector<double>& out) {
        for (std::uint32_t i = 0; i < n; ++i) {
            double acc = 0.0;
            for (std::uint32_t j : g.neighbors(i)) acc += in[j];
            out[i] = 0.5 * (in[i] + acc / g.degree(i));
        }
    };

    // The Rayleigh quotient q_t converges geometrically; Aitken extrapolation
    // of the recorded sequence gives the limit long before the raw iterates
    // settle, which matters when lambda_2 and lambda_3 are close.
    double q = 0.0;
    bool converged = false;
    std::vector<double> history;
    const std::uint64_t check_every = 8;
    for (std::uint64_t it = 1; it <= max_iter && !converged; ++it) {
        apply(x, ax);
        double num = 0.0, den = 0.0;
        for (std::uint32_t i = 0; i < n; ++i) {
            num += pi[i] * x[i] * ax[i];
            den += pi[i] * x[i] * x[i];
        }
        q = den > 0.0 ? num / den : 0.0;
        x.swap(ax);
        const double norm = project_and_normalize(x);
        if (norm == 0.0) {
            q = std::max(q, 0.0);  // operator annihilates the deflated space (e.g. two nodes)
            converged = true;
            break;
        }
        if (it % check_every != 0) continue;
        history.push_back(q);
        const std::size_t m = history.size();
        if (m >= 3) {
            const double d1 = history[m - 1] - history[m - 2];
            const double d2 = history[m - 2] - history[m - 3];
            const double gap_now = std::max(1.0 - q, 1e-300);
            if (std::fabs(d1) <= 1e-17 && std::fabs(d2) <= 1e-17) {
                converged = true;
            } else if (d2 != 0.0) {
                const double r = d1 / d2;
                if (r > 0.0 && r < 0.999999) {
                    const double correction = d1 * r / (1.0 - r);
                    const double q_inf = history[m - 1] + correction;
                    const double err = std::fabs(correction) + std::fabs(d1);
                    if (err <= 0.5 * tol * std::max(1.0 - q_inf, 1e-300)) {
                        q = std::min(q_inf, 1.0);
                        converged = true;
                    }
                } else if (std::fabs(d1) <= 0.01 * tol * gap_now) {
                    converged = true;  // oscillation at rounding level
                }
            }
        }
    }
    if (!converged) {
        std::ostringstream os;
        os << "spectral_gap: no convergence in " << max_iter << " iterations (last gap estimate "
           << (1.0 - q) << ")";
        throw std::runtime_error(os.str());
    }

    const double lambda2_simple = 2.0 * q - 1.0;
    const double lambda2 = laziness + (1.0 - laziness) * lambda2_simple;
    return 1.0 - lambda2;
}

}  // namespace gtg
