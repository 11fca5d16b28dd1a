#include "gtg/weights.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace gtg {

WeightDistribution WeightDistribution::exponential() {
    return WeightDistribution(WeightKind::Exponential, 0.0);
}

WeightDistribution WeightDistribution::pareto(double gamma) {
    if (!(gamma > 1.0)) throw std::invalid_argument("pareto: gamma must be > 1 for a finite mean");
    return WeightDistribution(WeightKind::Pareto, gamma);
}

WeightDistribution WeightDistribution::constant(double w0) {
    if (!(w0 >= 0.0)) throw std::invalid_argument("constant: w0 must be >= 0");
    return WeightDistribution(WeightKind::Constant, w0);
}

WeightDistribution WeightDistribution::parse(const std::string& spec) {
    if (spec == "exp") return exponential();
    auto colon = spec.find(':');
    if (colon != std::string::npos) {
        const std::string head = spec.substr(0, colon);
        const std::string arg = spec.substr(colon + 1);
        std::size_t used = 0;
        double value = std::stod(arg, &used);
        if (used != arg.size()) throw std::invalid_argument("bad numeric argument in '" + spec + "'");
        if (head == "pareto") return pareto(value);
        if (head == "const") return constant(value);
    }
    throw std::invalid_argument("unknown weight distribution '" + spec +
                                "' (expected exp, pareto:<gamma>, const:<w0>)");
}

std::string WeightDistribution::spec() const {
    std::ostringstream os;
    switch (kind_) {
        case WeightKind::Exponential: return "exp";
        case WeightKind::Pareto: os << "pareto:" << param_; return os.str();
        case WeightKind::Constant: os << "const:" << param_; return os.str();
    }
    return "?";
}

double WeightDistribution::mean() const {
    switch (kind_) {
        case WeightKind::Exponential: return 1.0;
        case WeightKind::Pareto: return param_ / (param_ - 1.0);
        case WeightKind::Constant: return param_;
    }
    return 0.0;
}

double WeightDistribution::support_min() const {
    switch (kind_) {
        case WeightKind::Exponential: return 0.0;
        case WeightKind::Pareto: return 1.0;
        case WeightKind::Constant: return param_;
    }
    return 0.0;
}

double WeightDistribution::cdf(double x) const {
    switch (kind_) {
        case WeightKind::Exponential: return x <= 0.0 ? 0.0 : -std::expm1(-x);
        case WeightKind::Pareto: return x <= 1.0 ? 0.0 : 1.0 - std::pow(x, -param_);
        case WeightKind::Constant: return x < param_ ? 0.0 : 1.0;
    }
    return 0.0;
}

double WeightDistribution::quantile(double p) const {
    if (!(p >= 0.0 && p < 1.0)) throw std::invalid_argument("quantile: p must be in [0,1)");
    return quantile_tail(1.0 - p);
}

double WeightDistribution::quantile_tail(double q) const {
    if (!(q > 0.0)) throw std::invalid_argument("quantile_tail: tail mass must be positive");
    if (q > 1.0) q = 1.0;
    switch (kind_) {
        case WeightKind::Exponential: return q >= 1.0 ? 0.0 : -std::log(q);
        case WeightKind::Pareto: return q >= 1.0 ? 1.0 : std::pow(q, -1.0 / param_);
        case WeightKind::Constant: return param_;
    }
    return 0.0;
}

double WeightDistribution::sample_from_unit(double u) const { return quantile(u); }

double omega_default(double n) {
    if (n <= 3.0) return 2.0;
    return std::max(2.0, std::log(std::log(n)));
}

MaxWeightBounds max_weight_bounds(const WeightDistribution& dist, double n, double omega) {
    if (!(omega > 1.0)) throw std::invalid_argument("max_weight_bounds: omega must exceed 1");
    if (!(omega < n)) throw std::invalid_argument("max_weight_bounds: omega/n must be < 1");
    return MaxWeightBounds{dist.quantile_tail(omega / n), dist.quantile_tail(1.0 / (n * omega))};
}

int WeightPartition::classify(double w) const {
    if (w <= low_cutoff()) return 0;
    // w in (a_k, a_{k-1}] -> A_k; anything above a_0 joins A_1.
    const int m = last_index();
    for (int k = 1; k <= m; ++k) {
        if (w > endpoints[k]) return k;
    }
    return m;  // w == low_cutoff handled above; unreachable for valid partitions
}

std::string WeightPartition::class_name(int cls) {
    if (cls == 0) return "B";
    return "A" + std::to_string(cls);
}

WeightPartition build_partition(const WeightDistribution& dist, double n, int d,
                                double alpha, double epsilon, double nu, double omega) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("build_partition: alpha in (0,1)");
    if (!(epsilon > 0.0 && epsilon < nu / (2.0 * d)))
        throw std::invalid_argument("build_partition: need 0 < epsilon < nu/(2d)");

    WeightPartition part;
    part.alpha = alpha;
    part.epsilon = epsilon;
    part.nu = nu;

    const double cutoff = dist.quantile_tail(alpha);
    double a = max_weight_bounds(dist, n, omega).upper;
    if (a <= cutoff) a = cutoff;  // no high-weight spread (e.g. constant weights)
    part.endpoints.push_back(a);

    const int iteration_cap = 10000;
    for (int it = 0; a > cutoff; ++it) {
        if (it >= iteration_cap)
            throw std::runtime_error("build_partition: endpoint iteration did not reach the cutoff");
        const double tail = std::pow(a, -(1.0 + epsilon));
        double next = tail >= 1.0 ? dist.support_min() : dist.quantile_tail(tail);
        next = std::max(next, cutoff);
        if (!(next < a))
            throw std::runtime_error("build_partition: endpoints stopped decreasing at a=" +
                                     std::to_string(a));
        part.endpoints.push_back(next);
        a = next;
    }
    return part;
}

double default_nu(const WeightDistribution& dist, int d) {
    switch (dist.kind()) {
        case WeightKind::Pareto: return dist.gamma() - d;
        default: return static_cast<double>(d);
    }
}

double default_epsilon(double nu, int d) {
    return std::min(0.1, 0.9 * nu / (2.0 * d));
}

namespace {

// Golden-section maximization of a unimodal f on [lo, hi]; the endpoints are
// evaluated as well, so boundary suprema come out exact.
double golden_max(const std::function<double(double)>& f, double lo, double hi, double tol) {
    const double phi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - phi * (b - a);
    double x2 = a + phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = f(x1);
        }
    }
    return std::max({f((a + b) / 2.0), f(lo), f(hi)});
}

double c_prefactor(int d, CPrefactor prefactor) {
    if (prefactor == CPrefactor::Reciprocal) return 1.0 / (d + 3.0);
    return std::pow(d + 3.0, -0.5 * d);
}

}  // namespace

double admissible_c(const WeightDistribution& dist, int d, CPrefactor prefactor) {
    const double eps = 1e-13;
    const auto low_branch = [&](double x) { return x * dist.quantile(x); };
    const auto high_branch = [&](double x) { return (1.0 - x) * dist.quantile(x); };
    const double sup_low = golden_max(low_branch, eps, 0.5, 1e-13);
    const double sup_high = golden_max(high_branch, 0.5 + eps, 1.0 - eps, 1e-13);
    return c_prefactor(d, prefactor) * std::min(sup_low, sup_high);
}

double reference_c_bound(const WeightDistribution& dist, int d) {
    const double pref = std::pow(d + 3.0, -0.5 * d);
    switch (dist.kind()) {
        case WeightKind::Exponential: return pref / std::exp(1.0);
        case WeightKind::Pareto: {
            const double g = dist.gamma();
            return pref * std::pow(2.0, -(g - 1.0) / g);
        }
        case WeightKind::Constant: return pref * dist.w0() / 2.0;
    }
    return 0.0;
}

double connectivity_c_bound(const WeightDistribution& dist) {
    const double eps = 1e-13;
    const auto f = [&](double a) { return a * dist.quantile_tail(a); };
    return golden_max(f, eps, 1.0 - eps, 1e-13) / 4.0;
}

double effective_c_default(const WeightDistribution& dist, int d) {
    return 0.9 * std::min(connectivity_c_bound(dist), admissible_c(dist, d));
}

}  // namespace gtg
