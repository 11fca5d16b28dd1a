#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gtg/rng.hpp"

namespace gtg {

enum class WeightKind { Exponential, Pareto, Constant };

// Node-weight distribution. Three stock families:
//   exponential      F(x) = 1 - e^-x            on x >= 0
//   pareto(gamma)    F(x) = 1 - x^-gamma        on x >= 1, gamma > d
//   constant(w0)     point mass at w0 (reduces the threshold model to a
//                    plain geometric graph; a degenerate extension)
// All have closed-form cdf, quantile and mean.
class WeightDistribution {
  public:
    static WeightDistribution exponential();
    static WeightDistribution pareto(double gamma);
    static WeightDistribution constant(double w0);

    // Parses "exp", "pareto:<gamma>", "const:<w0>".
    static WeightDistribution parse(const std::string& spec);
    std::string spec() const;

    WeightKind kind() const { return kind_; }
    double gamma() const { return param_; }
    double w0() const { return param_; }

    double mean() const;
    double support_min() const;  // left edge of the support

    // F(x); x < support -> 0 by convention.
    double cdf(double x) const;

    // F^-1(p) for p in [0,1). Throws for p outside [0,1).
    double quantile(double p) const;

    // F^-1(1-q) computed directly from the tail mass q in (0,1]; avoids the
    // cancellation in 1-p when q is tiny. q <= 0 throws, q > 1 clamps to the
    // support edge.
    double quantile_tail(double q) const;

    // Inverse-transform draw quantile(u) from a uniform u in [0,1).
    double sample_from_unit(double u) const;
    double sample(SplitMix64& rng) const { return sample_from_unit(rng.next_unit()); }

  private:
    WeightDistribution(WeightKind k, double p) : kind_(k), param_(p) {}
    WeightKind kind_;
    double param_;  // gamma for pareto, w0 for constant, unused otherwise
};

// Slowly growing auxiliary function used in the max-weight window:
// max(2, ln ln n).
double omega_default(double n);

struct MaxWeightBounds {
    double lower;  // W1 = F^-1(1 - omega/n)
    double upper;  // W2 = F^-1(1 - 1/(n*omega))
};

// Window [W1, W2] that contains the maximum of n i.i.d. weights with
// probability exp(-1/omega) - exp(-omega). Requires 1 < omega < n.
MaxWeightBounds max_weight_bounds(const WeightDistribution& dist, double n, double omega);

// Descending weight thresholds a_0 > a_1 > ... > a_M with a_0 the max-weight
// upper bound W2 and a_M = F^-1(1-alpha). Defines the weight classes
//   B   = { w <= a_M }                  (low weight)
//   A_k = { w in (a_k, a_{k-1}] }       for 1 <= k <= M
// used in the congestion accounting; weights above a_0 fall into A_1.
struct WeightPartition {
    double alpha = 0.5;
    double epsilon = 0.1;
    double nu = 1.0;
    std::vector<double> endpoints;  // a_0 .. a_M, strictly descending

    int last_index() const { return static_cast<int>(endpoints.size()) - 1; }  // M
    double low_cutoff() const { return endpoints.back(); }                     // a_M
    int class_count() const { return last_index() + 1; }                       // B + A_1..A_M

    // 0 for B, k for A_k.
    int classify(double w) const;
    static std::string class_name(int cls);
};

// a_0 = W2(n, omega); a_k = max(F^-1(1 - a_{k-1}^-(1+eps)), F^-1(1-alpha))
// iterated until the cutoff is reached. Requires 0 < eps < nu/(2d) and
// alpha in (0,1). Throws with a diagnostic if the sequence stops decreasing
// before reaching the cutoff.
WeightPartition build_partition(const WeightDistribution& dist, double n, int d,
                                double alpha, double epsilon, double nu, double omega);

// Defaults satisfying 0 < eps < nu/(2d) strictly: nu = d for exponential
// (any positive value works for a super-polynomial tail), gamma - d for
// pareto, d for constant; eps = min(0.1, 0.9 * nu/(2d)).
double default_nu(const WeightDistribution& dist, int d);
double default_epsilon(double nu, int d);

// Prefactor for the admissible threshold constant. The geometric form
// (d+3)^(-d/2) is what the adjacent-cube edge guarantee needs and matches
// the closed forms below; the reciprocal 1/(d+3) variant is kept behind this
// switch (they agree at d=2).
enum class CPrefactor { SqrtPower, Reciprocal };

// Largest threshold constant c for which every high-weight pair in adjacent
// grid cells is guaranteed adjacent:
//   prefactor(d) * min{ sup_{x in (0,1/2]} x F^-1(x),
//                       sup_{x in (1/2,1)} (1-x) F^-1(x) }.
// The sups are evaluated by golden-section search; closed forms exist for
// the stock distributions and are cross-checked in tests.
double admissible_c(const WeightDistribution& dist, int d,
                    CPrefactor prefactor = CPrefactor::SqrtPower);

// Closed-form sufficient constants for the stock distributions:
// exponential -> 1/((d+3)^(d/2) e), pareto -> 1/((d+3)^(d/2) 2^((g-1)/g)),
// constant(w0) -> w0/(2 (d+3)^(d/2)). For the exponential this is slightly
// larger than admissible_c (it keeps only the (1/2,1) branch of the min).
double reference_c_bound(const WeightDistribution& dist, int d);

// Connectivity-threshold constant sup_{a in (0,1)} a F^-1(1-a) / 4.
double connectivity_c_bound(const WeightDistribution& dist);

// Default experiment constant: 0.9 * min(connectivity bound, admissible_c).
double effective_c_default(const WeightDistribution& dist, int d);

}  // namespace gtg
