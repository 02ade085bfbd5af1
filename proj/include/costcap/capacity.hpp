#pragma once

#include <optional>
#include <vector>

#include "costcap/graph.hpp"
#include "costcap/spectral.hpp"

namespace costcap {

struct CurveSample {
	double alpha = 0;
	double capacity = 0;
	std::optional<double> x0; // absent in the linear and void regimes
};

struct CapacityCurve {
	double alpha_lo = 0;
	double alpha_up = 0;      // +infinity when a zero-cost cycle exists
	bool alpha_up_infinite = false;
	double alpha_star = 0;
	double C = 0;             // variable-length capacity, bits
	std::vector<CurveSample> samples; // increasing alpha
};

// Variable-length capacity: C = -log2 x0 with rho(x0) = 1, found by
// bisection on the strictly increasing rho (|rho(x0)-1| < 1e-12).
struct CapacityResult {
	double C = 0;
	double x0 = 0;
};
CapacityResult variable_length_capacity(const ChannelGraph& g);

// rho(1)/rho'(1): below this alpha the capacity-cost function is linear.
double alpha_lo(const ChannelGraph& g);

// 1/T_min with T_min the minimum mean cycle cost (Karp); +infinity —
// signalled by the bool — when a zero-cost cycle exists.
struct AlphaUp {
	double value = 0;
	bool infinite = false;
};
AlphaUp alpha_up(const ChannelGraph& g);

// Numeric x->0+ limit of rho/(x rho') sampled at 1e-2, 1e-3, 1e-4;
// cross-validation oracle for alpha_up.
double alpha_up_numeric(const ChannelGraph& g);

// Minimum mean cycle cost (Karp's algorithm), exact rational.
Rat min_mean_cycle(const ChannelGraph& g);

// Solve alpha * x * rho'(x) = rho(x) by bisection on the strictly
// increasing f(x) = x rho'(x)/rho(x), to |f(x0) - 1/alpha| < 1e-12.
// Throws a domain error when 1/alpha is outside the range of f.
double critical_x(const ChannelGraph& g, double alpha);

// Capacity-cost function C(alpha) (bits): alpha <= alpha_lo gives
// alpha*log2 rho(1); between the thresholds -log2 x0 + alpha*log2 rho(x0);
// above alpha_up the value is 0. Requires a cost-diverse graph.
double fixed_length_capacity(const ChannelGraph& g, double alpha);

// Uniform alpha grid on (0, alpha_up) plus the exact points alpha_lo and
// alpha_star = 2^C / rho'(2^{-C}); checks C(alpha_star) == C to 1e-9.
// `threads` > 1 parallelizes the sweep; each sample is computed from
// scratch so the result is identical for any thread count.
CapacityCurve capacity_curve(const ChannelGraph& g, int nSamples,
                             int threads = 1);

} // namespace costcap
