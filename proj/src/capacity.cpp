#include "costcap/capacity.hpp"

#include "costcap/structure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

namespace costcap {

namespace {

// Root of rho(x) = 1 by bisection; rho is continuous and strictly
// increasing in x on (0, inf), tending to 0 at 0+ when every cycle has
// positive cost and to infinity as x grows.
double rho_unit_root(const CostPolynomialMatrix& P, double hi_seed) {
	double hi = std::max(1.0, hi_seed);
	int guard = 0;
	while (perron_rho(P, hi) < 1.0) {
		hi *= 2;
		if (++guard > 64)
			throw Error("capacity", "rho(x) stays below 1; cannot bracket root");
	}
	double lo = 0.5;
	guard = 0;
	while (perron_rho(P, lo) >= 1.0) {
		lo /= 2;
		if (++guard > 1024)
			throw Error("capacity",
			            "rho(x) >= 1 for every x > 0; cannot bracket root");
	}

	double mid = 0.5 * (lo + hi);
	for (int it = 0; it < 300; ++it) {
		mid = 0.5 * (lo + hi);
		double r = perron_rho(P, mid);
		if (std::abs(r - 1.0) < 1e-12)
			return mid;
		if (r > 1.0)
			hi = mid;
		else
			lo = mid;
		if (hi - lo < 4 * std::numeric_limits<double>::epsilon() * mid)
			break;
	}
	if (std::abs(perron_rho(P, mid) - 1.0) > 1e-9)
		throw Error("numeric", "bisection for rho(x) = 1 did not converge");
	return mid;
}

} // namespace

CapacityResult variable_length_capacity(const ChannelGraph& g) {
	if (!is_strongly_connected(g))
		throw Error("domain", "capacity requires a strongly connected graph");
	if (has_zero_cost_cycle(g))
		throw Error("capacity",
		            "rho(x) >= 1 for every x > 0 (zero-cost cycle); "
		            "variable-length capacity is unbounded per unit cost");
	CostPolynomialMatrix P = cost_matrix(g);
	double x0 = rho_unit_root(P, 1.0 + double(g.max_cost()));
	return {-std::log2(x0), x0};
}

double alpha_lo(const ChannelGraph& g) {
	if (!is_strongly_connected(g))
		throw Error("domain", "alpha_lo requires a strongly connected graph");
	CostPolynomialMatrix P = cost_matrix(g);
	SpectralPoint sp = perron(P, 1.0, false);
	if (sp.rho_prime <= 0)
		throw Error("degenerate", "rho'(1) <= 0; all edges cost zero");
	return sp.rho / sp.rho_prime;
}

Rat min_mean_cycle(const ChannelGraph& g) {
	if (!is_strongly_connected(g) || g.edges.empty())
		throw Error("domain",
		            "minimum mean cycle requires a strongly connected graph "
		            "with at least one edge");
	int n = g.vertex_count();
	const long long INF = std::numeric_limits<long long>::max() / 4;
	// d[k][v] = least cost of a length-k walk from vertex 0 to v.
	std::vector<std::vector<long long>> d(n + 1,
	                                      std::vector<long long>(n, INF));
	d[0][0] = 0;
	for (int k = 1; k <= n; ++k)
		for (const Edge& e : g.edges)
			if (d[k - 1][e.init] < INF)
				d[k][e.term] =
					std::min(d[k][e.term], d[k - 1][e.init] + e.cost);

	bool found = false;
	Rat best{0, 1};
	for (int v = 0; v < n; ++v) {
		if (d[n][v] >= INF)
			continue;
		bool vfound = false;
		Rat vmax{0, 1};
		for (int k = 0; k < n; ++k) {
			if (d[k][v] >= INF)
				continue;
			Rat cand(d[n][v] - d[k][v], n - k);
			if (!vfound || vmax < cand) {
				vmax = cand;
				vfound = true;
			}
		}
		if (vfound && (!found || vmax < best)) {
			best = vmax;
			found = true;
		}
	}
	if (!found)
		throw Error("numeric", "minimum mean cycle computation failed");
	return best;
}

AlphaUp alpha_up(const ChannelGraph& g) {
	Rat t_min = min_mean_cycle(g);
	if (t_min.num == 0)
		return {0.0, true};
	return {Rat(t_min.den, t_min.num).to_double(), false};
}

double alpha_up_numeric(const ChannelGraph& g) {
	CostPolynomialMatrix P = cost_matrix(g);
	auto f = [&](double x) {
		SpectralPoint sp = perron(P, x, false);
		return sp.rho / (x * sp.rho_prime);
	};
	double a0 = f(1e-2), a1 = f(1e-3), a2 = f(1e-4);
	// Aitken extrapolation of the geometric tail; fall back to the
	// smallest-x sample when the differences cancel.
	double d1 = a1 - a0, d2 = a2 - a1;
	double denom = d2 - d1;
	if (std::abs(denom) < 1e-14 * (std::abs(a2) + 1))
		return a2;
	double extrap = a2 - d2 * d2 / denom;
	if (!std::isfinite(extrap))
		return a2;
	return extrap;
}

double critical_x(const ChannelGraph& g, double alpha) {
	if (alpha <= 0)
		throw Error("domain", "alpha must be positive");
	if (!is_strongly_connected(g))
		throw Error("domain", "critical x requires a strongly connected graph");
	StructureReport rep = analyze_structure(g);
	if (!rep.cost_diverse)
		throw Error("degenerate",
		            "cost-uniform graph: x rho'(x)/rho(x) is constant and "
		            "x0(alpha) is undefined");
	CostPolynomialMatrix P = cost_matrix(g);
	auto f = [&](double x) { // strictly increasing in x
		SpectralPoint sp = perron(P, x, false);
		return x * sp.rho_prime / sp.rho;
	};
	double target = 1.0 / alpha;

	double lo = 1e-6, hi = 1.0 + double(g.max_cost());
	int guard = 0;
	for (double fl = f(lo); !(fl <= target); fl = f(lo)) {
		lo /= 4;
		// Underflow of rho(lo) before the bracket closes means the limit
		// value f(0+) already sits above the target.
		if (!std::isfinite(fl) || ++guard > 300)
			throw Error("domain",
			            "alpha is at or above alpha_up; no critical x exists");
	}
	guard = 0;
	for (double fh = f(hi); !(fh >= target); fh = f(hi)) {
		hi *= 2;
		if (!std::isfinite(fh) || ++guard > 300)
			throw Error("domain",
			            "alpha is at or below the lower admissible limit; no "
			            "critical x exists");
	}

	double mid = 0.5 * (lo + hi);
	for (int it = 0; it < 400; ++it) {
		mid = 0.5 * (lo + hi);
		double val = f(mid);
		if (std::abs(val - target) < 1e-12)
			return mid;
		if (val < target)
			lo = mid;
		else
			hi = mid;
		if (hi - lo < 4 * std::numeric_limits<double>::epsilon() * mid)
			break;
	}
	if (std::abs(f(mid) - target) > 1e-10)
		throw Error("numeric", "bisection for the critical x did not converge");
	return mid;
}

double fixed_length_capacity(const ChannelGraph& g, double alpha) {
	if (alpha <= 0)
		throw Error("domain", "alpha must be positive");
	StructureReport rep = analyze_structure(g);
	if (!rep.cost_diverse)
		throw Error("degenerate",
		            "cost-uniform graph: the fixed-length capacity has no "
		            "concave regime");
	CostPolynomialMatrix P = cost_matrix(g);
	double a_lo = alpha_lo(g);
	if (alpha <= a_lo)
		return alpha * std::log2(perron_rho(P, 1.0));
	AlphaUp a_up = alpha_up(g);
	if (!a_up.infinite && alpha >= a_up.value)
		return 0.0;
	double x0 = critical_x(g, alpha);
	return -std::log2(x0) + alpha * std::log2(perron_rho(P, x0));
}

CapacityCurve capacity_curve(const ChannelGraph& g, int samples, int threads) {
	if (samples < 1)
		throw Error("domain", "need at least one curve sample");
	StructureReport rep = analyze_structure(g);
	if (!rep.cost_diverse)
		throw Error("degenerate",
		            "cost-uniform graph: capacity-cost curve is the line "
		            "alpha log2 rho(1)");

	CapacityCurve curve;
	CapacityResult vc = variable_length_capacity(g);
	curve.C = vc.C;
	curve.alpha_lo = alpha_lo(g);
	AlphaUp up = alpha_up(g);
	curve.alpha_up = up.value;
	curve.alpha_up_infinite = up.infinite;

	CostPolynomialMatrix P = cost_matrix(g);
	{
		SpectralPoint sp = perron(P, vc.x0, false);
		curve.alpha_star = 1.0 / (vc.x0 * sp.rho_prime);
	}

	double span_hi = up.infinite ? 4.0 * curve.alpha_star : up.value;
	std::vector<double> alphas;
	for (int i = 1; i <= samples; ++i)
		alphas.push_back(span_hi * double(i) / double(samples + 1));
	alphas.push_back(curve.alpha_lo);
	alphas.push_back(curve.alpha_star);
	std::sort(alphas.begin(), alphas.end());
	alphas.erase(std::unique(alphas.begin(), alphas.end(),
	                         [](double a, double b) {
		                         return std::abs(a - b) < 1e-14;
	                         }),
	             alphas.end());

	curve.samples.assign(alphas.size(), CurveSample{});
	auto work = [&](size_t begin, size_t step) {
		for (size_t i = begin; i < alphas.size(); i += step) {
			CurveSample s;
			s.alpha = alphas[i];
			s.capacity = fixed_length_capacity(g, alphas[i]);
			if (alphas[i] > curve.alpha_lo + 1e-13 &&
			    (up.infinite || alphas[i] < up.value - 1e-13))
				s.x0 = critical_x(g, alphas[i]);
			curve.samples[i] = s;
		}
	};
	if (threads <= 1) {
		work(0, 1);
	} else {
		std::vector<std::thread> pool;
		for (int t = 0; t < threads; ++t)
			pool.emplace_back(work, size_t(t), size_t(threads));
		for (auto& th : pool)
			th.join();
	}

	double at_star = fixed_length_capacity(g, curve.alpha_star);
	if (std::abs(at_star - curve.C) > 1e-9)
		throw Error("numeric",
		            "curve consistency check failed: C(alpha*) != C");
	return curve;
}

} // namespace costcap
