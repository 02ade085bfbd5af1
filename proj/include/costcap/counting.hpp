#pragma once

#include <complex>
#include <gmpxx.h>
#include <optional>
#include <string>
#include <vector>

#include "costcap/graph.hpp"
#include "costcap/poly.hpp"
#include "costcap/structure.hpp"

namespace costcap {

// Exact counts N(t,n) of distinct words of length n generated from the
// start vertex by paths of cost <= t. Row n = 0 is all ones (the empty
// word); values are nondecreasing in t.
struct CountTable {
	int start = 0;
	long long T = 0;
	long long N = 0;
	std::vector<std::vector<mpz_class>> values; // [t][n]

	const mpz_class& at(long long t, long long n) const {
		return values[size_t(t)][size_t(n)];
	}
};

// DP over the recursion N_v(t,n) = sum_e N_{term(e)}(t - tau(e), n - 1),
// N_v(t,0) = 1, zero for t < 0 or n < 0. The n-outer / t-inner order keeps
// the recursion well-founded even with zero-cost edges. Requires a
// deterministic graph (else words and paths diverge).
CountTable count_table(const ChannelGraph& g, int v, long long T, long long Nmax);

// Single value N_v(t, n) via the same layered DP but keeping only two
// layers (memory O(|V| * t) instead of the full table).
mpz_class count_single(const ChannelGraph& g, int v, long long t, long long n);

// Totals N_v(t) = sum_n N_v(t,n) for t = 0..T via
// N_v(t) = 1 + sum_e N_{term(e)}(t - tau(e)). With zero-cost edges the
// per-t evaluation follows a topological order of the zero-cost subgraph;
// a zero-cost cycle makes the language infinite and raises an error.
std::vector<mpz_class> count_totals(const ChannelGraph& g, int v, long long T);

// H(x) = (1-x) det(I - P(x)) and Q(x) = [adj(I - P(x)) 1^T]_v, both with
// exact integer coefficients. The generating function of N_v(t) is Q/H.
struct DenomNumer {
	IntPoly H;
	IntPoly Q;
};
DenomNumer denominator_and_numerator(const ChannelGraph& g, int v);

// N(t) = sum_i Pi_i(t) x_i^{-t} over the roots of H, with deg Pi_i =
// multiplicity - 1.
struct ExpansionRoot {
	std::complex<double> x;
	int multiplicity = 1;
	std::vector<std::complex<double>> pi; // Pi_i(t) coefficients, pi[k] * t^k
};
struct ExactExpansion {
	std::vector<ExpansionRoot> roots;
	IntPoly H;
	IntPoly Q;

	double eval(long long t) const; // real part; imaginary part is checked
};

// Roots via the companion matrix, clustered to multiplicities at 1e-8
// (with a cluster-diameter / root-gap ratio guard of 1e-3), then a partial
// fraction decomposition: residue formula for simple roots, a linear
// system on sample-point evaluations when multiplicities appear.
ExactExpansion exact_expansion(const ChannelGraph& g, int v);

enum class Regime { linear, concave, void_ };

struct AsymptoticTerm {
	int k = 0; // cost-period residue (concave regime; 0 in linear)
	int j = 0; // period residue
	std::complex<double> value;
};

struct AsymptoticEstimate {
	long long t = 0;
	long long n = 0; // n = alpha * t, integral
	Regime regime = Regime::linear;
	double estimate = 0;
	std::vector<AsymptoticTerm> terms;
};

// Leading-order asymptotics of N(t, n), n = alpha t (alpha passed as the
// exact pair (n, t) so the formulas are only evaluated at integer n).
//
// Linear regime (alpha < rho(1)/rho'(1)): sum over the d max-modulus
// eigenpairs lambda_j = rho(1) e^{2pi i j/d} of lambda_j^n [u_j^T v_j 1^T]_v.
// Concave regime: double sum over cost-period residues k and period
// residues j of
//   (e^{2pi i b k/c} lambda_j(x0))^n (x0 e^{2pi i k/c})^{-t}
//   * t^{-1/2}/sqrt(2 pi alpha J(x0))
//   * [D_k^{-1} u_j^T v_j D_k 1^T]_v / (1 - x0 e^{2pi i k/c}),
// with x0 the critical point of alpha. Above alpha_up the count is
// eventually zero ("void"). Leading order only.
AsymptoticEstimate asymptotic_fixed_length(const ChannelGraph& g, int v,
                                           long long n, long long t);

} // namespace costcap
