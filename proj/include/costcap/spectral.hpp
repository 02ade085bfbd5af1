#pragma once

#include <complex>
#include <vector>

#include "costcap/graph.hpp"
#include "costcap/poly.hpp"
#include "costcap/rational.hpp"

namespace costcap {

// Cost-enumerator matrix P(x): entry (i,j) sums x^{tau(e)} over the edges
// v_i -> v_j, so coefficients count parallel edges per cost.
struct CostPolynomialMatrix {
	int dim = 0;
	std::vector<std::vector<IntPoly>> entries; // [dim][dim]

	std::vector<std::vector<double>> eval(double x) const;
	std::vector<std::vector<std::complex<double>>>
	eval(std::complex<double> x) const;
	// Entrywise derivative d/dx, evaluated at x.
	std::vector<std::vector<double>> eval_derivative(double x) const;
};

CostPolynomialMatrix cost_matrix(const ChannelGraph& g);

// Perron data of P(x) at a fixed x > 0.
struct SpectralPoint {
	double x = 0;
	double rho = 0;             // dominant eigenvalue (real, simple)
	double rho_prime = 0;       // d(rho)/dx
	std::vector<double> u;      // right eigenvector, strictly positive
	std::vector<double> v;      // left eigenvector, v.u = 1
	double J = 0;               // d^2/ds^2 log rho(e^s) at s = log x
};

// Dominant eigenpair by power iteration. For periodic graphs the Perron
// root ties in modulus with d-1 complex rotations, so the iteration runs
// on P(x) + eps*I (eps = 1e-3 * row-sum estimate), which keeps the
// eigenvectors and separates the moduli; eps is subtracted afterwards.
// rho' comes from the eigenvector identity rho' = v P'(x) u^T (with
// v u^T = 1); J = d^2/ds^2 log rho(e^s) follows from second-order
// eigenvalue perturbation theory (one bordered linear solve), so it is
// accurate to machine precision rather than difference-quotient noise.
//
// `with_curvature=false` skips the J computation; J is then left at 0.
SpectralPoint perron(const CostPolynomialMatrix& P, double x,
                     bool with_curvature = true, double tol = 1e-13);

// Convenience: spectral radius alone.
double perron_rho(const CostPolynomialMatrix& P, double x);

// Largest eigenvalue modulus of the complex matrix P(z).
double dominant_modulus(const CostPolynomialMatrix& P, std::complex<double> z);

// Verify the rotation similarity
//   P(x e^{2pi i k/c}) = e^{2pi i k b/c} D_k^{-1} P(x) D_k,   k = 0..c-1,
// with D_k = diag(e^{2pi i k B(v_j)/c}), to 1e-10 relative; and verify the
// dominant-modulus strict drop off the lattice points (sampled at the
// midpoints phi = 2pi(k+1/2)/c).
bool spectral_rotation_check(const CostPolynomialMatrix& P, double x,
                             long long c, const Rat& b,
                             const std::vector<Rat>& B,
                             std::string* violation = nullptr);

// adj(rho I - P(x)) must have rank one and a uniform sign (it is a positive
// multiple of u^T v). Checked numerically via cofactors + SVD.
bool adjugate_rank1_check(const CostPolynomialMatrix& P, double x);

// Sample g(s) = log rho(e^s) on `sgrid`; strict convexity (all second
// differences > 0) is required when cost_diverse, linearity (|.| <= 1e-9)
// otherwise.
bool loglog_convexity_check(const CostPolynomialMatrix& P, bool cost_diverse,
                            const std::vector<double>& sgrid);

} // namespace costcap
