#include "costcap/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace costcap {

namespace {

constexpr double TWO_PI = 2.0 * std::numbers::pi;

using Mat = std::vector<std::vector<double>>;
using CMat = std::vector<std::vector<std::complex<double>>>;

Eigen::MatrixXcd to_eigen(const CMat& m) {
	int n = int(m.size());
	Eigen::MatrixXcd e(n, n);
	for (int i = 0; i < n; ++i)
		for (int j = 0; j < n; ++j)
			e(i, j) = m[i][j];
	return e;
}

Eigen::MatrixXd to_eigen(const Mat& m) {
	int n = int(m.size());
	Eigen::MatrixXd e(n, n);
	for (int i = 0; i < n; ++i)
		for (int j = 0; j < n; ++j)
			e(i, j) = m[i][j];
	return e;
}

// Dominant eigenvalue + eigenvector of the nonnegative matrix A by power
// iteration on A + eps*I. Collatz-Wielandt ratios give two-sided bounds,
// so the stopping rule is exact: max ratio - min ratio <= tol * max ratio.
struct PowerResult {
	double lambda; // of A itself (shift removed)
	std::vector<double> vec;
};

PowerResult power_iterate(const Mat& A, double tol) {
	int n = int(A.size());
	double est = 0;
	for (int i = 0; i < n; ++i) {
		double row = 0;
		for (int j = 0; j < n; ++j)
			row += A[i][j];
		est = std::max(est, row);
	}
	if (est == 0.0) // no edges at all; degenerate but well-defined
		return {0.0, std::vector<double>(n, 1.0)};

	double eps = 1e-3 * est;
	std::vector<double> w(n, 1.0 / n), w2(n);
	const long long cap = 1000000;
	double lo = 0, hi = 0;
	// Rounding noise re-excites the subdominant directions each step, so
	// the ratio spread bottoms out near ulp/gap instead of shrinking to
	// zero; keep the tightest bracket seen and accept it once the spread
	// has clearly stagnated (the bracket stays a valid two-sided bound).
	double best_spread = std::numeric_limits<double>::infinity();
	double best_lo = 0, best_hi = 0;
	std::vector<double> best_w;
	long long best_it = 0;
	for (long long it = 0; it < cap; ++it) {
		for (int i = 0; i < n; ++i) {
			double acc = eps * w[i];
			for (int j = 0; j < n; ++j)
				acc += A[i][j] * w[j];
			w2[i] = acc;
		}
		lo = std::numeric_limits<double>::infinity();
		hi = 0;
		for (int i = 0; i < n; ++i) {
			double r = w2[i] / w[i];
			lo = std::min(lo, r);
			hi = std::max(hi, r);
		}
		double sum = 0;
		for (int i = 0; i < n; ++i)
			sum += w2[i];
		for (int i = 0; i < n; ++i)
			w[i] = w2[i] / sum;
		if (hi - lo <= tol * hi)
			return {0.5 * (hi + lo) - eps, w};
		if (hi - lo < best_spread) {
			best_spread = hi - lo;
			best_lo = lo;
			best_hi = hi;
			best_w = w;
			best_it = it;
		} else if (it - best_it > 1000 && best_spread <= 1e-9 * best_hi) {
			return {0.5 * (best_lo + best_hi) - eps, best_w};
		}
	}
	throw Error("numeric", "power iteration did not converge");
}

Mat transpose(const Mat& A) {
	int n = int(A.size());
	Mat T(n, std::vector<double>(n));
	for (int i = 0; i < n; ++i)
		for (int j = 0; j < n; ++j)
			T[j][i] = A[i][j];
	return T;
}

} // namespace

std::vector<std::vector<double>> CostPolynomialMatrix::eval(double x) const {
	Mat m(dim, std::vector<double>(dim));
	for (int i = 0; i < dim; ++i)
		for (int j = 0; j < dim; ++j)
			m[i][j] = entries[i][j].eval(x);
	return m;
}

CMat CostPolynomialMatrix::eval(std::complex<double> x) const {
	CMat m(dim, std::vector<std::complex<double>>(dim));
	for (int i = 0; i < dim; ++i)
		for (int j = 0; j < dim; ++j)
			m[i][j] = entries[i][j].eval(x);
	return m;
}

std::vector<std::vector<double>>
CostPolynomialMatrix::eval_derivative(double x) const {
	Mat m(dim, std::vector<double>(dim));
	for (int i = 0; i < dim; ++i)
		for (int j = 0; j < dim; ++j)
			m[i][j] = entries[i][j].derivative().eval(x);
	return m;
}

CostPolynomialMatrix cost_matrix(const ChannelGraph& g) {
	CostPolynomialMatrix P;
	P.dim = g.vertex_count();
	P.entries.assign(P.dim, std::vector<IntPoly>(P.dim));
	for (const Edge& e : g.edges)
		P.entries[e.init][e.term] =
			P.entries[e.init][e.term] + IntPoly::monomial(1, int(e.cost));
	return P;
}

double perron_rho(const CostPolynomialMatrix& P, double x) {
	if (x <= 0)
		throw Error("domain", "spectral evaluation requires x > 0");
	return power_iterate(P.eval(x), 1e-13).lambda;
}

namespace {

// Curvature of s -> log rho(e^s) from exact eigenvalue perturbation
// theory rather than divided differences: with v P'(x) u = rho'(x) and
// the correction u1 solving (rho I - A) u1 = (P'(x) - rho' I) u with
// v.u1 = 0, the second derivative is rho'' = v P''(x) u + 2 v P'(x) u1,
// and the chain rule in s = log x gives
//   J = (x rho' + x^2 rho'') / rho - (x rho' / rho)^2.
// The singular system is solved through the rank-one bordered matrix
// rho I - A + rho u v^T, which is nonsingular and pins v.u1 = 0 because
// the right-hand side is orthogonal to v.
double curvature(const CostPolynomialMatrix& P, double x, double rho,
                 double rho_prime, const std::vector<double>& u,
                 const std::vector<double>& v) {
	int n = P.dim;
	Eigen::MatrixXd A(n, n), D1(n, n), D2(n, n);
	for (int i = 0; i < n; ++i)
		for (int j = 0; j < n; ++j) {
			const IntPoly& p = P.entries[i][j];
			A(i, j) = p.eval(x);
			IntPoly dp = p.derivative();
			D1(i, j) = dp.eval(x);
			D2(i, j) = dp.derivative().eval(x);
		}

	Eigen::VectorXd ue(n), ve(n);
	for (int i = 0; i < n; ++i) {
		ue(i) = u[i];
		ve(i) = v[i];
	}

	Eigen::MatrixXd S =
		rho * Eigen::MatrixXd::Identity(n, n) - A + rho * ue * ve.transpose();
	Eigen::VectorXd rhs = D1 * ue - rho_prime * ue;
	Eigen::VectorXd u1 = S.fullPivLu().solve(rhs);

	double rpp = ve.dot(D2 * ue) + 2.0 * ve.dot(D1 * u1);
	double gp = x * rho_prime / rho;
	return (x * rho_prime + x * x * rpp) / rho - gp * gp;
}

} // namespace

SpectralPoint perron(const CostPolynomialMatrix& P, double x,
                     bool with_curvature, double tol) {
	if (x <= 0)
		throw Error("domain", "spectral evaluation requires x > 0");
	Mat A = P.eval(x);
	PowerResult right = power_iterate(A, tol);
	PowerResult left = power_iterate(transpose(A), tol);

	SpectralPoint sp;
	sp.x = x;
	sp.rho = right.lambda;
	sp.u = right.vec;
	sp.v = left.vec;

	// Scale u to unit maximum, then v so that v.u = 1.
	double umax = *std::max_element(sp.u.begin(), sp.u.end());
	for (double& ui : sp.u)
		ui /= umax;
	double dot = 0;
	for (size_t i = 0; i < sp.u.size(); ++i)
		dot += sp.v[i] * sp.u[i];
	for (double& vi : sp.v)
		vi /= dot;

	// rho' = v P'(x) u^T (v.u = 1), the eigenvalue derivative identity.
	Mat D = P.eval_derivative(x);
	double rp = 0;
	for (int i = 0; i < P.dim; ++i)
		for (int j = 0; j < P.dim; ++j)
			rp += sp.v[i] * D[i][j] * sp.u[j];
	sp.rho_prime = rp;

	if (with_curvature)
		sp.J = curvature(P, x, sp.rho, sp.rho_prime, sp.u, sp.v);
	return sp;
}

double dominant_modulus(const CostPolynomialMatrix& P, std::complex<double> z) {
	Eigen::MatrixXcd M = to_eigen(P.eval(z));
	Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(M, false);
	double m = 0;
	for (int i = 0; i < M.rows(); ++i)
		m = std::max(m, std::abs(solver.eigenvalues()[i]));
	return m;
}

bool spectral_rotation_check(const CostPolynomialMatrix& P, double x,
                             long long c, const Rat& b,
                             const std::vector<Rat>& B,
                             std::string* violation) {
	if (c < 1)
		throw Error("domain", "rotation check needs a positive cost-period");
	Mat A = P.eval(x);
	double scale = 0;
	for (const auto& row : A)
		for (double a : row)
			scale = std::max(scale, std::abs(a));
	if (scale == 0)
		scale = 1;

	for (long long k = 0; k < c; ++k) {
		std::complex<double> omega =
			std::polar(1.0, TWO_PI * double(k) / double(c));
		CMat lhs = P.eval(x * omega);
		std::complex<double> phase =
			std::polar(1.0, TWO_PI * double(k) * b.to_double() / double(c));
		std::vector<std::complex<double>> d(P.dim);
		for (int j = 0; j < P.dim; ++j)
			d[j] = std::polar(1.0, TWO_PI * double(k) * B[j].to_double() / double(c));
		double worst = 0;
		for (int i = 0; i < P.dim; ++i)
			for (int j = 0; j < P.dim; ++j) {
				std::complex<double> rhs = phase * A[i][j] * d[j] / d[i];
				worst = std::max(worst, std::abs(lhs[i][j] - rhs));
			}
		if (worst > 1e-10 * scale) {
			if (violation) {
				std::ostringstream os;
				os << "similarity residual " << worst / scale << " at k=" << k;
				*violation = os.str();
			}
			return false;
		}
	}

	// Strict drop between lattice points, sampled at the midpoints.
	double rho = power_iterate(A, 1e-13).lambda;
	for (long long k = 0; k < c; ++k) {
		double phi = TWO_PI * (double(k) + 0.5) / double(c);
		double dm = dominant_modulus(P, x * std::polar(1.0, phi));
		if (dm >= rho - 1e-8 * rho) {
			if (violation) {
				std::ostringstream os;
				os << "no strict modulus drop at phi=" << phi << " (|lambda|=" << dm
				   << ", rho=" << rho << ")";
				*violation = os.str();
			}
			return false;
		}
	}
	return true;
}

bool adjugate_rank1_check(const CostPolynomialMatrix& P, double x) {
	int n = P.dim;
	SpectralPoint sp = perron(P, x, false);
	Eigen::MatrixXd A = -to_eigen(P.eval(x));
	for (int i = 0; i < n; ++i)
		A(i, i) += sp.rho;

	// Adjugate via cofactors; A itself is singular by construction, its
	// minors are not.
	Eigen::MatrixXd adj(n, n);
	if (n == 1) {
		adj(0, 0) = 1.0;
	} else {
		Eigen::MatrixXd minor(n - 1, n - 1);
		for (int i = 0; i < n; ++i)
			for (int j = 0; j < n; ++j) {
				int rr = 0;
				for (int r = 0; r < n; ++r) {
					if (r == j)
						continue;
					int cc = 0;
					for (int col = 0; col < n; ++col) {
						if (col == i)
							continue;
						minor(rr, cc++) = A(r, col);
					}
					++rr;
				}
				double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
				adj(i, j) = sign * minor.determinant();
			}
	}

	Eigen::JacobiSVD<Eigen::MatrixXd> svd(adj);
	const auto& sv = svd.singularValues();
	if (n > 1 && sv(1) >= 1e-8 * sv(0))
		return false;

	// adj = c0 * u^T v with one uniform sign.
	double c0 = 0;
	{
		int bi = 0, bj = 0;
		double bb = 0;
		for (int i = 0; i < n; ++i)
			for (int j = 0; j < n; ++j)
				if (std::abs(adj(i, j)) > bb) {
					bb = std::abs(adj(i, j));
					bi = i;
					bj = j;
				}
		c0 = adj(bi, bj) / (sp.u[bi] * sp.v[bj]);
	}
	if (c0 == 0)
		return false;
	double scale = std::abs(c0);
	for (int i = 0; i < n; ++i)
		for (int j = 0; j < n; ++j) {
			double want = c0 * sp.u[i] * sp.v[j];
			if (std::abs(adj(i, j) - want) > 1e-6 * scale)
				return false;
			if (adj(i, j) * c0 <= 0) // uniform sign, no zero entries
				return false;
		}
	return true;
}

bool loglog_convexity_check(const CostPolynomialMatrix& P, bool cost_diverse,
                            const std::vector<double>& sgrid) {
	if (sgrid.size() < 3)
		throw Error("domain", "convexity check needs at least 3 grid points");
	std::vector<double> g(sgrid.size());
	for (size_t i = 0; i < sgrid.size(); ++i)
		g[i] = std::log(perron_rho(P, std::exp(sgrid[i])));
	for (size_t i = 1; i + 1 < g.size(); ++i) {
		double d2 = g[i + 1] - 2 * g[i] + g[i - 1];
		if (cost_diverse) {
			if (d2 <= 0)
				return false;
		} else {
			if (std::abs(d2) > 1e-9)
				return false;
		}
	}
	return true;
}

} // namespace costcap
