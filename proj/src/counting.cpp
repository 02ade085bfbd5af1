#include "costcap/counting.hpp"

#include "costcap/capacity.hpp"
#include "costcap/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

namespace costcap {

namespace {

constexpr double TWO_PI = 2.0 * std::numbers::pi;

void require_counting_input(const ChannelGraph& g, int v) {
	if (v < 0 || v >= g.vertex_count())
		throw Error("domain", "start vertex index out of range");
	if (!is_deterministic(g))
		throw Error("domain",
		            "counting requires a deterministic graph (distinct words "
		            "and paths coincide only then)");
}

// Vertices ordered so that every zero-cost edge w -> u has u earlier; the
// per-t evaluation of the totals recursion then only reads finished values.
std::vector<int> zero_cost_eval_order(const ChannelGraph& g) {
	int n = g.vertex_count();
	std::vector<int> indeg(n, 0);
	for (const Edge& e : g.edges)
		if (e.cost == 0)
			++indeg[e.term];
	std::vector<std::vector<int>> adj = g.out_edges();
	std::vector<int> queue, topo;
	for (int w = 0; w < n; ++w)
		if (indeg[w] == 0)
			queue.push_back(w);
	while (!queue.empty()) {
		int w = queue.back();
		queue.pop_back();
		topo.push_back(w);
		for (int ei : adj[w]) {
			const Edge& e = g.edges[size_t(ei)];
			if (e.cost == 0 && --indeg[e.term] == 0)
				queue.push_back(e.term);
		}
	}
	if (int(topo.size()) != n)
		throw Error("domain",
		            "zero-cost cycle: the set of words per cost budget is "
		            "infinite");
	std::reverse(topo.begin(), topo.end());
	return topo;
}

} // namespace

CountTable count_table(const ChannelGraph& g, int v, long long T,
                       long long Nmax) {
	require_counting_input(g, v);
	if (T < 0 || Nmax < 0)
		throw Error("domain", "cost budget and length must be nonnegative");

	CountTable tab;
	tab.start = v;
	tab.T = T;
	tab.N = Nmax;
	tab.values.assign(size_t(T + 1),
	                  std::vector<mpz_class>(size_t(Nmax + 1), 0));

	int nv = g.vertex_count();
	std::vector<std::vector<int>> adj = g.out_edges();
	// Two length-layers over [vertex][budget]; layer n only reads layer n-1,
	// so zero-cost edges need no ordering care here.
	std::vector<std::vector<mpz_class>> prev(
		nv, std::vector<mpz_class>(size_t(T + 1), 1));
	std::vector<std::vector<mpz_class>> cur(
		nv, std::vector<mpz_class>(size_t(T + 1)));
	for (long long t = 0; t <= T; ++t)
		tab.values[size_t(t)][0] = 1;

	for (long long n = 1; n <= Nmax; ++n) {
		for (int w = 0; w < nv; ++w)
			for (long long t = 0; t <= T; ++t) {
				mpz_class acc = 0;
				for (int ei : adj[w]) {
					const Edge& e = g.edges[size_t(ei)];
					if (e.cost <= t)
						acc += prev[e.term][size_t(t - e.cost)];
				}
				cur[w][size_t(t)] = acc;
			}
		for (long long t = 0; t <= T; ++t)
			tab.values[size_t(t)][size_t(n)] = cur[v][size_t(t)];
		std::swap(prev, cur);
	}
	return tab;
}

mpz_class count_single(const ChannelGraph& g, int v, long long t,
                       long long n) {
	require_counting_input(g, v);
	if (t < 0 || n < 0)
		throw Error("domain", "cost budget and length must be nonnegative");

	int nv = g.vertex_count();
	std::vector<std::vector<int>> adj = g.out_edges();
	std::vector<std::vector<mpz_class>> prev(
		nv, std::vector<mpz_class>(size_t(t + 1), 1));
	std::vector<std::vector<mpz_class>> cur(
		nv, std::vector<mpz_class>(size_t(t + 1)));
	for (long long layer = 1; layer <= n; ++layer) {
		for (int w = 0; w < nv; ++w)
			for (long long tt = 0; tt <= t; ++tt) {
				mpz_class acc = 0;
				for (int ei : adj[w]) {
					const Edge& e = g.edges[size_t(ei)];
					if (e.cost <= tt)
						acc += prev[e.term][size_t(tt - e.cost)];
				}
				cur[w][size_t(tt)] = acc;
			}
		std::swap(prev, cur);
	}
	return prev[v][size_t(t)];
}

std::vector<mpz_class> count_totals(const ChannelGraph& g, int v,
                                    long long T) {
	require_counting_input(g, v);
	if (T < 0)
		throw Error("domain", "cost budget must be nonnegative");
	std::vector<int> order = zero_cost_eval_order(g);

	int nv = g.vertex_count();
	std::vector<std::vector<int>> adj = g.out_edges();
	std::vector<std::vector<mpz_class>> M(
		nv, std::vector<mpz_class>(size_t(T + 1)));
	for (long long t = 0; t <= T; ++t)
		for (int w : order) {
			mpz_class acc = 1;
			for (int ei : adj[w]) {
				const Edge& e = g.edges[size_t(ei)];
				if (e.cost <= t)
					acc += M[e.term][size_t(t - e.cost)];
			}
			M[w][size_t(t)] = acc;
		}
	return M[v];
}

DenomNumer denominator_and_numerator(const ChannelGraph& g, int v) {
	if (v < 0 || v >= g.vertex_count())
		throw Error("domain", "start vertex index out of range");
	int n = g.vertex_count();
	if (n > 12)
		throw Error("domain",
		            "graph too large for the exact expansion (cap 12 "
		            "vertices); use the DP instead");

	CostPolynomialMatrix P = cost_matrix(g);
	std::vector<std::vector<IntPoly>> A(n, std::vector<IntPoly>(n));
	for (int i = 0; i < n; ++i)
		for (int j = 0; j < n; ++j) {
			A[i][j] = IntPoly{} - P.entries[i][j];
			if (i == j)
				A[i][j] = A[i][j] + IntPoly::monomial(1, 0);
		}

	IntPoly det = poly_matrix_det(A);
	IntPoly one_minus_x = IntPoly::monomial(1, 0) - IntPoly::monomial(1, 1);

	DenomNumer dn;
	dn.H = one_minus_x * det;

	// Q = [adj(I-P) 1^T]_v = sum_j (-1)^{v+j} det(A without row j, column v).
	IntPoly Q;
	for (int j = 0; j < n; ++j) {
		IntPoly minor;
		if (n == 1) {
			minor = IntPoly::monomial(1, 0);
		} else {
			std::vector<std::vector<IntPoly>> sub;
			sub.reserve(n - 1);
			for (int r = 0; r < n; ++r) {
				if (r == j)
					continue;
				std::vector<IntPoly> row;
				row.reserve(n - 1);
				for (int c = 0; c < n; ++c)
					if (c != v)
						row.push_back(A[r][c]);
				sub.push_back(std::move(row));
			}
			minor = poly_matrix_det(sub);
		}
		if ((v + j) % 2 == 0)
			Q = Q + minor;
		else
			Q = Q - minor;
	}
	dn.Q = Q;
	return dn;
}

namespace {

std::vector<std::complex<double>> polynomial_roots(const IntPoly& H) {
	int m = H.degree();
	double lead = H.coeffs[size_t(m)].get_d();
	Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(m, m);
	for (int i = 0; i + 1 < m; ++i)
		comp(i + 1, i) = 1.0;
	for (int i = 0; i < m; ++i)
		comp(i, m - 1) = -H.coeff(i).get_d() / lead;
	Eigen::EigenSolver<Eigen::MatrixXd> solver(comp, false);
	std::vector<std::complex<double>> roots(m);
	for (int i = 0; i < m; ++i)
		roots[size_t(i)] = solver.eigenvalues()[i];
	return roots;
}

struct Cluster {
	std::complex<double> center;
	std::vector<std::complex<double>> members;
};

std::vector<Cluster> cluster_roots(const std::vector<std::complex<double>>& r) {
	int m = int(r.size());
	std::vector<int> parent(m);
	for (int i = 0; i < m; ++i)
		parent[i] = i;
	std::function<int(int)> find = [&](int a) {
		while (parent[a] != a)
			a = parent[a] = parent[parent[a]];
		return a;
	};
	for (int i = 0; i < m; ++i)
		for (int j = i + 1; j < m; ++j) {
			double tol = 1e-8 * std::max({1.0, std::abs(r[i]), std::abs(r[j])});
			if (std::abs(r[i] - r[j]) < tol)
				parent[find(i)] = find(j);
		}
	std::vector<Cluster> out;
	std::vector<int> root_to_cluster(m, -1);
	for (int i = 0; i < m; ++i) {
		int rep = find(i);
		if (root_to_cluster[rep] < 0) {
			root_to_cluster[rep] = int(out.size());
			out.push_back({});
		}
		out[root_to_cluster[rep]].members.push_back(r[i]);
	}
	for (Cluster& c : out) {
		std::complex<double> sum = 0;
		for (auto& z : c.members)
			sum += z;
		c.center = sum / double(c.members.size());
	}
	// Guard: each cluster must be far tighter than its distance to the
	// nearest other cluster, else multiplicities are ambiguous.
	for (size_t i = 0; i < out.size(); ++i) {
		double diameter = 0;
		for (auto& a : out[i].members)
			for (auto& b : out[i].members)
				diameter = std::max(diameter, std::abs(a - b));
		double nearest = std::numeric_limits<double>::infinity();
		for (size_t j = 0; j < out.size(); ++j)
			if (j != i)
				nearest =
					std::min(nearest, std::abs(out[i].center - out[j].center));
		if (diameter > 0 && std::isfinite(nearest) &&
		    diameter / nearest > 1e-3)
			throw Error("numeric",
			            "root clustering is ill-conditioned (cluster diameter "
			            "too close to the root gap)");
	}
	return out;
}

// Coefficients (in t) of binomial(t + m - 1, m - 1).
std::vector<std::complex<double>> binomial_poly(int m) {
	std::vector<std::complex<double>> poly{1.0};
	double fact = 1;
	for (int r = 1; r <= m - 1; ++r) {
		fact *= r;
		std::vector<std::complex<double>> next(poly.size() + 1, 0.0);
		for (size_t k = 0; k < poly.size(); ++k) {
			next[k] += poly[k] * double(r);
			next[k + 1] += poly[k];
		}
		poly = std::move(next);
	}
	for (auto& c : poly)
		c /= fact;
	return poly;
}

} // namespace

double ExactExpansion::eval(long long t) const {
	std::complex<double> total = 0;
	for (const ExpansionRoot& r : roots) {
		std::complex<double> p = 0, tp = 1;
		for (size_t k = 0; k < r.pi.size(); ++k) {
			p += r.pi[k] * tp;
			tp *= double(t);
		}
		total += p * std::exp(-double(t) * std::log(r.x));
	}
	return total.real();
}

ExactExpansion exact_expansion(const ChannelGraph& g, int v) {
	require_counting_input(g, v);
	if (has_zero_cost_cycle(g))
		throw Error("domain",
		            "zero-cost cycle: the generating function has a pole at "
		            "x = 0 and no expansion of this form");

	ExactExpansion ex;
	DenomNumer dn = denominator_and_numerator(g, v);
	ex.H = dn.H;
	ex.Q = dn.Q;

	std::vector<Cluster> clusters = cluster_roots(polynomial_roots(dn.H));
	bool all_simple = true;
	for (const Cluster& c : clusters)
		if (c.members.size() > 1)
			all_simple = false;

	if (all_simple) {
		IntPoly Hp = dn.H.derivative();
		for (const Cluster& c : clusters) {
			ExpansionRoot r;
			r.x = c.center;
			r.multiplicity = 1;
			std::complex<double> a =
				dn.Q.eval(c.center) / Hp.eval(c.center);
			r.pi = {-a / c.center};
			ex.roots.push_back(r);
		}
		return ex;
	}

	// With multiplicities: solve for the partial-fraction coefficients
	// a_{i,m} from evaluations of Q/H on a circle enclosing all roots.
	int unknowns = dn.H.degree();
	double radius = 2.0;
	for (const Cluster& c : clusters)
		radius = std::max(radius, 2.0 * std::abs(c.center) + 2.0);
	Eigen::MatrixXcd Amat(unknowns, unknowns);
	Eigen::VectorXcd rhs(unknowns);
	for (int k = 0; k < unknowns; ++k) {
		std::complex<double> s =
			radius * std::polar(1.0, TWO_PI * (double(k) + 0.3) / unknowns);
		int col = 0;
		for (const Cluster& c : clusters) {
			std::complex<double> base = 1.0 / (s - c.center);
			std::complex<double> p = base;
			for (size_t mm = 1; mm <= c.members.size(); ++mm) {
				Amat(k, col++) = p;
				p *= base;
			}
		}
		rhs(k) = dn.Q.eval(s) / dn.H.eval(s);
	}
	Eigen::VectorXcd coef = Amat.fullPivLu().solve(rhs);

	int col = 0;
	for (const Cluster& c : clusters) {
		ExpansionRoot r;
		r.x = c.center;
		r.multiplicity = int(c.members.size());
		r.pi.assign(size_t(r.multiplicity), 0.0);
		for (int mm = 1; mm <= r.multiplicity; ++mm) {
			std::complex<double> a = coef(col++);
			std::complex<double> scale =
				a * std::pow(std::complex<double>(-1.0), mm) *
				std::pow(c.center, -double(mm));
			std::vector<std::complex<double>> bp = binomial_poly(mm);
			for (size_t k = 0; k < bp.size(); ++k)
				r.pi[k] += scale * bp[k];
		}
		ex.roots.push_back(r);
	}
	return ex;
}

namespace {

// Right/left eigenvectors (plain-transpose left) of the complex matrix
// P(x) at eigenvalue lambda, via the smallest singular direction.
struct ComplexPair {
	Eigen::VectorXcd u;
	Eigen::VectorXcd v;
};

ComplexPair complex_eigenpair(const Eigen::MatrixXcd& M,
                              std::complex<double> lambda) {
	int n = int(M.rows());
	Eigen::MatrixXcd A = M;
	for (int i = 0; i < n; ++i)
		A(i, i) -= lambda;
	Eigen::JacobiSVD<Eigen::MatrixXcd> svd_r(A, Eigen::ComputeFullV);
	Eigen::JacobiSVD<Eigen::MatrixXcd> svd_l(A.transpose(),
	                                         Eigen::ComputeFullV);
	ComplexPair pair;
	pair.u = svd_r.matrixV().col(n - 1);
	pair.v = svd_l.matrixV().col(n - 1);
	std::complex<double> dot = 0;
	for (int i = 0; i < n; ++i)
		dot += pair.v(i) * pair.u(i); // plain product, no conjugation
	if (std::abs(dot) < 1e-12)
		throw Error("numeric",
		            "defective eigenpair in the asymptotic expansion");
	pair.v /= dot;
	return pair;
}

} // namespace

AsymptoticEstimate asymptotic_fixed_length(const ChannelGraph& g, int v,
                                           long long n, long long t) {
	require_counting_input(g, v);
	if (t <= 0 || n < 0)
		throw Error("domain", "need t > 0 and n >= 0");
	StructureReport rep = analyze_structure(g);
	if (!rep.cost_diverse)
		throw Error("degenerate",
		            "cost-uniform graph: these asymptotics need a "
		            "cost-diverse graph");

	AsymptoticEstimate est;
	est.t = t;
	est.n = n;
	double alpha = double(n) / double(t);
	double a_lo = alpha_lo(g);
	AlphaUp a_up = alpha_up(g);

	CostPolynomialMatrix P = cost_matrix(g);
	int d = int(rep.period_d);
	int nv = g.vertex_count();

	if (alpha <= a_lo + 1e-12) {
		est.regime = Regime::linear;
		SpectralPoint sp = perron(P, 1.0, false);
		Eigen::MatrixXcd M(nv, nv);
		{
			auto A = P.eval(1.0);
			for (int i = 0; i < nv; ++i)
				for (int j = 0; j < nv; ++j)
					M(i, j) = A[i][j];
		}
		std::complex<double> total = 0;
		for (int j = 0; j < d; ++j) {
			std::complex<double> lambda =
				sp.rho * std::polar(1.0, TWO_PI * double(j) / double(d));
			std::complex<double> rowsum;
			std::complex<double> uv;
			if (j == 0) {
				double s = 0;
				for (double vi : sp.v)
					s += vi;
				uv = sp.u[v];
				rowsum = s;
			} else {
				ComplexPair pr = complex_eigenpair(M, lambda);
				uv = pr.u(v);
				rowsum = pr.v.sum();
			}
			// lambda^n via logs to keep large n in range
			std::complex<double> pw = std::exp(
				double(n) * std::log(std::abs(lambda)) +
				std::complex<double>(0, double(n) * std::arg(lambda)));
			std::complex<double> term = pw * uv * rowsum;
			est.terms.push_back({0, j, term});
			total += term;
		}
		est.estimate = total.real();
		return est;
	}

	if (!a_up.infinite && alpha >= a_up.value - 1e-12) {
		est.regime = Regime::void_;
		est.estimate = 0.0;
		return est;
	}

	est.regime = Regime::concave;
	double x0 = critical_x(g, alpha);
	SpectralPoint sp = perron(P, x0, true);
	if (sp.J <= 0)
		throw Error("numeric", "nonpositive curvature at the critical point");
	long long c = rep.cost_period_c;

	Eigen::MatrixXcd M(nv, nv);
	{
		auto A = P.eval(x0);
		for (int i = 0; i < nv; ++i)
			for (int j = 0; j < nv; ++j)
				M(i, j) = A[i][j];
	}

	// Eigenvectors per period residue j (shared across k).
	std::vector<Eigen::VectorXcd> us(d), vs(d);
	for (int j = 0; j < d; ++j) {
		if (j == 0) {
			us[0] = Eigen::VectorXcd(nv);
			vs[0] = Eigen::VectorXcd(nv);
			for (int i = 0; i < nv; ++i) {
				us[0](i) = sp.u[i];
				vs[0](i) = sp.v[i];
			}
		} else {
			std::complex<double> lambda =
				sp.rho * std::polar(1.0, TWO_PI * double(j) / double(d));
			ComplexPair pr = complex_eigenpair(M, lambda);
			us[j] = pr.u;
			vs[j] = pr.v;
		}
	}

	double log_mag = double(n) * std::log(sp.rho) - double(t) * std::log(x0);
	double prefactor =
		1.0 / std::sqrt(TWO_PI * alpha * sp.J * double(t));

	std::complex<double> total = 0;
	for (long long k = 0; k < c; ++k) {
		std::complex<double> omega =
			std::polar(1.0, TWO_PI * double(k) / double(c));
		std::vector<std::complex<double>> dk(nv);
		for (int m = 0; m < nv; ++m)
			dk[m] = std::polar(1.0, TWO_PI * double(k) *
			                            rep.B[m].to_double() / double(c));
		std::complex<double> geom = 1.0 / (1.0 - x0 * omega);
		double phase_b = TWO_PI * double(k) * rep.b.to_double() / double(c);
		for (int j = 0; j < d; ++j) {
			double angle = double(n) * (phase_b + TWO_PI * double(j) / double(d)) -
			               double(t) * (TWO_PI * double(k) / double(c));
			std::complex<double> base =
				std::exp(std::complex<double>(log_mag, angle));
			std::complex<double> row = 0;
			for (int q = 0; q < nv; ++q)
				row += vs[j](q) * dk[q];
			std::complex<double> bilinear = us[j](v) / dk[v] * row;
			std::complex<double> term =
				base * prefactor * bilinear * geom;
			est.terms.push_back({int(k), j, term});
			total += term;
		}
	}
	est.estimate = total.real();
	return est;
}

} // namespace costcap
