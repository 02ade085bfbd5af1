#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "costcap/spectral.hpp"
#include "costcap/structure.hpp"
#include "costcap/synthesis.hpp"

using namespace costcap;

namespace {

ChannelGraph alt2() {
	return parse_graph("vertex A\nvertex C\nedge A A A 2\nedge A C C 1\n"
	                   "edge C A A 1\nedge C C C 2\nstart C\n");
}

ChannelGraph telegraph() {
	return parse_graph("vertex v1\nvertex v2\n"
	                   "edge v1 v2 DOT 2\nedge v1 v2 DASH 4\n"
	                   "edge v2 v2 DOT 2\nedge v2 v2 DASH 4\n"
	                   "edge v2 v1 LETTER 3\nedge v2 v1 WORD 6\n");
}

ChannelGraph fig_a() {
	return parse_graph("vertex v1\nvertex v2\nedge v1 v1 a 1\n"
	                   "edge v1 v2 b 1\nedge v2 v1 a 1\n");
}

ChannelGraph fig_b() {
	return parse_graph("vertex v1\nvertex v2\nedge v1 v1 a 2\n"
	                   "edge v1 v2 b 1\nedge v2 v1 a 1\n");
}

ChannelGraph fig_e() {
	return parse_graph("vertex v1\nvertex v2\nvertex v3\n"
	                   "edge v1 v2 a 1\nedge v2 v1 a 1\n"
	                   "edge v2 v3 b 2\nedge v3 v2 a 3\n");
}

double telegraph_rho_closed_form(double x) {
	double a = std::pow(x, 2) + std::pow(x, 4); // DOT/DASH block
	double b = std::pow(x, 3) + std::pow(x, 6); // LETTER/WORD block
	return (a + std::sqrt(a * a + 4 * a * b)) / 2;
}

} // namespace

TEST_CASE("cost matrix collects parallel edges as polynomial entries") {
	CostPolynomialMatrix P = cost_matrix(alt2());
	REQUIRE(P.dim == 2);
	auto M = P.eval(2.0);
	CHECK(M[0][0] == doctest::Approx(4.0)); // x^2
	CHECK(M[0][1] == doctest::Approx(2.0)); // x
	CHECK(M[1][0] == doctest::Approx(2.0));
	CHECK(M[1][1] == doctest::Approx(4.0));
	auto D = P.eval_derivative(2.0);
	CHECK(D[0][0] == doctest::Approx(4.0)); // 2x
	CHECK(D[0][1] == doctest::Approx(1.0));
}

TEST_CASE("perron data matches closed forms for the two-symbol channel") {
	// rho(x) = x^2 + x; at x = 1/3 this is 4/9, rho' = 2x + 1 = 5/3.
	CostPolynomialMatrix P = cost_matrix(alt2());
	SpectralPoint sp = perron(P, 1.0 / 3.0);
	CHECK(std::abs(sp.rho - 4.0 / 9.0) < 1e-12);
	CHECK(std::abs(sp.rho_prime - 5.0 / 3.0) < 1e-10);
	// J(x) = x/(1+x)^2, so J(1/3) = 3/16.
	CHECK(std::abs(sp.J - 3.0 / 16.0) < 1e-8);
	CHECK(std::abs(perron_rho(P, 1.0) - 2.0) < 1e-12);

	SpectralPoint sp7 = perron(P, 0.7);
	CHECK(std::abs(sp7.J - 0.7 / (1.7 * 1.7)) < 1e-8);
}

TEST_CASE("perron matches an independent closed form on the telegraph graph") {
	CostPolynomialMatrix P = cost_matrix(telegraph());
	for (double x : {0.4, 0.6, 0.775, 1.0})
		CHECK(perron_rho(P, x) ==
		      doctest::Approx(telegraph_rho_closed_form(x)).epsilon(1e-10));
}

TEST_CASE("derivative identity agrees with central finite differences") {
	std::vector<ChannelGraph> graphs = {alt2(), fig_b(), fig_e(), telegraph(),
	                                    periodic_subsequence_graph("ACG")};
	for (size_t gi = 0; gi < graphs.size(); ++gi) {
		CAPTURE(gi);
		CostPolynomialMatrix P = cost_matrix(graphs[gi]);
		for (double x : {0.3, 0.7, 1.0, 1.5}) {
			CAPTURE(x);
			SpectralPoint sp = perron(P, x, false);
			double h = 1e-6 * x;
			double fd = (perron_rho(P, x + h) - perron_rho(P, x - h)) / (2 * h);
			CHECK(std::abs(sp.rho_prime - fd) <
			      1e-6 * std::max(1.0, std::abs(fd)));
		}
	}
}

TEST_CASE("rho is strictly increasing in x") {
	for (ChannelGraph g : {alt2(), fig_a(), fig_e(), telegraph()}) {
		CostPolynomialMatrix P = cost_matrix(g);
		double prev = 0;
		for (double x = 0.1; x < 2.05; x += 0.1) {
			double r = perron_rho(P, x);
			CHECK(r > prev);
			prev = r;
		}
	}
}

TEST_CASE("eigenvectors are positive, normalized and accurate") {
	std::vector<ChannelGraph> graphs = {alt2(), fig_e(), telegraph(),
	                                    periodic_subsequence_graph("ACGT")};
	for (size_t gi = 0; gi < graphs.size(); ++gi) {
		CAPTURE(gi);
		CostPolynomialMatrix P = cost_matrix(graphs[gi]);
		for (double x : {0.4, 1.0}) {
			SpectralPoint sp = perron(P, x, false);
			auto M = P.eval(x);
			int n = P.dim;
			double dot = 0;
			for (int i = 0; i < n; ++i) {
				CHECK(sp.u[size_t(i)] > 0);
				CHECK(sp.v[size_t(i)] > 0);
				dot += sp.u[size_t(i)] * sp.v[size_t(i)];
			}
			CHECK(std::abs(dot - 1.0) < 1e-10);
			for (int i = 0; i < n; ++i) {
				double right = 0, left = 0;
				for (int j = 0; j < n; ++j) {
					right += M[size_t(i)][size_t(j)] * sp.u[size_t(j)];
					left += sp.v[size_t(j)] * M[size_t(j)][size_t(i)];
				}
				CHECK(std::abs(right - sp.rho * sp.u[size_t(i)]) <
				      1e-9 * sp.rho);
				CHECK(std::abs(left - sp.rho * sp.v[size_t(i)]) <
				      1e-9 * sp.rho);
			}
		}
	}
}

TEST_CASE("perron requires a positive evaluation point") {
	CostPolynomialMatrix P = cost_matrix(alt2());
	CHECK_THROWS_AS(perron(P, 0.0), Error);
	CHECK_THROWS_AS(perron(P, -0.5), Error);
}

TEST_CASE("curvature vanishes exactly on cost-uniform graphs") {
	// fig (a): rho(x) = x * golden ratio, so log rho(e^s) is linear in s.
	SpectralPoint sp = perron(cost_matrix(fig_a()), 0.8);
	CHECK(std::abs(sp.J) < 1e-6);
	// fig (c) is cost-uniform with b = 2: rho(x) = x^2 * const.
	ChannelGraph c = parse_graph("vertex v1\nvertex v2\nedge v1 v1 a 2\n"
	                             "edge v1 v2 b 1\nedge v2 v1 a 3\n"
	                             "edge v2 v2 b 2\n");
	CHECK(std::abs(perron(cost_matrix(c), 1.1).J) < 1e-6);
}

TEST_CASE("dominant modulus never exceeds the Perron radius on the circle") {
	using std::numbers::pi;
	std::vector<ChannelGraph> graphs = {alt2(), fig_a(), fig_e(), telegraph()};
	for (size_t gi = 0; gi < graphs.size(); ++gi) {
		CAPTURE(gi);
		CostPolynomialMatrix P = cost_matrix(graphs[gi]);
		double x = 0.7;
		double rho = perron_rho(P, x);
		for (int s = 0; s < 16; ++s) {
			double phi = 2 * pi * s / 16;
			std::complex<double> z = std::polar(x, phi);
			CHECK(dominant_modulus(P, z) <= rho * (1 + 1e-9));
		}
		CHECK(dominant_modulus(P, {x, 0.0}) ==
		      doctest::Approx(rho).epsilon(1e-10));
	}
}

TEST_CASE("rotation similarity holds with the reported coboundary") {
	struct Case {
		ChannelGraph g;
		double x;
	};
	std::vector<Case> cases = {{alt2(), 0.5},
	                           {fig_e(), 0.7},
	                           {periodic_subsequence_graph("ACGT"), 0.5},
	                           {telegraph(), 0.9}};
	for (size_t ci = 0; ci < cases.size(); ++ci) {
		CAPTURE(ci);
		StructureReport rep = analyze_structure(cases[ci].g);
		REQUIRE(rep.cost_period_c >= 1);
		std::string why;
		bool ok = spectral_rotation_check(cost_matrix(cases[ci].g),
		                                  cases[ci].x, rep.cost_period_c,
		                                  rep.b, rep.B, &why);
		CAPTURE(why);
		CHECK(ok);
	}
}

TEST_CASE("rotation similarity rejects a tampered coboundary") {
	ChannelGraph g = alt2();
	StructureReport rep = analyze_structure(g);
	auto B = rep.B;
	B[1] = B[1] + Rat(1); // shifts the similarity phase of one vertex
	CHECK(!spectral_rotation_check(cost_matrix(g), 0.5, rep.cost_period_c,
	                               rep.b, B));
	ChannelGraph e = fig_e();
	StructureReport rep_e = analyze_structure(e);
	CHECK(!spectral_rotation_check(cost_matrix(e), 0.7, rep_e.cost_period_c,
	                               rep_e.b + Rat(1), rep_e.B));
}

TEST_CASE("adjugate of rho I - P(x) is rank one with uniform sign") {
	CHECK(adjugate_rank1_check(cost_matrix(telegraph()), 0.5));
	CHECK(adjugate_rank1_check(cost_matrix(periodic_subsequence_graph("ACG")),
	                           0.4));
	CHECK(adjugate_rank1_check(cost_matrix(alt2()), 1.0));
	CHECK(adjugate_rank1_check(cost_matrix(fig_e()), 0.8));
	// 1x1 case: the adjugate is the empty product, i.e. 1.
	ChannelGraph loop = parse_graph("vertex a\nedge a a x 1\nedge a a y 2\n");
	CHECK(adjugate_rank1_check(cost_matrix(loop), 0.6));
}

TEST_CASE("log rho(e^s) is strictly convex iff the graph is cost-diverse") {
	std::vector<double> grid;
	for (int i = 0; i < 40; ++i)
		grid.push_back(-3.0 + 4.0 * i / 39);
	CHECK(loglog_convexity_check(cost_matrix(alt2()), true, grid));
	CHECK(loglog_convexity_check(cost_matrix(telegraph()), true, grid));
	CHECK(loglog_convexity_check(cost_matrix(fig_e()), true, grid));
	CHECK(loglog_convexity_check(cost_matrix(fig_a()), false, grid));
	// fig (b) is cost-diverse; claiming linearity must fail.
	CHECK(!loglog_convexity_check(cost_matrix(fig_b()), false, grid));
}
