#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "costcap/capacity.hpp"
#include "costcap/counting.hpp"
#include "costcap/graph.hpp"
#include "costcap/spectral.hpp"
#include "costcap/structure.hpp"
#include "costcap/synthesis.hpp"

namespace {

using namespace costcap;

std::string num(double v) {
	char buf[64];
	std::snprintf(buf, sizeof buf, "%.12g", v);
	return buf;
}

std::string read_file(const std::string& path) {
	std::ifstream in(path, std::ios::binary);
	if (!in)
		throw Error("io", "cannot open '" + path + "'");
	std::ostringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

ChannelGraph load_graph(const std::string& path) {
	return parse_graph(read_file(path));
}

int resolve_start(const ChannelGraph& g, const std::string& name) {
	if (name.empty()) {
		if (g.start)
			return *g.start;
		return 0;
	}
	int idx = g.vertex_index(name);
	if (idx < 0)
		throw Error("domain", "unknown start vertex '" + name + "'");
	return idx;
}

void cmd_analyze(const std::string& path) {
	ChannelGraph g = load_graph(path);
	StructureReport rep = analyze_structure(g);
	std::cout << "field,value\n";
	std::cout << "deterministic," << (rep.deterministic ? "true" : "false")
	          << "\n";
	std::cout << "strongly_connected,"
	          << (rep.strongly_connected ? "true" : "false") << "\n";
	std::cout << "d," << rep.period_d << "\n";
	std::cout << "c," << rep.cost_period_c << "\n";
	std::cout << "cost_diverse," << (rep.cost_diverse ? "true" : "false")
	          << "\n";
	std::cout << "b," << rep.b.str() << "\n";
	for (int i = 0; i < g.vertex_count(); ++i)
		std::cout << "B," << g.vertices[size_t(i)] << ","
		          << rep.B[size_t(i)].str() << "\n";
}

void cmd_spectral(const std::string& path, double x, double tol) {
	ChannelGraph g = load_graph(path);
	if (!is_strongly_connected(g))
		throw Error("domain", "spectral data requires a strongly connected "
		                      "graph");
	CostPolynomialMatrix P = cost_matrix(g);
	SpectralPoint sp = perron(P, x, true, tol);
	std::cout << "field,value\n";
	std::cout << "x," << num(sp.x) << "\n";
	std::cout << "rho," << num(sp.rho) << "\n";
	std::cout << "rho_prime," << num(sp.rho_prime) << "\n";
	std::cout << "J," << num(sp.J) << "\n";
	for (int i = 0; i < g.vertex_count(); ++i)
		std::cout << "u," << g.vertices[size_t(i)] << "," << num(sp.u[size_t(i)])
		          << "\n";
	for (int i = 0; i < g.vertex_count(); ++i)
		std::cout << "v," << g.vertices[size_t(i)] << "," << num(sp.v[size_t(i)])
		          << "\n";
}

void cmd_capacity(const std::string& path) {
	ChannelGraph g = load_graph(path);
	CapacityResult r = variable_length_capacity(g);
	std::cout << "field,value\n";
	std::cout << "C," << num(r.C) << "\n";
	std::cout << "x0," << num(r.x0) << "\n";
}

void print_curve(const CapacityCurve& curve) {
	std::cout << "alpha,capacity,x0\n";
	for (const CurveSample& s : curve.samples) {
		std::cout << num(s.alpha) << "," << num(s.capacity) << ",";
		if (s.x0)
			std::cout << num(*s.x0);
		std::cout << "\n";
	}
}

void cmd_curve(const std::string& path, int samples, double alpha, bool
               has_alpha, int jobs) {
	ChannelGraph g = load_graph(path);
	if (has_alpha) {
		double cap = fixed_length_capacity(g, alpha);
		double a_lo = alpha_lo(g);
		AlphaUp a_up = alpha_up(g);
		std::string x0;
		if (alpha > a_lo && (a_up.infinite || alpha < a_up.value))
			x0 = num(critical_x(g, alpha));
		else if (!a_up.infinite && alpha >= a_up.value)
			std::cerr << "warning,boundary,alpha at or above alpha_up; "
			             "capacity is 0 there\n";
		std::cout << "alpha,capacity,x0\n";
		std::cout << num(alpha) << "," << num(cap) << "," << x0 << "\n";
		return;
	}
	print_curve(capacity_curve(g, samples, jobs));
}

void cmd_count(const std::string& path, long long T, long long n, bool has_n,
               const std::string& start) {
	ChannelGraph g = load_graph(path);
	int v = resolve_start(g, start);
	std::cout << "t,n,count\n";
	if (has_n) {
		if (T >= 0 && n >= 0 && (T + 1) * (n + 1) > 50000000)
			throw Error("domain", "requested table is too large");
		CountTable tab = count_table(g, v, T, n);
		for (long long t = 0; t <= T; ++t)
			std::cout << t << "," << n << "," << tab.at(t, n).get_str()
			          << "\n";
	} else {
		std::vector<mpz_class> totals = count_totals(g, v, T);
		for (long long t = 0; t <= T; ++t)
			std::cout << t << ",," << totals[size_t(t)].get_str() << "\n";
	}
}

void cmd_exact(const std::string& path, const std::string& start) {
	ChannelGraph g = load_graph(path);
	int v = resolve_start(g, start);
	ExactExpansion ex = exact_expansion(g, v);
	std::cout << "kind,index,aux,re,im\n";
	for (size_t i = 0; i < ex.roots.size(); ++i) {
		const ExpansionRoot& r = ex.roots[i];
		std::cout << "root," << i << "," << r.multiplicity << ","
		          << num(r.x.real()) << "," << num(r.x.imag()) << "\n";
		for (size_t k = 0; k < r.pi.size(); ++k)
			std::cout << "pi," << i << "," << k << "," << num(r.pi[k].real())
			          << "," << num(r.pi[k].imag()) << "\n";
	}
	for (int k = 0; k <= ex.H.degree(); ++k)
		std::cout << "H," << k << ",," << ex.H.coeff(k).get_str() << ",\n";
	for (int k = 0; k <= ex.Q.degree(); ++k)
		std::cout << "Q," << k << ",," << ex.Q.coeff(k).get_str() << ",\n";
}

void cmd_asympt(const std::string& path, long long t, long long n,
                const std::string& start) {
	ChannelGraph g = load_graph(path);
	int v = resolve_start(g, start);
	AsymptoticEstimate est = asymptotic_fixed_length(g, v, n, t);
	const char* regime = est.regime == Regime::linear    ? "linear"
	                     : est.regime == Regime::concave ? "concave"
	                                                     : "void";
	std::cout << "field,value\n";
	std::cout << "regime," << regime << "\n";
	std::cout << "estimate," << num(est.estimate) << "\n";
	if (t <= 5000 && n <= 5000) {
		mpz_class dp = count_single(g, v, t, n);
		std::cout << "dp," << dp.get_str() << "\n";
		if (est.estimate != 0)
			std::cout << "ratio," << num(dp.get_d() / est.estimate) << "\n";
		else
			std::cout << "ratio,\n";
	} else {
		std::cout << "dp,\n";
		std::cout << "ratio,\n";
	}
}

ChannelGraph parse_constraint_spec(const std::string& spec,
                                   const std::string& period) {
	std::vector<std::string> parts;
	std::string cur;
	for (char ch : spec) {
		if (ch == ':') {
			parts.push_back(cur);
			cur.clear();
		} else {
			cur += ch;
		}
	}
	parts.push_back(cur);

	std::vector<std::string> alphabet;
	{
		std::set<char> seen(period.begin(), period.end());
		for (char ch : seen)
			alphabet.push_back(std::string(1, ch));
	}
	if (parts[0] == "identity") {
		if (parts.size() != 1)
			throw Error("usage", "identity constraint takes no parameters");
		return builtin_constraint("identity", "", 0, alphabet);
	}
	if (parts.size() != 3)
		throw Error("usage",
		            "constraint format is name:symbol:length, e.g. max-run:T:1");
	int len = 0;
	try {
		size_t pos = 0;
		len = std::stoi(parts[2], &pos);
		if (pos != parts[2].size())
			throw std::invalid_argument("trailing");
	} catch (const std::exception&) {
		throw Error("usage", "constraint length must be an integer");
	}
	return builtin_constraint(parts[0], parts[1], len, alphabet);
}

void cmd_synth(const std::string& period, const std::string& constraint,
               const std::string& constraint_file, double alpha,
               bool has_alpha, int curve_samples, bool has_curve, int jobs) {
	SynthesisSpec spec;
	spec.period = period;
	if (!constraint.empty() && !constraint_file.empty())
		throw Error("usage",
		            "--constraint and --constraint-file are exclusive");
	if (!constraint.empty())
		spec.constraint = parse_constraint_spec(constraint, period);
	if (!constraint_file.empty())
		spec.constraint = load_graph(constraint_file);

	if (has_alpha) {
		double cap = synthesis_capacity_fixed(spec, alpha);
		ChannelGraph ch = synthesis_channel(spec);
		double a_lo = alpha_lo(ch);
		AlphaUp a_up = alpha_up(ch);
		std::string x0;
		if (alpha > a_lo && (a_up.infinite || alpha < a_up.value))
			x0 = num(critical_x(ch, alpha));
		std::cout << "alpha,capacity,x0\n";
		std::cout << num(alpha) << "," << num(cap) << "," << x0 << "\n";
		return;
	}
	if (has_curve) {
		ChannelGraph ch = synthesis_channel(spec);
		print_curve(capacity_curve(ch, curve_samples, jobs));
		return;
	}
	try {
		ChannelGraph ch = synthesis_channel(spec);
		CapacityResult r = variable_length_capacity(ch);
		std::cout << "field,value\n";
		std::cout << "C," << num(r.C) << "\n";
		std::cout << "x0," << num(r.x0) << "\n";
	} catch (const Error& e) {
		if (e.code() != "structure")
			throw;
		std::cerr << "warning,structure,empty recurrent product; capacity "
		             "is 0\n";
		std::cout << "field,value\n";
		std::cout << "C,0\n";
		std::cout << "x0,1\n";
	}
}

void cmd_product(const std::string& path1, const std::string& path2) {
	ChannelGraph g1 = load_graph(path1);
	ChannelGraph g2 = load_graph(path2);
	auto a1 = g1.alphabet(), a2 = g2.alphabet();
	if (a1 != a2) {
		std::string only;
		for (const auto& s : a1)
			if (!a2.count(s))
				only += (only.empty() ? "" : " ") + s;
		for (const auto& s : a2)
			if (!a1.count(s))
				only += (only.empty() ? "" : " ") + s;
		std::cerr << "warning,alphabet,factor alphabets differ (" << only
		          << ")\n";
	}
	std::cout << serialize_graph(label_product(g1, g2));
}

} // namespace

int main(int argc, char** argv) {
	CLI::App app{"costly constrained channel analyzer"};
	app.require_subcommand(1);

	std::string path, path2, start_name;
	double x = 1.0, alpha = 0, tol = 1e-13;
	long long t_bound = 0, n_bound = 0;
	int samples = 50, jobs = 1, curve_samples = 50;
	std::string period, constraint, constraint_file;

	CLI::App* analyze = app.add_subcommand("analyze",
	                                       "structure report of a graph");
	analyze->add_option("file", path)->required();

	CLI::App* spectral = app.add_subcommand("spectral",
	                                        "Perron data at a point x");
	spectral->add_option("file", path)->required();
	spectral->add_option("--x", x, "evaluation point (x > 0)")->required();
	spectral->add_option("--tol", tol, "eigen-solver tolerance (1e-13)");

	CLI::App* capacity = app.add_subcommand(
		"capacity", "variable-length capacity C and the root x0");
	capacity->add_option("file", path)->required();

	CLI::App* curve = app.add_subcommand(
		"curve", "capacity-cost curve (or one value via --alpha)");
	curve->add_option("file", path)->required();
	curve->add_option("--samples", samples, "grid sample count (50)");
	CLI::Option* curve_alpha =
		curve->add_option("--alpha", alpha, "single cost rate");
	curve->add_option("--jobs", jobs, "parallel workers (1)");

	CLI::App* count = app.add_subcommand(
		"count", "exact follower counts (totals, or one length via --n)");
	count->add_option("file", path)->required();
	count->add_option("--t", t_bound, "cost budget T")->required();
	CLI::Option* count_n = count->add_option("--n", n_bound, "word length");
	count->add_option("--start", start_name,
	                  "start vertex (default: graph start, else first)");

	CLI::App* exact = app.add_subcommand(
		"exact", "closed-form expansion of the totals N(t)");
	exact->add_option("file", path)->required();
	exact->add_option("--start", start_name);

	CLI::App* asympt = app.add_subcommand(
		"asympt", "asymptotic estimate of N(t,n) vs. the exact DP");
	asympt->add_option("file", path)->required();
	asympt->add_option("--t", t_bound, "cost budget t")->required();
	asympt->add_option("--n", n_bound, "word length n")->required();
	asympt->add_option("--start", start_name);

	CLI::App* synth = app.add_subcommand(
		"synth", "synthesis rates for a periodic supersequence");
	synth->add_option("--period", period, "period string, e.g. ACGT")
		->required();
	synth->add_option("--constraint", constraint,
	                  "builtin constraint name:symbol:length");
	synth->add_option("--constraint-file", constraint_file,
	                  "constraint graph file");
	CLI::Option* synth_alpha =
		synth->add_option("--alpha", alpha, "fixed-length cost rate");
	CLI::Option* synth_curve =
		synth->add_option("--curve", curve_samples, "curve sample count");
	synth->add_option("--jobs", jobs, "parallel workers (1)");

	CLI::App* product = app.add_subcommand(
		"product", "label product of a weighted and a constraint graph");
	product->add_option("file1", path)->required();
	product->add_option("file2", path2)->required();

	try {
		app.parse(argc, argv);
	} catch (const CLI::CallForHelp& e) {
		return app.exit(e);
	} catch (const CLI::CallForAllHelp& e) {
		return app.exit(e);
	} catch (const CLI::ParseError& e) {
		std::cerr << "error,usage," << e.what() << "\n";
		return 2;
	}

	try {
		if (app.got_subcommand(analyze))
			cmd_analyze(path);
		else if (app.got_subcommand(spectral))
			cmd_spectral(path, x, tol);
		else if (app.got_subcommand(capacity))
			cmd_capacity(path);
		else if (app.got_subcommand(curve))
			cmd_curve(path, samples, alpha, curve_alpha->count() > 0, jobs);
		else if (app.got_subcommand(count))
			cmd_count(path, t_bound, n_bound, count_n->count() > 0,
			          start_name);
		else if (app.got_subcommand(exact))
			cmd_exact(path, start_name);
		else if (app.got_subcommand(asympt))
			cmd_asympt(path, t_bound, n_bound, start_name);
		else if (app.got_subcommand(synth))
			cmd_synth(period, constraint, constraint_file, alpha,
			          synth_alpha->count() > 0, curve_samples,
			          synth_curve->count() > 0, jobs);
		else if (app.got_subcommand(product))
			cmd_product(path, path2);
	} catch (const Error& e) {
		std::cerr << "error," << e.code() << "," << e.what() << "\n";
		return 1;
	} catch (const std::exception& e) {
		std::cerr << "error,internal," << e.what() << "\n";
		return 1;
	}
	return 0;
}
