#include "costcap/synthesis.hpp"

#include <algorithm>
#include <map>

namespace costcap {

ChannelGraph periodic_subsequence_graph(const std::string& r) {
	int M = int(r.size());
	if (M < 2)
		throw Error("domain", "period must have length >= 2");
	std::map<char, int> occurrences;
	for (char ch : r)
		++occurrences[ch];
	if (occurrences.size() < 2)
		throw Error("domain", "period must use at least two distinct symbols");

	ChannelGraph g;
	for (int i = 0; i < M; ++i) {
		std::string name(1, r[size_t(i)]);
		if (occurrences[r[size_t(i)]] > 1)
			name += std::to_string(i + 1);
		g.vertices.push_back(name);
	}
	// From each position, one edge per distinct symbol, to its first
	// occurrence strictly later in the cyclic supersequence; the cost is
	// the number of periods positions skipped (a full turn for the symbol
	// itself when it is unique).
	for (int i = 0; i < M; ++i)
		for (const auto& [sym, cnt] : occurrences)
			for (int k = 1; k <= M; ++k) {
				int j = (i + k) % M;
				if (r[size_t(j)] == sym) {
					g.edges.push_back(
						{i, j, std::string(1, sym), (long long)k});
					break;
				}
			}
	g.start = M - 1; // the final period position
	return g;
}

mpz_class finite_subsequence_oracle(const std::string& prefix,
                                    std::optional<long long> n) {
	if (n && *n < 0)
		throw Error("domain", "subsequence length must be nonnegative");
	if (!n) {
		// S_i = 2 S_{i-1} - S_{j-1} with j the previous occurrence.
		mpz_class S = 1;
		std::map<char, mpz_class> before_last;
		for (char ch : prefix) {
			mpz_class before = S;
			S *= 2;
			auto it = before_last.find(ch);
			if (it != before_last.end())
				S -= it->second;
			before_last[ch] = before;
		}
		return S;
	}

	long long len = *n;
	if (len > (long long)prefix.size())
		return 0;
	std::vector<mpz_class> f(size_t(len + 1), 0);
	f[0] = 1;
	std::map<char, std::vector<mpz_class>> before_last;
	for (char ch : prefix) {
		std::vector<mpz_class> before = f;
		auto it = before_last.find(ch);
		for (long long l = len; l >= 1; --l) {
			f[size_t(l)] += before[size_t(l - 1)];
			if (it != before_last.end())
				f[size_t(l)] -= it->second[size_t(l - 1)];
		}
		before_last[ch] = std::move(before);
	}
	return f[size_t(len)];
}

ChannelGraph label_product(const ChannelGraph& g1, const ChannelGraph& g2) {
	ChannelGraph p;
	int n2 = g2.vertex_count();
	for (int i = 0; i < g1.vertex_count(); ++i)
		for (int j = 0; j < n2; ++j)
			p.vertices.push_back("(" + g1.vertices[size_t(i)] + "," +
			                     g2.vertices[size_t(j)] + ")");
	for (const Edge& e1 : g1.edges)
		for (const Edge& e2 : g2.edges)
			if (e1.label == e2.label)
				p.edges.push_back({e1.init * n2 + e2.init,
				                   e1.term * n2 + e2.term, e1.label,
				                   e1.cost});
	if (g1.start && g2.start)
		p.start = *g1.start * n2 + *g2.start;
	return p;
}

ChannelGraph builtin_constraint(const std::string& name,
                                const std::string& symbol, int len,
                                const std::vector<std::string>& alphabet) {
	ChannelGraph g;
	auto state = [](int k) { return "v" + std::to_string(k); };

	if (name == "identity") {
		g.vertices.push_back(state(1));
		for (const std::string& sym : alphabet)
			g.edges.push_back({0, 0, sym, 0});
		g.start = 0;
		return g;
	}
	if (len < 1)
		throw Error("domain", "constraint run length must be >= 1");

	if (name == "max-run") {
		// States count the current run of `symbol`; the run may not
		// extend past len.
		for (int k = 1; k <= len + 1; ++k)
			g.vertices.push_back(state(k));
		for (int k = 0; k < len; ++k)
			g.edges.push_back({k, k + 1, symbol, 0});
		for (int k = 0; k <= len; ++k)
			for (const std::string& sym : alphabet)
				if (sym != symbol)
					g.edges.push_back({k, 0, sym, 0});
		g.start = 0;
		return g;
	}
	if (name == "min-run") {
		// A run of `symbol`, once started, is forced through len-1 more
		// states before the free run state, where it may continue or stop;
		// so maximal runs have length >= len.
		if (len == 1) {
			g.vertices.push_back(state(1));
			g.edges.push_back({0, 0, symbol, 0});
			for (const std::string& sym : alphabet)
				if (sym != symbol)
					g.edges.push_back({0, 0, sym, 0});
			g.start = 0;
			return g;
		}
		for (int k = 1; k <= len + 1; ++k)
			g.vertices.push_back(state(k));
		for (const std::string& sym : alphabet)
			if (sym != symbol)
				g.edges.push_back({0, 0, sym, 0});
		for (int k = 0; k < len; ++k)
			g.edges.push_back({k, k + 1, symbol, 0});
		g.edges.push_back({len, len, symbol, 0});
		for (const std::string& sym : alphabet)
			if (sym != symbol)
				g.edges.push_back({len, 0, sym, 0});
		g.start = 0;
		return g;
	}
	throw Error("domain", "unknown constraint '" + name +
	                          "' (use max-run, min-run or identity)");
}

ChannelGraph synthesis_channel(const SynthesisSpec& spec) {
	ChannelGraph g = periodic_subsequence_graph(spec.period);
	if (!spec.constraint)
		return g;
	if (!spec.constraint->start)
		throw Error("domain", "constraint graph must declare a start vertex");
	ChannelGraph product = label_product(g, *spec.constraint);
	TrimResult trimmed = trim_to_recurrent(product, *product.start);
	return trimmed.graph;
}

CapacityResult synthesis_capacity(const SynthesisSpec& spec) {
	ChannelGraph ch;
	try {
		ch = synthesis_channel(spec);
	} catch (const Error& e) {
		if (e.code() == "structure") // empty recurrent product
			return {0.0, 1.0};
		throw;
	}
	return variable_length_capacity(ch);
}

double synthesis_capacity_fixed(const SynthesisSpec& spec, double alpha) {
	return fixed_length_capacity(synthesis_channel(spec), alpha);
}

} // namespace costcap
