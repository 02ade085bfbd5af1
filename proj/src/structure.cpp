#include "costcap/structure.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>

namespace costcap {

namespace {

// Lattice in Z^2 kept in Hermite normal form {(d, e0), (0, c)} while
// vectors are folded in one by one. d, c >= 0; e0 reduced into [0, c)
// whenever c > 0.
struct Lattice2 {
	long long d = 0, e0 = 0, c = 0;

	static long long ext_gcd(long long a, long long b, long long& x, long long& y) {
		if (b == 0) {
			x = (a >= 0) ? 1 : -1;
			y = 0;
			return a >= 0 ? a : -a;
		}
		long long x1, y1;
		long long g = ext_gcd(b, a % b, x1, y1);
		x = y1;
		y = x1 - (a / b) * y1;
		return g;
	}

	void reduce_e0() {
		if (c > 0) {
			e0 %= c;
			if (e0 < 0)
				e0 += c;
		}
	}

	void add_second(long long t) {
		if (t < 0)
			t = -t;
		c = std::gcd(c, t);
		reduce_e0();
	}

	void add(long long a, long long t) {
		if (a == 0) {
			add_second(t);
			return;
		}
		if (d == 0) {
			d = a < 0 ? -a : a;
			e0 = a < 0 ? -t : t;
			reduce_e0();
			return;
		}
		// Combine (d, e0) and (a, t): the new first basis vector has first
		// coordinate gcd(d, a); the leftover combination is purely vertical
		// and folds into c.
		long long x, y;
		long long g = ext_gcd(d, a, x, y);
		long long new_e0 = x * e0 + y * t;
		long long leftover = (d / g) * t - (a / g) * e0;
		d = g;
		e0 = new_e0;
		add_second(leftover);
	}
};

} // namespace

StructureReport analyze_structure(const ChannelGraph& g) {
	if (!is_strongly_connected(g))
		throw Error("structure", "graph is not strongly connected");

	StructureReport rep;
	rep.deterministic = is_deterministic(g);
	rep.strongly_connected = true;

	int n = g.vertex_count();
	if (n == 0)
		throw Error("structure", "empty graph");

	// Spanning arborescence from the root (vertex 0) by BFS, recording the
	// tree-path length and cost of every vertex.
	auto out = g.out_edges();
	std::vector<long long> len(n, -1), cost(n, 0);
	len[0] = 0;
	std::queue<int> q;
	q.push(0);
	while (!q.empty()) {
		int v = q.front();
		q.pop();
		for (int ei : out[v]) {
			const Edge& e = g.edges[ei];
			if (len[e.term] < 0) {
				len[e.term] = len[v] + 1;
				cost[e.term] = cost[v] + e.cost;
				q.push(e.term);
			}
		}
	}

	// Every edge contributes one lattice vector; tree edges contribute
	// (0,0) and drop out on their own.
	Lattice2 lat;
	for (const Edge& e : g.edges)
		lat.add(len[e.init] + 1 - len[e.term],
		        cost[e.init] + e.cost - cost[e.term]);

	if (lat.d == 0) {
		// No cycle at all: only possible for a single vertex without
		// edges. Degenerate but well-defined output.
		rep.period_d = 1;
		rep.cost_period_c = 0;
		rep.b = Rat(0);
		rep.B.assign(n, Rat(0));
		rep.cost_diverse = false;
		return rep;
	}

	rep.period_d = lat.d;
	rep.cost_period_c = lat.c;
	rep.cost_diverse = lat.c > 0;
	rep.b = Rat(lat.e0, lat.d);
	rep.B.resize(n);
	for (int v = 0; v < n; ++v) {
		Rat Bv = Rat(cost[v]) - rep.b * Rat(len[v]);
		rep.B[v] = lat.c > 0 ? Bv.mod(lat.c) : Bv;
	}
	return rep;
}

bool verify_coboundary(const ChannelGraph& g, const StructureReport& rep) {
	for (const Edge& e : g.edges) {
		Rat r = Rat(e.cost) - rep.b - rep.B[e.term] + rep.B[e.init];
		if (rep.cost_period_c > 0) {
			// r must be an integer multiple of c.
			Rat q = r / Rat(rep.cost_period_c);
			if (!q.is_integer())
				return false;
		} else {
			if (r != Rat(0))
				return false;
		}
	}
	return true;
}

std::pair<bool, std::optional<DiversityWitness>>
cost_diversity_oracle(const ChannelGraph& g, int maxLen) {
	// For each (endpoint pair, cost) reached at the current length keep one
	// representative path (as edge indices). Two different costs for the
	// same pair at the same length is a witness.
	using Key = std::pair<int, int>; // (init, term)
	std::map<Key, std::map<long long, std::vector<int>>> cur;
	for (int ei = 0; ei < int(g.edges.size()); ++ei) {
		const Edge& e = g.edges[ei];
		cur[{e.init, e.term}].emplace(e.cost, std::vector<int>{ei});
	}
	for (int m = 1; m <= maxLen; ++m) {
		for (auto& [key, costs] : cur)
			if (costs.size() >= 2) {
				DiversityWitness w;
				w.path_a = costs.begin()->second;
				w.path_b = std::prev(costs.end())->second;
				return {true, w};
			}
		if (m == maxLen)
			break;
		std::map<Key, std::map<long long, std::vector<int>>> next;
		for (const auto& [key, costs] : cur)
			for (const auto& [c, path] : costs)
				for (int ei = 0; ei < int(g.edges.size()); ++ei) {
					const Edge& e = g.edges[ei];
					if (e.init != key.second)
						continue;
					auto& slot = next[{key.first, e.term}];
					if (slot.find(c + e.cost) == slot.end()) {
						auto p = path;
						p.push_back(ei);
						slot.emplace(c + e.cost, std::move(p));
					}
				}
		cur = std::move(next);
	}
	return {false, std::nullopt};
}

} // namespace costcap
