#include "costcap/graph.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>
#include <sstream>

namespace costcap {

std::vector<std::vector<int>> ChannelGraph::out_edges() const {
	std::vector<std::vector<int>> out(vertices.size());
	for (int i = 0; i < int(edges.size()); ++i)
		out[edges[i].init].push_back(i);
	return out;
}

namespace {

std::vector<std::string> split_tokens(const std::string& line) {
	std::istringstream in(line);
	std::vector<std::string> toks;
	std::string t;
	while (in >> t)
		toks.push_back(t);
	return toks;
}

[[noreturn]] void parse_fail(int lineno, const std::string& what) {
	throw Error("parse", "line " + std::to_string(lineno) + ": " + what);
}

} // namespace

ChannelGraph parse_graph(const std::string& text) {
	ChannelGraph g;
	std::istringstream in(text);
	std::string line;
	int lineno = 0;
	while (std::getline(in, line)) {
		++lineno;
		if (!line.empty() && line.back() == '\r')
			line.pop_back();
		auto toks = split_tokens(line);
		if (toks.empty() || toks[0][0] == '#')
			continue;
		if (toks[0] == "vertex") {
			if (toks.size() != 2)
				parse_fail(lineno, "expected: vertex <name>");
			if (g.vertex_index(toks[1]) >= 0)
				parse_fail(lineno, "duplicate vertex '" + toks[1] + "'");
			g.vertices.push_back(toks[1]);
		} else if (toks[0] == "edge") {
			if (toks.size() != 5)
				parse_fail(lineno, "expected: edge <from> <to> <label> <cost>");
			int from = g.vertex_index(toks[1]);
			int to = g.vertex_index(toks[2]);
			if (from < 0)
				parse_fail(lineno, "unknown vertex '" + toks[1] + "'");
			if (to < 0)
				parse_fail(lineno, "unknown vertex '" + toks[2] + "'");
			long long cost = 0;
			try {
				size_t pos = 0;
				cost = std::stoll(toks[4], &pos);
				if (pos != toks[4].size())
					throw std::invalid_argument("");
			} catch (const std::exception&) {
				parse_fail(lineno, "bad cost '" + toks[4] + "'");
			}
			if (cost < 0)
				parse_fail(lineno, "negative cost");
			g.edges.push_back(Edge{from, to, toks[3], cost});
		} else if (toks[0] == "start") {
			if (toks.size() != 2)
				parse_fail(lineno, "expected: start <name>");
			int idx = g.vertex_index(toks[1]);
			if (idx < 0)
				parse_fail(lineno, "unknown vertex '" + toks[1] + "'");
			g.start = idx;
		} else {
			parse_fail(lineno, "unknown directive '" + toks[0] + "'");
		}
	}
	return g;
}

std::string serialize_graph(const ChannelGraph& g) {
	std::ostringstream out;
	for (const auto& v : g.vertices)
		out << "vertex " << v << "\n";
	for (const auto& e : g.edges)
		out << "edge " << g.vertices[e.init] << " " << g.vertices[e.term]
		    << " " << e.label << " " << e.cost << "\n";
	if (g.start)
		out << "start " << g.vertices[*g.start] << "\n";
	return out.str();
}

bool is_deterministic(const ChannelGraph& g) {
	auto out = g.out_edges();
	for (const auto& idx : out) {
		std::set<std::string> labels;
		for (int ei : idx)
			if (!labels.insert(g.edges[ei].label).second)
				return false;
	}
	return true;
}

std::vector<std::vector<int>> strongly_connected_components(const ChannelGraph& g) {
	// Iterative Tarjan; component vertex lists come out sorted so the
	// result is independent of traversal details.
	int n = g.vertex_count();
	auto out = g.out_edges();
	std::vector<int> index(n, -1), low(n, 0), on_stack(n, 0);
	std::vector<int> stack;
	std::vector<std::vector<int>> comps;
	int counter = 0;

	struct Frame {
		int v;
		size_t next;
	};
	for (int root = 0; root < n; ++root) {
		if (index[root] >= 0)
			continue;
		std::vector<Frame> frames{{root, 0}};
		index[root] = low[root] = counter++;
		stack.push_back(root);
		on_stack[root] = 1;
		while (!frames.empty()) {
			Frame& f = frames.back();
			if (f.next < out[f.v].size()) {
				int w = g.edges[out[f.v][f.next++]].term;
				if (index[w] < 0) {
					index[w] = low[w] = counter++;
					stack.push_back(w);
					on_stack[w] = 1;
					frames.push_back({w, 0});
				} else if (on_stack[w]) {
					low[f.v] = std::min(low[f.v], index[w]);
				}
			} else {
				if (low[f.v] == index[f.v]) {
					std::vector<int> comp;
					int w;
					do {
						w = stack.back();
						stack.pop_back();
						on_stack[w] = 0;
						comp.push_back(w);
					} while (w != f.v);
					std::sort(comp.begin(), comp.end());
					comps.push_back(std::move(comp));
				}
				int v = f.v;
				frames.pop_back();
				if (!frames.empty())
					low[frames.back().v] = std::min(low[frames.back().v], low[v]);
			}
		}
	}
	// Deterministic order: by smallest contained vertex.
	std::sort(comps.begin(), comps.end(),
	          [](const auto& a, const auto& b) { return a[0] < b[0]; });
	return comps;
}

bool is_strongly_connected(const ChannelGraph& g) {
	if (g.vertex_count() <= 1)
		return true; // single vertex, with or without self-loops
	return strongly_connected_components(g).size() == 1;
}

ChannelGraph induced_subgraph(const ChannelGraph& g, const std::vector<int>& keep) {
	std::vector<int> remap(g.vertex_count(), -1);
	ChannelGraph h;
	for (int v : keep) {
		remap[v] = int(h.vertices.size());
		h.vertices.push_back(g.vertices[v]);
	}
	for (const auto& e : g.edges)
		if (remap[e.init] >= 0 && remap[e.term] >= 0)
			h.edges.push_back(Edge{remap[e.init], remap[e.term], e.label, e.cost});
	if (g.start && remap[*g.start] >= 0)
		h.start = remap[*g.start];
	return h;
}

bool has_zero_cost_cycle(const ChannelGraph& g) {
	// A zero-cost cycle is a cycle of the subgraph of zero-cost edges,
	// i.e. that subgraph has a nontrivial SCC or a zero-cost self-loop.
	ChannelGraph zg;
	zg.vertices = g.vertices;
	for (const auto& e : g.edges)
		if (e.cost == 0) {
			if (e.init == e.term)
				return true;
			zg.edges.push_back(e);
		}
	for (const auto& comp : strongly_connected_components(zg))
		if (comp.size() > 1)
			return true;
	return false;
}

namespace {

// Declared in capacity.cpp; used only for ranking candidate components.
// Returns +infinity for components whose language is infinite at finite
// cost (zero-cost cycle).
double component_capacity_for_ranking(const ChannelGraph& comp);

} // namespace

// Defined out-of-line below to keep the dependency local.
TrimResult trim_to_recurrent(const ChannelGraph& g, int start) {
	if (start < 0 || start >= g.vertex_count())
		throw Error("domain", "start vertex out of range");
	int n = g.vertex_count();
	auto out = g.out_edges();

	// Reachability from start.
	std::vector<char> reach(n, 0);
	std::queue<int> q;
	q.push(start);
	reach[start] = 1;
	while (!q.empty()) {
		int v = q.front();
		q.pop();
		for (int ei : out[v]) {
			int w = g.edges[ei].term;
			if (!reach[w]) {
				reach[w] = 1;
				q.push(w);
			}
		}
	}

	auto comps = strongly_connected_components(g);
	std::vector<const std::vector<int>*> candidates;
	for (const auto& comp : comps) {
		if (!reach[comp[0]])
			continue; // SCC members share reachability
		bool has_cycle = comp.size() > 1;
		if (!has_cycle)
			for (int ei : out[comp[0]])
				if (g.edges[ei].term == comp[0])
					has_cycle = true;
		if (has_cycle)
			candidates.push_back(&comp);
	}
	if (candidates.empty())
		throw Error("structure", "no recurrent behavior reachable from start");

	// Rank by variable-length capacity; ties by smallest vertex index
	// (candidates are already in that order).
	const std::vector<int>* best = nullptr;
	double best_cap = 0;
	for (const auto* comp : candidates) {
		double cap = component_capacity_for_ranking(induced_subgraph(g, *comp));
		if (!best || cap > best_cap + 1e-12) {
			best = comp;
			best_cap = cap;
		}
	}

	TrimResult res;
	res.graph = induced_subgraph(g, *best);
	std::vector<char> kept(n, 0);
	for (int v : *best)
		kept[v] = 1;
	for (int v = 0; v < n; ++v)
		if (!kept[v])
			res.discarded.push_back(g.vertices[v]);
	return res;
}

} // namespace costcap

// The ranking helper lives here but defers to the capacity module; the
// include is placed after the core definitions to keep the header graph
// acyclic.
#include "costcap/capacity.hpp"

namespace costcap {
namespace {

double component_capacity_for_ranking(const ChannelGraph& comp) {
	if (has_zero_cost_cycle(comp))
		return std::numeric_limits<double>::infinity();
	return variable_length_capacity(comp).C;
}

} // namespace
} // namespace costcap
