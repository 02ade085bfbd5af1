#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace costcap {

// Error raised by analysis/parsing routines. `code` is a short
// machine-readable token (the CLI prints it in its error line).
class Error : public std::runtime_error {
public:
	Error(std::string code, const std::string& message)
		: std::runtime_error(message), code_(std::move(code)) {}
	const std::string& code() const { return code_; }

private:
	std::string code_;
};

struct Edge {
	int init;          // index of the initial vertex
	int term;          // index of the terminal vertex
	std::string label; // symbol token
	long long cost;    // nonnegative integer cost
};

// Labeled, integer-weighted digraph. Vertex order is declaration order and
// doubles as the matrix row index everywhere downstream; the structure is
// immutable after construction, so instances can be shared freely.
struct ChannelGraph {
	std::vector<std::string> vertices;
	std::vector<Edge> edges;
	std::optional<int> start;

	int vertex_count() const { return int(vertices.size()); }

	int vertex_index(const std::string& name) const {
		for (int i = 0; i < int(vertices.size()); ++i)
			if (vertices[i] == name)
				return i;
		return -1;
	}

	// Symbol tokens in use, sorted (derived, not stored).
	std::set<std::string> alphabet() const {
		std::set<std::string> a;
		for (const auto& e : edges)
			a.insert(e.label);
		return a;
	}

	std::vector<std::vector<int>> out_edges() const; // edge indices per vertex

	long long max_cost() const {
		long long m = 0;
		for (const auto& e : edges)
			if (e.cost > m)
				m = e.cost;
		return m;
	}
};

// Result of pruning to the dominant recurrent component.
struct TrimResult {
	ChannelGraph graph;
	std::vector<std::string> discarded; // names of dropped vertices
};

// Graph file format (line based, UTF-8):
//   # comment
//   vertex <name>
//   edge <from> <to> <label> <cost>
//   start <name>
// Names and labels are whitespace-free tokens; cost is a decimal
// nonnegative integer. Vertex declaration order fixes the index order.
ChannelGraph parse_graph(const std::string& text);
std::string serialize_graph(const ChannelGraph& g);

bool is_deterministic(const ChannelGraph& g);

// True iff every ordered vertex pair is connected by a directed path.
// A single vertex counts as strongly connected even without edges.
bool is_strongly_connected(const ChannelGraph& g);

// Strongly connected components in a deterministic order; each component
// lists vertex indices in increasing order.
std::vector<std::vector<int>> strongly_connected_components(const ChannelGraph& g);

// Induced subgraph on the given vertex set (original order preserved).
// The start vertex is kept only if it lies in the set.
ChannelGraph induced_subgraph(const ChannelGraph& g, const std::vector<int>& keep);

// Keep only the strongly connected component with the largest
// variable-length capacity among the components reachable from `start`
// that contain a cycle. Ties go to the component with the smallest
// minimum vertex index. The dominant recurrent component governs the
// growth of the follower language, which is why capacity is the ranking.
TrimResult trim_to_recurrent(const ChannelGraph& g, int start);

// True iff some cycle consists entirely of zero-cost edges.
bool has_zero_cost_cycle(const ChannelGraph& g);

} // namespace costcap
