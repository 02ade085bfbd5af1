#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "costcap/graph.hpp"
#include "costcap/rational.hpp"

namespace costcap {

// Structural classification of a strongly connected graph.
//
// cost_period_c == 0 is the cost-uniform sentinel: equal-length paths with
// equal endpoints then have *equal* cost and the coboundary identity
// tau(e) = b + B(term) - B(init) holds exactly. For c > 0 the identity
// holds modulo c and the graph is cost-diverse.
struct StructureReport {
	bool deterministic = false;
	bool strongly_connected = false;
	long long period_d = 1;
	long long cost_period_c = 0;
	Rat b;
	std::vector<Rat> B; // per vertex, B[root] = 0, reduced to [0,c) when c > 0
	bool cost_diverse = false;
};

// Compute period d, cost-period c and the coboundary pair (b, B).
//
// Exact integer algorithm: root the graph at vertex 0, build a spanning
// arborescence assigning each vertex its tree-path (len, cost); every edge
// u->v contributes the lattice vector (len_u + 1 - len_v, cost_u + tau - cost_v)
// in Z^2. The Hermite normal form of the generated lattice has the shape
// {(d, e0), (0, c)}; then b = e0/d and B(v) = cost_v - b*len_v (mod c).
// No floating point is involved anywhere.
StructureReport analyze_structure(const ChannelGraph& g);

// Re-check the (c-periodic) coboundary congruence of a report against its
// graph with exact rational arithmetic.
bool verify_coboundary(const ChannelGraph& g, const StructureReport& report);

// One witness: two equal-length paths between the same endpoints with
// different costs, as edge-index sequences.
struct DiversityWitness {
	std::vector<int> path_a;
	std::vector<int> path_b;
};

// Brute-force search (DP over path length and endpoint pair) for a
// cost-diversity witness of length <= maxLen. Test oracle for
// analyze_structure; exponentially sized sets are avoided by keeping
// per-(length,endpoints) cost sets, which stay small on the graphs this
// is meant for.
std::pair<bool, std::optional<DiversityWitness>>
cost_diversity_oracle(const ChannelGraph& g, int maxLen);

} // namespace costcap
