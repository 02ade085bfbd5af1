#pragma once

#include <gmpxx.h>
#include <optional>
#include <string>
#include <vector>

#include "costcap/capacity.hpp"
#include "costcap/graph.hpp"

namespace costcap {

// Periodic subsequence graph G(r) of the periodic supersequence (r r r ...).
// One vertex per period position; an edge v_i -> v_j exists when position j
// holds the first occurrence of symbol r_j strictly after position i
// (cyclically). The label is r_j and the cost is the cyclic distance
// (j - i if i < j, else M - i + j). Start vertex is v_M, the last period
// position. Requires M >= 2 and at least two distinct symbols.
ChannelGraph periodic_subsequence_graph(const std::string& r);

// Number of distinct subsequences (including the empty word) of `prefix`,
// optionally restricted to length n. Classic last-occurrence DP, exact.
mpz_class finite_subsequence_oracle(const std::string& prefix,
                                    std::optional<long long> n = std::nullopt);

// Synchronized product on equal labels: vertices V1 x V2, cost taken from
// the weighted factor g1, label inherited, start = (start1, start2) when
// both are defined. The language of the product is the intersection of the
// factor languages.
ChannelGraph label_product(const ChannelGraph& g1, const ChannelGraph& g2);

// Builtin constraint automata (unweighted; all costs zero):
//   max-run(s, L):  runs of s no longer than L             (L+1 states)
//   min-run(s, L):  runs of s, once started, have length at least L;
//                   states v2..vL force the run on, v_{L+1} lets it
//                   continue or stop                        (L+1 states)
//   identity:       single state, one self-loop per symbol
// Start vertex is v1.
ChannelGraph builtin_constraint(const std::string& name,
                                const std::string& symbol, int len,
                                const std::vector<std::string>& alphabet);

struct SynthesisSpec {
	std::string period;                  // M >= 2, >= 2 distinct symbols
	std::optional<ChannelGraph> constraint; // unweighted, with start vertex
};

// The channel actually analyzed for a spec: G(r), optionally producted
// with the constraint and pruned to the dominant recurrent component.
ChannelGraph synthesis_channel(const SynthesisSpec& spec);

// Bits per synthesis cycle: variable-length capacity of the (possibly
// constrained and pruned) synthesis channel.
CapacityResult synthesis_capacity(const SynthesisSpec& spec);

// Fixed-length synthesis capacity C(alpha) of the same channel.
double synthesis_capacity_fixed(const SynthesisSpec& spec, double alpha);

} // namespace costcap
