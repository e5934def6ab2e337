// The constructions: block-diagonal scheme (full and adapted), chain covers,
// successive circuit removal, branch-and-search, and the exact brute-force
// oracle. Every operation returns a CoverScheme that passes verify_cover.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "klac/cover.hpp"
#include "klac/gf2.hpp"

namespace klac {

// Block-diagonal construction covering the full space of dimension t: the
// coordinate axis is split into sections of length m = ceil(t/k) (the last
// section possibly shorter) and each section contributes all its nonzero
// patterns as rows, in increasing integer order (001, 010, 011, ...). Any
// target splits into at most k nonzero section patterns. Row count is
// (k-1)(2^m - 1) + 2^(t-(k-1)m) - 1 whenever t - (k-1)m >= 0; fewer
// sections are used when m does not fit k-1 times. Witnesses are keyed by
// msb_id. Range: t >= 2, 1 <= k < ceil(t/2).
CoverScheme scheme1_full(int t, int k);

// Partial-space adaptation: columns of g are permuted by decreasing column
// weight (ties by original column index), each section keeps only the
// distinct nonzero patterns that actually occur among g's rows (in first-
// occurrence order), and the output rows are mapped back to the original
// column order. Witnesses are keyed by g row index. Row count never exceeds
// scheme1_full(t, k)'s. Requires nonzero distinct rows and k in range.
CoverScheme scheme1_adapted(const BitMatrix& g, int k);

// Prefix-sum cover: a_j = g_{order[1]} ^ ... ^ g_{order[j]}. Row order[1]
// is witnessed by {1}, row order[j] by {j-1, j}; rows outside `order` must
// equal a single prefix sum or the XOR of two (e.g. the member left out of
// a circuit equals the full sum), otherwise std::invalid_argument. k = 2.
CoverScheme chain_cover(const BitMatrix& g, const std::vector<int>& order);

// Concatenation of several chains over disjoint row sets; each row is
// witnessed within the first chain able to. Used for instances that split
// into independent chains plus circuits.
CoverScheme chain_cover_parts(const BitMatrix& g,
                              const std::vector<std::vector<int>>& orders);

// Successive circuit removal, q rounds; k = 2^q. Each round repeatedly
// finds a small circuit of the working matrix, emits the circuit's chain
// rows (prefix sums of all members but the last), and removes the circuit;
// the independent remainder is emitted verbatim. Witnesses are composed
// across rounds by XOR-cancellation so each original row needs at most 2^q
// final rows. `trials` is the circuit-finder quality knob; `seed` drives
// its randomized attempts.
CoverScheme scr(const BitMatrix& g, int q, int trials = 1, uint64_t seed = 0);

// The dependency graph behind branch-and-search. Nodes are numbered: u-node
// i (the i-th independent row kept) is node i, intermediate j is node
// T + j. Each dependent row's inbound set lists the nodes XORing to it.
struct Intermediate {
  BitVec value;
  int parent_a = 0;  // node ids
  int parent_b = 0;
};

struct CoverGraph {
  std::vector<int> u_nodes;  // g row indices of the greedy basis, scan order
  std::vector<int> v_nodes;  // g row indices of the dependent rows
  std::map<int, std::vector<int>> inbound;  // g row index -> node ids, asc
  std::vector<Intermediate> intermediates;
  int iterations = 0;  // branches created

  BitVec node_value(const BitMatrix& g, int node) const;
};

struct BranchResult {
  CoverGraph graph;
  BitMatrix r;  // candidate pool: u-node values then intermediate values,
                // first occurrence kept on duplicates
};

// Degree-greedy branching: while some dependent row combines more than k
// nodes, pick the one with the most (ties: lowest row index), chain its
// inbound nodes (sorted by descending out-degree, ties by node id) into
// prefix-sum intermediates, and substitute the chain head into every
// inbound set (of rows still above degree k) whose intersection with the
// chain is exactly a prefix of length >= 2. Terminates within
// (dependent count) iterations. Requires rank(g) = dim, k >= 2, nonzero
// distinct rows. include_dependents additionally appends the dependent
// rows' own values to r.
BranchResult branch(const BitMatrix& g, int k,
                    bool include_dependents = false);

struct SearchLimits {
  uint64_t max_subsets = 10'000'000;         // search tree nodes examined
  std::optional<double> wall_seconds = 60.0; // absent = no wall-clock limit
};

enum class SearchStatus { optimal, exhausted };

struct SearchOutcome {
  SearchStatus status = SearchStatus::optimal;
  std::optional<CoverScheme> scheme;  // absent only if exhausted before any
                                      // full cover was found
  uint64_t subsets_examined = 0;
};

// Minimum-cardinality subset of r's rows covering every row of g with <= k
// additions. A greedy cover over r is taken as incumbent, then subset sizes
// are proven impossible in ascending order from max(rank(g), t_star) until
// the incumbent is matched or refuted down to optimality; candidate subsets
// with rank below rank(g) are pruned. Exhausting `limits` mid-proof returns
// the incumbent with status exhausted. A row of g outside the span of r (or
// with no witness at all within r) throws std::domain_error — reported
// distinctly from limit exhaustion.
SearchOutcome search(const BitMatrix& r, const BitMatrix& g, int k,
                     const SearchLimits& limits = {});

// Global optimum: search over all 2^t - 1 nonzero vectors as the candidate
// pool. Ground-truth oracle; dimension capped (default 5).
SearchOutcome brute_force_optimal(const BitMatrix& g, int k,
                                  const SearchLimits& limits = {},
                                  int max_dim = 5);

}  // namespace klac
