// GF(2) linear algebra on BitMatrix: rank, span membership, dependency
// extraction, and minimal-dependent-set (circuit) finding.
#pragma once

#include <optional>
#include <random>
#include <vector>

#include "klac/bits.hpp"

namespace klac {

// A minimal linearly dependent set of row indices (1-based, ascending,
// size >= 2). Over GF(2) the indexed rows XOR to zero and every proper
// subset is independent.
struct Circuit {
  std::vector<int> indices;

  friend bool operator==(const Circuit& a, const Circuit& b) {
    return a.indices == b.indices;
  }
};

int rank(const BitMatrix& m);

// True iff v is a GF(2) linear combination of rows of m (the zero vector
// always is). Throws std::invalid_argument on dimension mismatch.
bool in_span(const BitMatrix& m, const BitVec& v);

// Indices of some subset of rows XORing to zero, ascending; absent iff the
// rows are linearly independent.
std::optional<std::vector<int>> find_dependency(const BitMatrix& m);

// Shrinks a dependent index set to a minimal one. The rows indexed by `dep`
// must XOR to zero (std::invalid_argument otherwise). Deterministic: scans
// `dep` in ascending order and returns the combination witnessing the first
// row that becomes dependent, which is minimal because all earlier rows are
// independent.
Circuit minimize_to_circuit(const BitMatrix& m, const std::vector<int>& dep);

// Smallest circuit found over `trials` row-order attempts: attempt 1 scans
// rows in matrix order (fully deterministic), later attempts use random
// permutations drawn from `rng` (or from a fixed default seed). Ties between
// equal-sized circuits go to the lexicographically smaller index set. Absent
// iff the rows are independent. Any returned circuit has size <= rank(m)+1.
std::optional<Circuit> find_small_circuit(const BitMatrix& m, int trials,
                                          std::mt19937_64& rng);
std::optional<Circuit> find_small_circuit(const BitMatrix& m, int trials = 1,
                                          uint64_t seed = 0);

}  // namespace klac
