// Independent cover verification and witness recovery: exact
// meet-in-the-middle decomposition plus whole-scheme checks.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "klac/cover.hpp"

namespace klac {

struct VerifyFailure {
  int64_t target = 0;
  std::string reason;
};

struct VerifyReport {
  bool ok = true;  // iff failures is empty
  std::vector<VerifyFailure> failures;
  int max_witness_size = 0;
  int64_t checked = 0;
};

// Smallest set S of row indices of `a` (|S| <= k) whose rows XOR to v;
// ties broken lexicographically; absent iff no such set exists (exact).
// The zero vector decomposes to the empty set. Found meet-in-the-middle:
// XOR sums of all ceil(s/2)-subsets are tabulated and matched against
// floor(s/2)-subsets, per size s ascending.
std::optional<std::vector<int>> decompose(const BitMatrix& a, const BitVec& v,
                                          int k);

// Reusable decomposition tables over a fixed matrix; equivalent to calling
// decompose repeatedly but builds each half-size table once.
class Decomposer {
 public:
  explicit Decomposer(const BitMatrix& a);
  std::optional<std::vector<int>> query(const BitVec& v, int k) const;

 private:
  const std::vector<int>& half_subsets(int size) const;
  const std::unordered_map<uint64_t, std::vector<int>>& half_table(
      int size) const;

  const BitMatrix& a_;
  // Lazily built per half-size: map from XOR value to the list of start
  // offsets of subsets (stored flat) achieving it, in lexicographic order.
  mutable std::vector<std::optional<
      std::unordered_map<uint64_t, std::vector<int>>>> tables_;
  mutable std::vector<std::vector<int>> subset_pool_;
};

// Checks every stored witness of `scheme` against the targets in `g` (XOR
// equality, size within [1, k], indices in range) and independently
// re-derives a witness for every row of g via decompose. Rows of g without
// a stored witness, and stored witnesses for targets outside g, are
// failures. Never throws on bad data; failures are data.
VerifyReport verify_cover(const CoverScheme& scheme, const BitMatrix& g);

// verify_cover against the implicit G of all 2^t - 1 nonzero vectors
// (targets keyed by msb_id), without materializing G. Witness existence is
// re-derived for all targets at once by enumerating XOR sums of up to k
// rows of a_k and recording the smallest subset size reaching each value.
// Guard: t <= 20.
VerifyReport verify_full_space(const CoverScheme& scheme, int t);

std::string render_report_text(const VerifyReport& r);
std::string render_report_csv(const VerifyReport& r);  // one row per failure

}  // namespace klac
