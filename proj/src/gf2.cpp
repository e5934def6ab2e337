#include "klac/gf2.hpp"

#include <algorithm>

#include "klac/rng.hpp"

namespace klac {

namespace {

// Row reduction with pivot tracking. Rows are folded in one at a time; a
// row that reduces to zero is dependent and `combo` (a row-index bitmask
// over the scan positions) names the combination that cancels it.
struct Eliminator {
  struct Entry {
    uint64_t vec = 0;
    std::vector<uint64_t> combo;  // bitmask over scanned positions
  };
  std::vector<Entry> basis;  // kept sorted by pivot (lowest set bit)
  size_t words;

  explicit Eliminator(size_t positions) : words((positions + 63) / 64) {}

  static int pivot(uint64_t v) { return __builtin_ctzll(v); }

  // Returns the cancelling combination (including position `pos` itself)
  // if the row is dependent on what came before, otherwise inserts it.
  std::optional<std::vector<uint64_t>> fold(uint64_t vec, size_t pos) {
    std::vector<uint64_t> combo(words, 0);
    combo[pos / 64] |= uint64_t{1} << (pos % 64);
    for (const Entry& e : basis) {
      if (vec == 0) break;
      if ((vec >> pivot(e.vec)) & 1u) {
        vec ^= e.vec;
        for (size_t w = 0; w < words; ++w) combo[w] ^= e.combo[w];
      }
    }
    if (vec == 0) return combo;
    Entry entry{vec, std::move(combo)};
    auto at = std::find_if(basis.begin(), basis.end(), [&](const Entry& e) {
      return pivot(e.vec) > pivot(entry.vec);
    });
    basis.insert(at, std::move(entry));
    return std::nullopt;
  }
};

std::vector<int> combo_to_positions(const std::vector<uint64_t>& combo) {
  std::vector<int> out;
  for (size_t w = 0; w < combo.size(); ++w) {
    uint64_t word = combo[w];
    while (word) {
      int b = __builtin_ctzll(word);
      out.push_back(static_cast<int>(w * 64) + b);
      word &= word - 1;
    }
  }
  return out;
}

// Scans the given rows in order; on the first row dependent on its
// predecessors, returns the positions (into `order`) of the cancelling
// combination. The predecessors are independent, so the combination is a
// minimal dependent set.
std::optional<std::vector<int>> first_dependency_scan(
    const BitMatrix& m, const std::vector<int>& order) {
  Eliminator elim(order.size());
  for (size_t pos = 0; pos < order.size(); ++pos) {
    auto combo = elim.fold(m.row(order[pos]).bits, pos);
    if (combo) return combo_to_positions(*combo);
  }
  return std::nullopt;
}

std::vector<int> identity_order(int n) {
  std::vector<int> order(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<size_t>(i)] = i + 1;
  return order;
}

}  // namespace

int rank(const BitMatrix& m) {
  std::vector<uint64_t> basis;
  for (const BitVec& row : m.rows) {
    uint64_t v = row.bits;
    for (uint64_t b : basis) {
      v = std::min(v, v ^ b);
    }
    if (v != 0) basis.push_back(v);
  }
  return static_cast<int>(basis.size());
}

bool in_span(const BitMatrix& m, const BitVec& v) {
  if (v.len != m.dim) {
    throw std::invalid_argument("in_span: dimension mismatch");
  }
  std::vector<uint64_t> basis;
  for (const BitVec& row : m.rows) {
    uint64_t x = row.bits;
    for (uint64_t b : basis) x = std::min(x, x ^ b);
    if (x != 0) basis.push_back(x);
  }
  uint64_t x = v.bits;
  for (uint64_t b : basis) x = std::min(x, x ^ b);
  return x == 0;
}

std::optional<std::vector<int>> find_dependency(const BitMatrix& m) {
  auto positions = first_dependency_scan(m, identity_order(m.row_count()));
  if (!positions) return std::nullopt;
  for (int& p : *positions) ++p;  // positions == row indices - 1 here
  return positions;
}

Circuit minimize_to_circuit(const BitMatrix& m, const std::vector<int>& dep) {
  std::vector<int> order(dep);
  std::sort(order.begin(), order.end());
  order.erase(std::unique(order.begin(), order.end()), order.end());
  BitVec sum = BitVec::zeros(m.dim);
  for (int idx : order) {
    if (idx < 1 || idx > m.row_count()) {
      throw std::invalid_argument("minimize_to_circuit: index out of range");
    }
    sum = sum ^ m.row(idx);
  }
  if (!sum.is_zero()) {
    throw std::invalid_argument(
        "minimize_to_circuit: rows do not sum to zero");
  }
  auto positions = first_dependency_scan(m, order);
  // `order` is dependent overall, so a first dependent row exists.
  Circuit c;
  c.indices.reserve(positions->size());
  for (int p : *positions) {
    c.indices.push_back(order[static_cast<size_t>(p)]);
  }
  std::sort(c.indices.begin(), c.indices.end());
  return c;
}

std::optional<Circuit> find_small_circuit(const BitMatrix& m, int trials,
                                          std::mt19937_64& rng) {
  if (trials < 1) {
    throw std::invalid_argument("find_small_circuit: trials must be >= 1");
  }
  std::optional<std::vector<int>> best;
  std::vector<int> order = identity_order(m.row_count());
  for (int attempt = 0; attempt < trials; ++attempt) {
    if (attempt > 0) rng_shuffle(rng, order);
    auto positions = first_dependency_scan(m, order);
    if (!positions) {
      // Independent rows stay independent under permutation.
      return std::nullopt;
    }
    std::vector<int> indices;
    indices.reserve(positions->size());
    for (int p : *positions) indices.push_back(order[static_cast<size_t>(p)]);
    std::sort(indices.begin(), indices.end());
    if (!best || indices.size() < best->size() ||
        (indices.size() == best->size() && indices < *best)) {
      best = std::move(indices);
    }
  }
  return Circuit{std::move(*best)};
}

std::optional<Circuit> find_small_circuit(const BitMatrix& m, int trials,
                                          uint64_t seed) {
  std::mt19937_64 rng(seed);
  return find_small_circuit(m, trials, rng);
}

}  // namespace klac
