#include <algorithm>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "klac/rng.hpp"
#include "klac/schemes.hpp"

namespace klac {

namespace {

void check_rows_nonzero_distinct(const BitMatrix& g) {
  std::unordered_set<uint64_t> seen;
  for (int i = 1; i <= g.row_count(); ++i) {
    if (g.row(i).is_zero()) {
      throw std::invalid_argument("scr: row " + std::to_string(i) +
                                  " is zero");
    }
    if (!seen.insert(g.row(i).bits).second) {
      throw std::invalid_argument("scr: row " + std::to_string(i) +
                                  " duplicates another");
    }
  }
}

struct RoundResult {
  std::vector<BitVec> out_rows;
  // witness[i] = 1-based indices into out_rows composing input row i+1
  // (singleton, or the two adjacent chain prefixes).
  std::vector<std::vector<int>> witness;
};

// One pass of successive circuit removal over `input` (k = 2): repeatedly
// find a small circuit, emit the prefix sums of all members but the last,
// remove the circuit; emit the independent remainder verbatim. Equal output
// values are emitted once and shared.
RoundResult run_round(const std::vector<BitVec>& input, int dim, int trials,
                      std::mt19937_64& rng) {
  RoundResult res;
  res.witness.assign(input.size(), {});
  std::unordered_map<uint64_t, int> out_index;
  auto emit = [&](const BitVec& v) {
    auto [it, fresh] =
        out_index.emplace(v.bits, static_cast<int>(res.out_rows.size()) + 1);
    if (fresh) res.out_rows.push_back(v);
    return it->second;
  };

  // Residual rows keep their original input position for witness tracking.
  std::vector<std::pair<int, BitVec>> residual;
  residual.reserve(input.size());
  for (size_t i = 0; i < input.size(); ++i) {
    residual.emplace_back(static_cast<int>(i), input[i]);
  }

  while (true) {
    BitMatrix m(dim);
    for (const auto& [pos, v] : residual) {
      (void)pos;
      m.rows.push_back(v);
    }
    auto circuit = find_small_circuit(m, trials, rng);
    if (!circuit) break;
    const std::vector<int>& members = circuit->indices;  // ascending
    int r = static_cast<int>(members.size()) - 1;
    BitVec prefix = BitVec::zeros(dim);
    int prev = 0;
    for (int t = 1; t <= r; ++t) {
      auto& [orig, value] = residual[static_cast<size_t>(members[t - 1] - 1)];
      prefix = prefix ^ value;
      int cur = emit(prefix);
      res.witness[static_cast<size_t>(orig)] =
          (t == 1) ? std::vector<int>{cur}
                   : std::vector<int>{std::min(prev, cur),
                                      std::max(prev, cur)};
      prev = cur;
    }
    // The member left out equals the full prefix sum.
    int leftout = residual[static_cast<size_t>(members.back() - 1)].first;
    res.witness[static_cast<size_t>(leftout)] = {prev};
    for (auto it = members.rbegin(); it != members.rend(); ++it) {
      residual.erase(residual.begin() + (*it - 1));
    }
  }
  for (const auto& [orig, value] : residual) {
    res.witness[static_cast<size_t>(orig)] = {emit(value)};
  }
  return res;
}

}  // namespace

CoverScheme scr(const BitMatrix& g, int q, int trials, uint64_t seed) {
  if (q < 1) throw std::invalid_argument("scr: q must be >= 1");
  if (trials < 1) throw std::invalid_argument("scr: trials must be >= 1");
  check_rows_nonzero_distinct(g);
  std::mt19937_64 rng(seed);

  std::vector<BitVec> rows(g.rows);
  // Witness of each original row in terms of the current `rows`.
  std::vector<std::vector<int>> witness(static_cast<size_t>(g.row_count()));
  for (int i = 1; i <= g.row_count(); ++i) {
    witness[static_cast<size_t>(i - 1)] = {i};
  }

  for (int round = 0; round < q; ++round) {
    RoundResult res = run_round(rows, g.dim, trials, rng);
    for (auto& w : witness) {
      // XOR-cancelling composition: a row referenced an even number of
      // times drops out of the combination.
      std::set<int> acc;
      for (int j : w) {
        for (int idx : res.witness[static_cast<size_t>(j - 1)]) {
          auto [it, fresh] = acc.insert(idx);
          if (!fresh) acc.erase(it);
        }
      }
      w.assign(acc.begin(), acc.end());
    }
    rows = std::move(res.out_rows);
  }

  CoverScheme s;
  s.k = 1 << q;
  s.a_k.dim = g.dim;
  s.a_k.rows = std::move(rows);
  for (int i = 1; i <= g.row_count(); ++i) {
    s.witnesses.emplace(i, std::move(witness[static_cast<size_t>(i - 1)]));
  }
  return s;
}

}  // namespace klac
