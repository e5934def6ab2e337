#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "klac/schemes.hpp"

namespace klac {

CoverScheme chain_cover_parts(const BitMatrix& g,
                              const std::vector<std::vector<int>>& orders) {
  std::unordered_set<int> used;
  for (const auto& order : orders) {
    if (order.empty()) {
      throw std::invalid_argument("chain_cover: empty order");
    }
    for (int idx : order) {
      if (idx < 1 || idx > g.row_count()) {
        throw std::invalid_argument("chain_cover: row index out of range");
      }
      if (!used.insert(idx).second) {
        throw std::invalid_argument("chain_cover: repeated row index " +
                                    std::to_string(idx));
      }
    }
  }

  CoverScheme s;
  s.k = 2;
  s.a_k.dim = g.dim;
  std::unordered_map<uint64_t, int> prefix_index;  // value -> 1-based a row
  for (const auto& order : orders) {
    BitVec prefix = BitVec::zeros(g.dim);
    int prev = 0;
    for (size_t pos = 0; pos < order.size(); ++pos) {
      prefix = prefix ^ g.row(order[pos]);
      if (prefix.is_zero()) {
        throw std::invalid_argument(
            "chain_cover: prefix sum vanishes (order is not independent)");
      }
      if (!prefix_index.emplace(prefix.bits, s.a_k.row_count() + 1).second) {
        throw std::invalid_argument("chain_cover: duplicate prefix sum");
      }
      s.a_k.append(prefix);
      int cur = s.a_k.row_count();
      s.witnesses.emplace(order[pos], pos == 0 ? std::vector<int>{cur}
                                               : std::vector<int>{prev, cur});
      prev = cur;
    }
  }

  // Rows outside the orders must equal one prefix sum (e.g. the member left
  // out of a circuit equals that chain's full sum) or the XOR of two.
  for (int j = 1; j <= g.row_count(); ++j) {
    if (used.count(j)) continue;
    const BitVec& v = g.row(j);
    auto hit = prefix_index.find(v.bits);
    if (hit != prefix_index.end()) {
      s.witnesses.emplace(j, std::vector<int>{hit->second});
      continue;
    }
    bool found = false;
    for (int a = 1; a <= s.a_k.row_count() && !found; ++a) {
      auto other = prefix_index.find(v.bits ^ s.a_k.row(a).bits);
      if (other != prefix_index.end() && other->second > a) {
        s.witnesses.emplace(j, std::vector<int>{a, other->second});
        found = true;
      }
    }
    if (!found) {
      throw std::invalid_argument(
          "chain_cover: row " + std::to_string(j) +
          " cannot be witnessed within 2 additions of the chain");
    }
  }
  return s;
}

CoverScheme chain_cover(const BitMatrix& g, const std::vector<int>& order) {
  return chain_cover_parts(g, {order});
}

}  // namespace klac
