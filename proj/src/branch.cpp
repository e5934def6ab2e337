#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "klac/schemes.hpp"

namespace klac {

BitVec CoverGraph::node_value(const BitMatrix& g, int node) const {
  int t = static_cast<int>(u_nodes.size());
  if (node >= 1 && node <= t) {
    return g.row(u_nodes[static_cast<size_t>(node - 1)]);
  }
  return intermediates[static_cast<size_t>(node - t - 1)].value;
}

namespace {

// Basis with combination tracking over the u-node positions (at most 64 of
// them, so one word per combination). Entries are kept sorted by pivot
// (lowest set bit); every stored vector has all earlier pivots cleared.
struct TrackedBasis {
  struct Entry {
    uint64_t vec = 0;
    uint64_t combo = 0;
    int pivot = 0;
  };
  std::vector<Entry> entries;

  void insert(uint64_t vec, int position) {
    uint64_t combo = uint64_t{1} << position;
    reduce(&vec, &combo);
    Entry e{vec, combo, __builtin_ctzll(vec)};
    auto at = std::find_if(entries.begin(), entries.end(),
                           [&](const Entry& x) { return x.pivot > e.pivot; });
    entries.insert(at, e);
  }

  // Reduces *vec by the basis, XORing used combinations into *combo.
  void reduce(uint64_t* vec, uint64_t* combo) const {
    for (const Entry& e : entries) {
      if (*vec == 0) break;
      if ((*vec >> e.pivot) & 1u) {
        *vec ^= e.vec;
        *combo ^= e.combo;
      }
    }
  }
};

}  // namespace

BranchResult branch(const BitMatrix& g, int k, bool include_dependents) {
  if (k < 2) throw std::invalid_argument("branch: k must be >= 2");
  std::unordered_set<uint64_t> seen;
  for (int i = 1; i <= g.row_count(); ++i) {
    if (g.row(i).is_zero()) {
      throw std::invalid_argument("branch: row " + std::to_string(i) +
                                  " is zero");
    }
    if (!seen.insert(g.row(i).bits).second) {
      throw std::invalid_argument("branch: row " + std::to_string(i) +
                                  " duplicates another");
    }
  }

  CoverGraph graph;
  // Greedy basis: scan rows in order, keep those that increase the rank.
  TrackedBasis basis;
  for (int i = 1; i <= g.row_count(); ++i) {
    uint64_t vec = g.row(i).bits, combo = 0;
    basis.reduce(&vec, &combo);
    if (vec != 0) {
      basis.insert(g.row(i).bits,
                   static_cast<int>(graph.u_nodes.size()));
      graph.u_nodes.push_back(i);
    } else {
      graph.v_nodes.push_back(i);
    }
  }
  int rank_found = static_cast<int>(graph.u_nodes.size());
  if (rank_found < g.dim) {
    throw std::domain_error("branch: rank(g) is below the dimension");
  }
  int t = rank_found;

  // Inbound sets: each dependent row expressed over the basis.
  std::unordered_map<int, int> degree;  // node id -> inbound memberships
  for (int row : graph.v_nodes) {
    uint64_t vec = g.row(row).bits, combo = 0;
    basis.reduce(&vec, &combo);
    std::vector<int> nodes;
    while (combo) {
      int pos = __builtin_ctzll(combo);
      combo &= combo - 1;
      nodes.push_back(pos + 1);
    }
    for (int node : nodes) ++degree[node];
    graph.inbound.emplace(row, std::move(nodes));
  }

  while (true) {
    // Highest-degree dependent above k; ties to the lowest row index.
    int picked = 0;
    size_t best_deg = static_cast<size_t>(k);
    for (int row : graph.v_nodes) {
      if (graph.inbound[row].size() > best_deg) {
        best_deg = graph.inbound[row].size();
        picked = row;
      }
    }
    if (picked == 0) break;
    ++graph.iterations;

    // Chain the inbound nodes by descending out-degree (ties: lower id).
    std::vector<int> chain = graph.inbound[picked];
    std::stable_sort(chain.begin(), chain.end(), [&](int a, int b) {
      int da = degree.count(a) ? degree.at(a) : 0;
      int db = degree.count(b) ? degree.at(b) : 0;
      if (da != db) return da > db;
      return a < b;
    });
    int d = static_cast<int>(chain.size());
    // chain_node[l] = intermediate holding the XOR of chain[0..l]; l >= 1.
    std::vector<int> chain_node(static_cast<size_t>(d));
    BitVec prefix = graph.node_value(g, chain[0]);
    int prev_id = chain[0];
    for (int l = 1; l < d; ++l) {
      prefix = prefix ^ graph.node_value(g, chain[static_cast<size_t>(l)]);
      graph.intermediates.push_back(
          {prefix, prev_id, chain[static_cast<size_t>(l)]});
      prev_id = t + static_cast<int>(graph.intermediates.size());
      chain_node[static_cast<size_t>(l)] = prev_id;
    }

    // Substitute the chain head into inbound sets (of dependents still at
    // degree >= k) whose intersection with the chain is exactly a prefix of
    // length >= 2. The picked row intersects in the full chain and drops to
    // degree 1.
    for (int row : graph.v_nodes) {
      std::vector<int>& in = graph.inbound[row];
      if (static_cast<int>(in.size()) < k) continue;
      std::unordered_set<int> members(in.begin(), in.end());
      int len = 0;
      while (len < d && members.count(chain[static_cast<size_t>(len)])) {
        ++len;
      }
      if (len < 2) continue;
      bool exact = true;
      for (int j = len; j < d; ++j) {
        if (members.count(chain[static_cast<size_t>(j)])) {
          exact = false;
          break;
        }
      }
      if (!exact) continue;
      int replacement = chain_node[static_cast<size_t>(len - 1)];
      std::erase_if(in, [&](int node) {
        for (int j = 0; j < len; ++j) {
          if (chain[static_cast<size_t>(j)] == node) return true;
        }
        return false;
      });
      for (int j = 0; j < len; ++j) {
        --degree[chain[static_cast<size_t>(j)]];
      }
      in.push_back(replacement);
      std::sort(in.begin(), in.end());
      ++degree[replacement];
    }
  }

  BranchResult result;
  result.graph = std::move(graph);
  result.r.dim = g.dim;
  std::unordered_set<uint64_t> in_r;
  auto add = [&](const BitVec& v) {
    if (in_r.insert(v.bits).second) result.r.rows.push_back(v);
  };
  for (int row : result.graph.u_nodes) add(g.row(row));
  for (const Intermediate& w : result.graph.intermediates) add(w.value);
  if (include_dependents) {
    for (int row : result.graph.v_nodes) add(g.row(row));
  }
  return result;
}

}  // namespace klac
