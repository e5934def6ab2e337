#include <algorithm>
#include <chrono>
#include <unordered_map>

#include "klac/bounds.hpp"
#include "klac/schemes.hpp"
#include "klac/verify.hpp"

namespace klac {

namespace {

using Clock = std::chrono::steady_clock;

// Exact minimum-cover search over a fixed candidate pool. Subset sizes are
// refuted in ascending order below a greedy incumbent; the DFS branches on
// the uncovered target with the fewest viable witnesses and extends the
// current selection by whole witnesses. The pool is deduplicated by value
// (zero rows dropped) so returned schemes have distinct nonzero rows.
class CoverSearch {
 public:
  CoverSearch(const BitMatrix& r, const BitMatrix& g, int k,
              const SearchLimits& limits)
      : r_(r), g_(g), k_(k), limits_(limits), start_(Clock::now()) {}

  SearchOutcome run() {
    validate();
    build_pool();
    collect_targets();
    build_witnesses();

    std::vector<int> incumbent =
        fallback_ ? fallback_incumbent() : greedy_incumbent();
    int64_t s_min = std::max<int64_t>(
        rank_g_, t_star(static_cast<int64_t>(targets_.size()), k_));

    if (!fallback_ && static_cast<int64_t>(incumbent.size()) > s_min) {
      for (int64_t cap = s_min;
           cap < static_cast<int64_t>(incumbent.size()); ++cap) {
        found_.reset();
        interrupted_ = false;
        init_state();
        dfs(static_cast<int>(cap));
        if (interrupted_) {
          return outcome(SearchStatus::exhausted, incumbent);
        }
        if (found_) {
          return outcome(SearchStatus::optimal, *found_);
        }
      }
    }
    // Every size below the incumbent was refuted (or matched s_min), so
    // the incumbent is optimal — unless witness enumeration was skipped.
    return outcome(fallback_ ? SearchStatus::exhausted
                             : SearchStatus::optimal,
                   incumbent);
  }

 private:
  struct Target {
    uint64_t value = 0;
    // Witnesses as pool-index sets in (size, lexicographic) order.
    std::vector<std::vector<int>> witnesses;
  };

  void validate() {
    if (g_.dim != r_.dim) {
      throw std::invalid_argument("search: dimension mismatch");
    }
    for (int j = 1; j <= g_.row_count(); ++j) {
      if (g_.row(j).is_zero()) {
        throw std::domain_error("search: target row " + std::to_string(j) +
                                " is zero");
      }
      if (!in_span(r_, g_.row(j))) {
        throw std::domain_error("search: target row " + std::to_string(j) +
                                " is not in the span of r");
      }
    }
    rank_g_ = rank(g_);
  }

  void build_pool() {
    pool_.dim = r_.dim;
    for (int i = 0; i < r_.row_count(); ++i) {
      const BitVec& row = r_.rows[static_cast<size_t>(i)];
      if (row.is_zero()) continue;
      if (index_of_.emplace(row.bits, pool_.row_count()).second) {
        pool_.rows.push_back(row);
      }
    }
  }

  void collect_targets() {
    std::unordered_map<uint64_t, int> seen;
    for (int j = 1; j <= g_.row_count(); ++j) {
      uint64_t v = g_.row(j).bits;
      if (seen.emplace(v, static_cast<int>(targets_.size())).second) {
        targets_.push_back({v, {}});
      }
    }
  }

  void build_witnesses() {
    size_t total = 0;
    constexpr size_t kWitnessCap = 2'000'000;
    int n = pool_.row_count();
    for (Target& target : targets_) {
      for (int s = 1; s <= std::min(k_, n) && !fallback_; ++s) {
        // Lexicographic prefixes of size s-1; the last element is found by
        // value lookup among indices beyond the prefix.
        std::vector<int> prefix;
        auto dfs_prefix = [&](auto&& self, int start, uint64_t acc) -> void {
          if (fallback_) return;
          if (static_cast<int>(prefix.size()) == s - 1) {
            auto it = index_of_.find(acc ^ target.value);
            if (it == index_of_.end()) return;
            int idx = it->second;
            if (!prefix.empty() && idx <= prefix.back()) return;
            std::vector<int> witness(prefix);
            witness.push_back(idx);
            target.witnesses.push_back(std::move(witness));
            if (++total > kWitnessCap) fallback_ = true;
            return;
          }
          for (int i = start; i < n; ++i) {
            prefix.push_back(i);
            self(self, i + 1,
                 acc ^ pool_.rows[static_cast<size_t>(i)].bits);
            prefix.pop_back();
          }
        };
        dfs_prefix(dfs_prefix, 0, 0);
      }
      if (fallback_) {
        for (Target& t : targets_) t.witnesses.clear();
        return;
      }
      if (target.witnesses.empty()) {
        throw std::domain_error(
            "search: a target has no witness of size <= k within r");
      }
    }
    // Adjacency: which witnesses contain a given pool row.
    row_usage_.assign(static_cast<size_t>(n), {});
    for (size_t ti = 0; ti < targets_.size(); ++ti) {
      for (size_t wi = 0; wi < targets_[ti].witnesses.size(); ++wi) {
        for (int row : targets_[ti].witnesses[wi]) {
          row_usage_[static_cast<size_t>(row)].emplace_back(
              static_cast<int>(ti), static_cast<int>(wi));
        }
      }
    }
  }

  // ---- incumbent -------------------------------------------------------

  std::vector<int> greedy_incumbent() {
    std::vector<char> in_sel(static_cast<size_t>(pool_.row_count()), 0);
    std::vector<int> sel;
    std::vector<size_t> order(targets_.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
      return targets_[a].witnesses.size() < targets_[b].witnesses.size();
    });
    for (size_t ti : order) {
      const auto& witnesses = targets_[ti].witnesses;
      size_t best = 0;
      int best_outside = -1;
      for (size_t wi = 0; wi < witnesses.size(); ++wi) {
        int outside = 0;
        for (int row : witnesses[wi]) {
          outside += in_sel[static_cast<size_t>(row)] ? 0 : 1;
        }
        if (best_outside < 0 || outside < best_outside) {
          best_outside = outside;
          best = wi;
          if (outside == 0) break;
        }
      }
      for (int row : witnesses[best]) {
        if (!in_sel[static_cast<size_t>(row)]) {
          in_sel[static_cast<size_t>(row)] = 1;
          sel.push_back(row);
        }
      }
    }
    std::sort(sel.begin(), sel.end());
    prune_incumbent(&sel, &in_sel);
    return sel;
  }

  void prune_incumbent(std::vector<int>* sel, std::vector<char>* in_sel) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (size_t i = 0; i < sel->size(); ++i) {
        int candidate = (*sel)[i];
        (*in_sel)[static_cast<size_t>(candidate)] = 0;
        bool still_covered = true;
        for (const Target& target : targets_) {
          bool has = false;
          for (const auto& w : target.witnesses) {
            bool inside = true;
            for (int row : w) {
              if (!(*in_sel)[static_cast<size_t>(row)]) {
                inside = false;
                break;
              }
            }
            if (inside) {
              has = true;
              break;
            }
          }
          if (!has) {
            still_covered = false;
            break;
          }
        }
        if (still_covered) {
          sel->erase(sel->begin() + static_cast<int64_t>(i));
          --i;
          changed = true;
        } else {
          (*in_sel)[static_cast<size_t>(candidate)] = 1;
        }
      }
    }
  }

  // Witness tables were skipped (too large); take the union of one exact
  // minimal witness per target, unpruned.
  std::vector<int> fallback_incumbent() {
    Decomposer dec(pool_);
    std::vector<char> chosen(static_cast<size_t>(pool_.row_count()), 0);
    for (const Target& target : targets_) {
      auto w = dec.query(BitVec(target.value, r_.dim), k_);
      if (!w) {
        throw std::domain_error(
            "search: a target has no witness of size <= k within r");
      }
      for (int idx : *w) chosen[static_cast<size_t>(idx - 1)] = 1;
    }
    std::vector<int> sel;
    for (size_t i = 0; i < chosen.size(); ++i) {
      if (chosen[i]) sel.push_back(static_cast<int>(i));
    }
    return sel;
  }

  // ---- exact phase -----------------------------------------------------

  void init_state() {
    size_t nw = 0;
    witness_id_.assign(targets_.size(), {});
    for (size_t ti = 0; ti < targets_.size(); ++ti) {
      witness_id_[ti].resize(targets_[ti].witnesses.size());
      for (size_t wi = 0; wi < targets_[ti].witnesses.size(); ++wi) {
        witness_id_[ti][wi] = static_cast<int>(nw++);
      }
    }
    missing_.assign(nw, 0);
    for (size_t ti = 0; ti < targets_.size(); ++ti) {
      for (size_t wi = 0; wi < targets_[ti].witnesses.size(); ++wi) {
        missing_[static_cast<size_t>(witness_id_[ti][wi])] =
            static_cast<int>(targets_[ti].witnesses[wi].size());
      }
    }
    satisfied_.assign(targets_.size(), 0);
    uncovered_ = static_cast<int>(targets_.size());
    in_sel_.assign(static_cast<size_t>(pool_.row_count()), 0);
    sel_.clear();
    basis_.clear();
    basis_marks_.clear();
  }

  bool over_budget() {
    ++nodes_;
    if (nodes_ > limits_.max_subsets) return true;
    if (limits_.wall_seconds && (nodes_ & 0xFFF) == 0) {
      double elapsed =
          std::chrono::duration<double>(Clock::now() - start_).count();
      if (elapsed > *limits_.wall_seconds) return true;
    }
    return false;
  }

  // Rows newly reachable with `fresh` more rows cannot witness more than
  // capacity(|sel|, fresh) additional targets.
  int64_t added_capacity(int have, int fresh) const {
    int64_t cap = 0;
    for (int i = 1; i <= k_; ++i) {
      cap += binom_small(have + fresh, i) - binom_small(have, i);
      if (cap > 1'000'000) return cap;
    }
    return cap;
  }

  static int64_t binom_small(int n, int k) {
    if (k > n) return 0;
    int64_t b = 1;
    for (int i = 1; i <= k; ++i) {
      b = b * (n - i + 1) / i;
      if (b > 2'000'000) return b;  // plenty beyond any target count
    }
    return b;
  }

  void select_row(int row) {
    in_sel_[static_cast<size_t>(row)] = 1;
    sel_.push_back(row);
    for (auto [ti, wi] : row_usage_[static_cast<size_t>(row)]) {
      int id = witness_id_[static_cast<size_t>(ti)][static_cast<size_t>(wi)];
      if (--missing_[static_cast<size_t>(id)] == 0) {
        if (satisfied_[static_cast<size_t>(ti)]++ == 0) --uncovered_;
      }
    }
    // Incremental rank of the selection.
    uint64_t v = pool_.rows[static_cast<size_t>(row)].bits;
    for (uint64_t b : basis_) v = std::min(v, v ^ b);
    basis_marks_.push_back(v != 0);
    if (v != 0) basis_.push_back(v);
  }

  void unselect_row(int row) {
    if (basis_marks_.back()) basis_.pop_back();
    basis_marks_.pop_back();
    for (auto [ti, wi] : row_usage_[static_cast<size_t>(row)]) {
      int id = witness_id_[static_cast<size_t>(ti)][static_cast<size_t>(wi)];
      if (missing_[static_cast<size_t>(id)]++ == 0) {
        if (--satisfied_[static_cast<size_t>(ti)] == 0) ++uncovered_;
      }
    }
    in_sel_[static_cast<size_t>(row)] = 0;
    sel_.pop_back();
  }

  bool dfs(int cap) {
    if (over_budget()) {
      interrupted_ = true;
      return false;
    }
    if (uncovered_ == 0) {
      found_ = sel_;
      std::sort(found_->begin(), found_->end());
      return true;
    }
    int budget = cap - static_cast<int>(sel_.size());
    if (budget <= 0) return false;
    if (static_cast<int>(basis_.size()) + budget < rank_g_) return false;
    if (added_capacity(static_cast<int>(sel_.size()), budget) < uncovered_) {
      return false;
    }

    // Fail-first: the uncovered target with the fewest viable witnesses.
    int best_ti = -1;
    int best_count = 0;
    for (size_t ti = 0; ti < targets_.size(); ++ti) {
      if (satisfied_[ti] > 0) continue;
      int count = 0;
      for (size_t wi = 0; wi < targets_[ti].witnesses.size(); ++wi) {
        if (missing_[static_cast<size_t>(witness_id_[ti][wi])] <= budget) {
          ++count;
        }
      }
      if (count == 0) return false;
      if (best_ti < 0 || count < best_count) {
        best_ti = static_cast<int>(ti);
        best_count = count;
        if (count == 1) break;
      }
    }

    const auto& witnesses = targets_[static_cast<size_t>(best_ti)].witnesses;
    for (size_t wi = 0; wi < witnesses.size(); ++wi) {
      int id = witness_id_[static_cast<size_t>(best_ti)][wi];
      int need = missing_[static_cast<size_t>(id)];
      if (need == 0 || need > budget) continue;
      std::vector<int> added;
      added.reserve(static_cast<size_t>(need));
      for (int row : witnesses[wi]) {
        if (!in_sel_[static_cast<size_t>(row)]) added.push_back(row);
      }
      for (int row : added) select_row(row);
      bool done = dfs(cap);
      for (auto it = added.rbegin(); it != added.rend(); ++it) {
        unselect_row(*it);
      }
      if (done || interrupted_) return done;
    }
    return false;
  }

  // ---- result assembly -------------------------------------------------

  SearchOutcome outcome(SearchStatus status, const std::vector<int>& sel) {
    SearchOutcome out;
    out.status = status;
    out.subsets_examined = nodes_;
    CoverScheme scheme;
    scheme.k = k_;
    scheme.a_k.dim = r_.dim;
    for (int row : sel) {
      scheme.a_k.rows.push_back(pool_.rows[static_cast<size_t>(row)]);
    }
    // Canonical witnesses re-derived inside the chosen subset.
    Decomposer dec(scheme.a_k);
    for (int j = 1; j <= g_.row_count(); ++j) {
      auto w = dec.query(g_.row(j), k_);
      if (!w) {
        throw std::logic_error("search: selected subset fails to cover");
      }
      scheme.witnesses.emplace(j, std::move(*w));
    }
    out.scheme = std::move(scheme);
    return out;
  }

  const BitMatrix& r_;
  const BitMatrix& g_;
  int k_;
  SearchLimits limits_;
  Clock::time_point start_;

  int rank_g_ = 0;
  BitMatrix pool_{1};
  std::unordered_map<uint64_t, int> index_of_;
  std::vector<Target> targets_;
  std::vector<std::vector<std::pair<int, int>>> row_usage_;
  bool fallback_ = false;

  std::vector<std::vector<int>> witness_id_;
  std::vector<int> missing_;
  std::vector<int> satisfied_;
  int uncovered_ = 0;
  std::vector<char> in_sel_;
  std::vector<int> sel_;
  std::vector<uint64_t> basis_;
  std::vector<char> basis_marks_;

  uint64_t nodes_ = 0;
  bool interrupted_ = false;
  std::optional<std::vector<int>> found_;
};

}  // namespace

SearchOutcome search(const BitMatrix& r, const BitMatrix& g, int k,
                     const SearchLimits& limits) {
  if (k < 1) throw std::invalid_argument("search: k must be >= 1");
  return CoverSearch(r, g, k, limits).run();
}

SearchOutcome brute_force_optimal(const BitMatrix& g, int k,
                                  const SearchLimits& limits, int max_dim) {
  if (g.dim > max_dim) {
    throw std::invalid_argument(
        "brute_force_optimal: dimension " + std::to_string(g.dim) +
        " exceeds the cap of " + std::to_string(max_dim));
  }
  BitMatrix pool = full_space_matrix(g.dim);
  return search(pool, g, k, limits);
}

}  // namespace klac
