#include "klac/verify.hpp"

#include <algorithm>
#include <sstream>

namespace klac {

namespace {

// Appends all size-h index subsets of {0..n-1} in lexicographic order to a
// flat pool (h consecutive entries per subset).
std::vector<int> enumerate_subsets(int n, int h) {
  std::vector<int> pool;
  if (h == 0 || h > n) return pool;
  std::vector<int> cur(static_cast<size_t>(h));
  for (int i = 0; i < h; ++i) cur[static_cast<size_t>(i)] = i;
  while (true) {
    pool.insert(pool.end(), cur.begin(), cur.end());
    int i = h - 1;
    while (i >= 0 && cur[static_cast<size_t>(i)] == n - h + i) --i;
    if (i < 0) break;
    ++cur[static_cast<size_t>(i)];
    for (int j = i + 1; j < h; ++j) {
      cur[static_cast<size_t>(j)] = cur[static_cast<size_t>(j - 1)] + 1;
    }
  }
  return pool;
}

bool disjoint_sorted(const int* a, int alen, const int* b, int blen) {
  int i = 0, j = 0;
  while (i < alen && j < blen) {
    if (a[i] == b[j]) return false;
    if (a[i] < b[j]) ++i; else ++j;
  }
  return true;
}

constexpr size_t kPoolCap = 20'000'000;  // flat entries per half size

}  // namespace

Decomposer::Decomposer(const BitMatrix& a)
    : a_(a),
      tables_(static_cast<size_t>(a.row_count()) + 1),
      subset_pool_(static_cast<size_t>(a.row_count()) + 1) {}

const std::vector<int>& Decomposer::half_subsets(int size) const {
  auto& pool = subset_pool_[static_cast<size_t>(size)];
  if (pool.empty() && size > 0 && size <= a_.row_count()) {
    // Guard against pathological table growth before enumerating.
    double count = 1.0;
    for (int i = 0; i < size; ++i) {
      count *= static_cast<double>(a_.row_count() - i) / (i + 1);
    }
    if (count * size > static_cast<double>(kPoolCap)) {
      throw std::runtime_error("decompose: half-subset table too large");
    }
    pool = enumerate_subsets(a_.row_count(), size);
  }
  return pool;
}

const std::unordered_map<uint64_t, std::vector<int>>& Decomposer::half_table(
    int size) const {
  auto& slot = tables_[static_cast<size_t>(size)];
  if (!slot) {
    slot.emplace();
    const std::vector<int>& pool = half_subsets(size);
    size_t count = (size > 0) ? pool.size() / static_cast<size_t>(size) : 0;
    for (size_t ordinal = 0; ordinal < count; ++ordinal) {
      uint64_t x = 0;
      for (int i = 0; i < size; ++i) {
        x ^= a_.rows[static_cast<size_t>(
                         pool[ordinal * static_cast<size_t>(size) +
                              static_cast<size_t>(i)])].bits;
      }
      (*slot)[x].push_back(static_cast<int>(ordinal));
    }
  }
  return *slot;
}

std::optional<std::vector<int>> Decomposer::query(const BitVec& v,
                                                  int k) const {
  if (v.len != a_.dim) {
    throw std::invalid_argument("decompose: dimension mismatch");
  }
  if (v.is_zero()) return std::vector<int>{};
  int n = a_.row_count();
  for (int s = 1; s <= std::min(k, n); ++s) {
    int h1 = (s + 1) / 2;
    int h2 = s - h1;
    const auto& table = half_table(h1);
    const std::vector<int>& pool1 = half_subsets(h1);
    const std::vector<int>& pool2 = half_subsets(h2);
    size_t probes =
        (h2 == 0) ? 1 : pool2.size() / static_cast<size_t>(h2);
    std::optional<std::vector<int>> best;
    for (size_t b = 0; b < probes; ++b) {
      const int* bptr =
          (h2 == 0) ? nullptr : &pool2[b * static_cast<size_t>(h2)];
      uint64_t need = v.bits;
      for (int i = 0; i < h2; ++i) {
        need ^= a_.rows[static_cast<size_t>(bptr[i])].bits;
      }
      auto it = table.find(need);
      if (it == table.end()) continue;
      for (int ordinal : it->second) {
        const int* aptr =
            &pool1[static_cast<size_t>(ordinal) * static_cast<size_t>(h1)];
        if (!disjoint_sorted(aptr, h1, bptr, h2)) continue;
        std::vector<int> merged;
        merged.reserve(static_cast<size_t>(s));
        std::merge(aptr, aptr + h1, bptr, bptr + h2,
                   std::back_inserter(merged));
        if (!best || merged < *best) best = std::move(merged);
      }
    }
    if (best) {
      for (int& idx : *best) ++idx;  // back to 1-based row indices
      return best;
    }
  }
  return std::nullopt;
}

std::optional<std::vector<int>> decompose(const BitMatrix& a, const BitVec& v,
                                          int k) {
  return Decomposer(a).query(v, k);
}

namespace {

// Shared per-target witness checks; `value` is the expected target vector.
void check_target(const CoverScheme& scheme, int64_t target,
                  const BitVec& value, bool derived_ok, VerifyReport* report) {
  auto it = scheme.witnesses.find(target);
  if (it == scheme.witnesses.end()) {
    report->failures.push_back({target, "missing witness"});
  } else {
    const std::vector<int>& w = it->second;
    bool usable = true;
    if (w.empty()) {
      report->failures.push_back({target, "witness is empty"});
      usable = false;
    }
    if (static_cast<int>(w.size()) > scheme.k) {
      report->failures.push_back({target, "witness size exceeds k"});
    }
    for (size_t i = 0; i < w.size() && usable; ++i) {
      if (w[i] < 1 || w[i] > scheme.a_k.row_count()) {
        report->failures.push_back({target, "witness index out of range"});
        usable = false;
      } else if (i > 0 && w[i] <= w[i - 1]) {
        report->failures.push_back(
            {target, "witness indices are not strictly ascending"});
        usable = false;
      }
    }
    if (usable) {
      BitVec sum = BitVec::zeros(scheme.a_k.dim);
      for (int idx : w) sum = sum ^ scheme.a_k.row(idx);
      if (!(sum == value)) {
        report->failures.push_back(
            {target, "stored witness does not XOR to target"});
      }
      report->max_witness_size =
          std::max(report->max_witness_size, static_cast<int>(w.size()));
    }
  }
  if (!derived_ok) {
    report->failures.push_back(
        {target, "no witness of size <= k exists in a_k"});
  }
}

}  // namespace

VerifyReport verify_cover(const CoverScheme& scheme, const BitMatrix& g) {
  VerifyReport report;
  report.checked = g.row_count();
  Decomposer dec(scheme.a_k);
  for (int j = 1; j <= g.row_count(); ++j) {
    bool derived = false;
    if (g.dim == scheme.a_k.dim) {
      derived = dec.query(g.row(j), scheme.k).has_value();
    }
    check_target(scheme, j, g.row(j), derived, &report);
  }
  for (const auto& [target, witness] : scheme.witnesses) {
    (void)witness;
    if (target < 1 || target > g.row_count()) {
      report.failures.push_back({target, "unknown target"});
    }
  }
  report.ok = report.failures.empty();
  return report;
}

VerifyReport verify_full_space(const CoverScheme& scheme, int t) {
  if (t < 1 || t > 20) {
    throw std::invalid_argument("verify_full_space: t must be in [1, 20]");
  }
  if (scheme.a_k.dim != t) {
    throw std::invalid_argument("verify_full_space: scheme dimension != t");
  }
  int n = scheme.a_k.row_count();
  int k = scheme.k;
  // Work estimate for the subset enumeration below.
  double work = 0.0, binom = 1.0;
  for (int s = 1; s <= std::min(k, n); ++s) {
    binom *= static_cast<double>(n - s + 1) / s;
    work += binom;
  }
  if (work > 1e9) {
    throw std::runtime_error(
        "verify_full_space: subset enumeration too large");
  }

  // level[x] = smallest subset size whose XOR equals x, for sizes <= k.
  // Sizes are enumerated ascending so the first write is the minimum size.
  std::vector<uint8_t> level(uint64_t{1} << t, 0xFF);
  for (int s = 1; s <= std::min(k, n); ++s) {
    auto dfs = [&](auto&& self, int depth, int start, uint64_t x) -> void {
      if (depth == s) {
        if (level[x] == 0xFF) level[x] = static_cast<uint8_t>(s);
        return;
      }
      for (int i = start; i <= n - (s - depth); ++i) {
        self(self, depth + 1, i + 1,
             x ^ scheme.a_k.rows[static_cast<size_t>(i)].bits);
      }
    };
    dfs(dfs, 0, 0, 0);
  }

  VerifyReport report;
  report.checked = (int64_t{1} << t) - 1;
  for (int64_t id = 1; id < (int64_t{1} << t); ++id) {
    BitVec v = BitVec::from_msb_id(static_cast<uint64_t>(id), t);
    bool derived = level[v.bits] != 0xFF;
    check_target(scheme, id, v, derived, &report);
  }
  for (const auto& [target, witness] : scheme.witnesses) {
    (void)witness;
    if (target < 1 || target >= (int64_t{1} << t)) {
      report.failures.push_back({target, "unknown target"});
    }
  }
  std::stable_sort(report.failures.begin(), report.failures.end(),
                   [](const VerifyFailure& a, const VerifyFailure& b) {
                     return a.target < b.target;
                   });
  report.ok = report.failures.empty();
  return report;
}

std::string render_report_text(const VerifyReport& r) {
  std::ostringstream out;
  int64_t failed_targets = 0;
  int64_t last = -1;
  for (const VerifyFailure& f : r.failures) {
    if (f.target != last) {
      ++failed_targets;
      last = f.target;
    }
  }
  out << (r.checked - failed_targets) << '/' << r.checked
      << (r.ok ? " ok" : " FAIL") << '\n';
  for (const VerifyFailure& f : r.failures) {
    out << "target " << f.target << ": " << f.reason << '\n';
  }
  return out.str();
}

std::string render_report_csv(const VerifyReport& r) {
  std::ostringstream out;
  out << "target,reason\n";
  for (const VerifyFailure& f : r.failures) {
    out << f.target << ",\"" << f.reason << "\"\n";
  }
  return out.str();
}

}  // namespace klac
