#include <algorithm>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "klac/schemes.hpp"

namespace klac {

namespace {

int ceil_div(int a, int b) { return (a + b - 1) / b; }

void check_scheme1_range(int t, int k) {
  if (t < 2 || k < 1 || (k != 1 && k >= ceil_div(t, 2))) {
    throw std::domain_error(
        "scheme1 requires t >= 2 and 1 <= k < ceil(t/2)");
  }
}

// Section layout along the coordinate axis: sections of length m =
// ceil(t/k), the last one shorter when m does not divide t. When m does
// not fit k-1 times (k close to t/2), fewer sections suffice.
struct Sections {
  int m = 0;
  std::vector<int> offset;  // 0-based first coordinate of each section
  std::vector<int> length;
};

Sections section_layout(int t, int k) {
  Sections s;
  s.m = ceil_div(t, k);
  int count = ceil_div(t, s.m);
  for (int b = 0; b < count; ++b) {
    s.offset.push_back(b * s.m);
    s.length.push_back(std::min(s.m, t - b * s.m));
  }
  return s;
}

void check_rows_nonzero_distinct(const BitMatrix& g, const char* who) {
  std::unordered_set<uint64_t> seen;
  for (int i = 1; i <= g.row_count(); ++i) {
    if (g.row(i).is_zero()) {
      throw std::invalid_argument(std::string(who) + ": row " +
                                  std::to_string(i) + " is zero");
    }
    if (!seen.insert(g.row(i).bits).second) {
      throw std::invalid_argument(std::string(who) + ": row " +
                                  std::to_string(i) + " duplicates another");
    }
  }
}

}  // namespace

CoverScheme scheme1_full(int t, int k) {
  check_scheme1_range(t, k);
  Sections sec = section_layout(t, k);
  size_t blocks = sec.offset.size();

  CoverScheme s;
  s.k = k;
  s.a_k.dim = t;
  // base[b] = number of rows contributed by sections before b; the row for
  // pattern p (as an integer read most-significant-first) of section b sits
  // at index base[b] + p.
  std::vector<int64_t> base(blocks + 1, 0);
  for (size_t b = 0; b < blocks; ++b) {
    int len = sec.length[b];
    for (uint64_t p = 1; p < (uint64_t{1} << len); ++p) {
      BitVec pattern = BitVec::from_msb_id(p, len);
      s.a_k.rows.push_back(BitVec(pattern.bits << sec.offset[b], t));
    }
    base[b + 1] = base[b] + ((int64_t{1} << len) - 1);
  }

  for (uint64_t id = 1; id < (uint64_t{1} << t); ++id) {
    BitVec v = BitVec::from_msb_id(id, t);
    std::vector<int> witness;
    for (size_t b = 0; b < blocks; ++b) {
      uint64_t section_bits =
          (v.bits >> sec.offset[b]) & ((uint64_t{1} << sec.length[b]) - 1);
      if (section_bits == 0) continue;
      uint64_t p = BitVec(section_bits, sec.length[b]).msb_id();
      witness.push_back(static_cast<int>(base[b] + static_cast<int64_t>(p)));
    }
    s.witnesses.emplace(static_cast<int64_t>(id), std::move(witness));
  }
  return s;
}

CoverScheme scheme1_adapted(const BitMatrix& g, int k) {
  int t = g.dim;
  check_scheme1_range(t, k);
  check_rows_nonzero_distinct(g, "scheme1_adapted");

  // Permute columns by decreasing weight, ties by original column index.
  std::vector<int> weight(static_cast<size_t>(t), 0);
  for (const BitVec& row : g.rows) {
    for (int c = 0; c < t; ++c) {
      if ((row.bits >> c) & 1u) ++weight[static_cast<size_t>(c)];
    }
  }
  std::vector<int> perm(static_cast<size_t>(t));  // position -> original col
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(), [&](int a, int b) {
    return weight[static_cast<size_t>(a)] > weight[static_cast<size_t>(b)];
  });

  auto permute = [&](const BitVec& v) {
    uint64_t out = 0;
    for (int j = 0; j < t; ++j) {
      if ((v.bits >> perm[static_cast<size_t>(j)]) & 1u) {
        out |= uint64_t{1} << j;
      }
    }
    return out;
  };

  Sections sec = section_layout(t, k);
  size_t blocks = sec.offset.size();

  // Per section: occurring nonzero patterns in first-occurrence order.
  std::vector<std::vector<uint64_t>> patterns(blocks);
  std::vector<std::unordered_map<uint64_t, int>> position(blocks);
  std::vector<std::vector<std::pair<size_t, int>>> row_parts(
      static_cast<size_t>(g.row_count()));
  for (int i = 1; i <= g.row_count(); ++i) {
    uint64_t p = permute(g.row(i));
    for (size_t b = 0; b < blocks; ++b) {
      uint64_t section_bits =
          (p >> sec.offset[b]) & ((uint64_t{1} << sec.length[b]) - 1);
      if (section_bits == 0) continue;
      auto [it, fresh] = position[b].emplace(
          section_bits, static_cast<int>(patterns[b].size()));
      if (fresh) patterns[b].push_back(section_bits);
      row_parts[static_cast<size_t>(i - 1)].emplace_back(b, it->second);
    }
  }

  CoverScheme s;
  s.k = k;
  s.a_k.dim = t;
  std::vector<int> base(blocks + 1, 0);
  for (size_t b = 0; b < blocks; ++b) {
    base[b + 1] = base[b] + static_cast<int>(patterns[b].size());
    for (uint64_t section_bits : patterns[b]) {
      // Back to the original column order.
      uint64_t permuted = section_bits << sec.offset[b];
      uint64_t original = 0;
      for (int j = 0; j < t; ++j) {
        if ((permuted >> j) & 1u) {
          original |= uint64_t{1} << perm[static_cast<size_t>(j)];
        }
      }
      s.a_k.rows.push_back(BitVec(original, t));
    }
  }
  for (int i = 1; i <= g.row_count(); ++i) {
    std::vector<int> witness;
    for (auto [b, pos] : row_parts[static_cast<size_t>(i - 1)]) {
      witness.push_back(base[b] + pos + 1);
    }
    std::sort(witness.begin(), witness.end());
    s.witnesses.emplace(i, std::move(witness));
  }
  return s;
}

}  // namespace klac
