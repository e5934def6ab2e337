// Closed-form lower/upper bounds and reference values for the minimum row
// count T_k of a k-limited-access matrix, as pure functions of (n, T, k).
#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace klac {

// Least T_k with sum_{i=1..k} C(T_k, i) >= n: no matrix with fewer rows can
// give n distinct targets witnesses of size <= k. Monotone non-increasing
// in k, non-decreasing in n. Exact integer arithmetic throughout.
int64_t t_star(int64_t n, int k);

// Analytic full-space lower bound 2^((t-1)/k) * k^((k-1)/k) / e, meaningful
// for n = 2^t - 1. Valid for t >= 2 and 1 <= k < ceil(t/2); k = 1 is always
// accepted. Throws std::domain_error outside the range.
double t_lb_analytic(int t, int k);

// Block-construction upper bound k * 2^ceil(t/k); same validity range as
// scheme1_full. Throws std::domain_error outside it.
int64_t theorem1_ub(int t, int k);

// Reference value min(t+1, n) for the large-access regime
// ceil(t/2) <= k < t; no construction is provided for it here.
int64_t large_k_value(int t, int64_t n);

// q-fold compositions of the per-round best case f_best(n) = 2*floor(n/3)
// and worst case f_worst(n) = t*(floor(n/(t+1)) + 1) of successive circuit
// removal.
struct ScrBounds {
  int64_t best = 0;
  int64_t worst = 0;
};
ScrBounds scr_bounds(int64_t n, int t, int q);

// Uncoded upper bound: n rows (A_k = G, one row per target).
int64_t uncoded_ub(int64_t n);

// All bounds for one (n, t, k) instance. Optional fields are present only
// when their validity conditions hold.
struct BoundReport {
  int64_t n = 0;
  int t = 0;
  int k = 0;
  std::optional<int> q;             // log2(k) when k is a power of two
  int64_t t_star = 0;
  std::optional<double> t_lb;       // requires n = 2^t - 1 and k in range
  std::optional<int64_t> theorem1;  // requires k in scheme1 range
  int64_t large_k = 0;
  int64_t uncoded = 0;
  std::optional<ScrBounds> scr;     // requires k = 2^q
};

BoundReport compute_bounds(int64_t n, int t, int k,
                           std::optional<int> q = std::nullopt);

// key=value lines (one per present field) and a one-row CSV with header.
std::string render_bounds_text(const BoundReport& r);
std::string render_bounds_csv(const BoundReport& r);

}  // namespace klac
