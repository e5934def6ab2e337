#include "klac/bounds.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace klac {

namespace {

int ceil_div(int a, int b) { return (a + b - 1) / b; }

// True when (t, k) is inside the block construction's validity range;
// k = 1 is always valid for t >= 2.
bool scheme1_range(int t, int k) {
  return t >= 2 && k >= 1 && (k == 1 || k < ceil_div(t, 2));
}

// Sum of C(m, i) for i = 1..k, clamped at `cap` to avoid overflow. The
// running binomial is kept exact in 128 bits; any value >= cap saturates.
int64_t binomial_tail_sum(int64_t m, int k, int64_t cap) {
  unsigned __int128 sum = 0;
  unsigned __int128 binom = 1;
  for (int i = 1; i <= k; ++i) {
    if (i > m) break;
    binom = binom * static_cast<unsigned __int128>(m - i + 1) /
            static_cast<unsigned __int128>(i);
    sum += binom;
    // Saturating keeps binom < cap <= 2^62, so the next product fits.
    if (sum >= static_cast<unsigned __int128>(cap)) return cap;
  }
  return static_cast<int64_t>(sum);
}

}  // namespace

int64_t t_star(int64_t n, int k) {
  if (n < 1 || k < 1) {
    throw std::invalid_argument("t_star requires n >= 1 and k >= 1");
  }
  for (int64_t m = 1;; ++m) {
    if (binomial_tail_sum(m, k, n) >= n) return m;
  }
}

double t_lb_analytic(int t, int k) {
  if (!scheme1_range(t, k)) {
    throw std::domain_error("t_lb_analytic requires t >= 2 and k < ceil(t/2)");
  }
  double td = t, kd = k;
  return std::exp2((td - 1.0) / kd) * std::pow(kd, (kd - 1.0) / kd) /
         std::exp(1.0);
}

int64_t theorem1_ub(int t, int k) {
  if (!scheme1_range(t, k)) {
    throw std::domain_error("theorem1_ub requires t >= 2 and k < ceil(t/2)");
  }
  return static_cast<int64_t>(k) << ceil_div(t, k);
}

int64_t large_k_value(int t, int64_t n) {
  return std::min<int64_t>(t + 1, n);
}

ScrBounds scr_bounds(int64_t n, int t, int q) {
  if (n < 1 || t < 1 || q < 1) {
    throw std::invalid_argument("scr_bounds requires n, t, q >= 1");
  }
  ScrBounds b{n, n};
  for (int r = 0; r < q; ++r) {
    b.best = 2 * (b.best / 3);
    b.worst = static_cast<int64_t>(t) * (b.worst / (t + 1) + 1);
  }
  return b;
}

int64_t uncoded_ub(int64_t n) { return n; }

BoundReport compute_bounds(int64_t n, int t, int k, std::optional<int> q) {
  if (n < 1 || t < 1 || t > 62 || k < 1 || k > t) {
    throw std::invalid_argument("compute_bounds requires n >= 1, 1 <= k <= t");
  }
  BoundReport r;
  r.n = n;
  r.t = t;
  r.k = k;
  if (!q && (k & (k - 1)) == 0) {
    int derived = 0;
    for (int v = k; v > 1; v >>= 1) ++derived;
    q = derived;
  }
  r.q = q;
  r.t_star = t_star(n, k);
  bool in_range = scheme1_range(t, k);
  bool full_space = n == (int64_t{1} << t) - 1;
  if (in_range && full_space) r.t_lb = t_lb_analytic(t, k);
  if (in_range) r.theorem1 = theorem1_ub(t, k);
  r.large_k = large_k_value(t, n);
  r.uncoded = uncoded_ub(n);
  if (q && *q >= 1) r.scr = scr_bounds(n, t, *q);
  return r;
}

std::string render_bounds_text(const BoundReport& r) {
  std::ostringstream out;
  out << "n=" << r.n << '\n' << "t=" << r.t << '\n' << "k=" << r.k << '\n';
  if (r.q) out << "q=" << *r.q << '\n';
  out << "t_star=" << r.t_star << '\n';
  if (r.t_lb) out << "t_lb_analytic=" << *r.t_lb << '\n';
  if (r.theorem1) out << "theorem1_ub=" << *r.theorem1 << '\n';
  out << "large_k_value=" << r.large_k << '\n';
  out << "uncoded=" << r.uncoded << '\n';
  if (r.scr) {
    out << "scr_best=" << r.scr->best << '\n';
    out << "scr_worst=" << r.scr->worst << '\n';
  }
  return out.str();
}

std::string render_bounds_csv(const BoundReport& r) {
  std::ostringstream out;
  out << "n,t,k,q,t_star,t_lb_analytic,theorem1_ub,large_k_value,uncoded,"
         "scr_best,scr_worst\n";
  out << r.n << ',' << r.t << ',' << r.k << ',';
  if (r.q) out << *r.q;
  out << ',' << r.t_star << ',';
  if (r.t_lb) out << *r.t_lb;
  out << ',';
  if (r.theorem1) out << *r.theorem1;
  out << ',' << r.large_k << ',' << r.uncoded << ',';
  if (r.scr) out << r.scr->best;
  out << ',';
  if (r.scr) out << r.scr->worst;
  out << '\n';
  return out.str();
}

}  // namespace klac
