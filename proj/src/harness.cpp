#include "klac/harness.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "klac/bounds.hpp"
#include "klac/gf2.hpp"
#include "klac/rng.hpp"

namespace klac {

namespace {

constexpr int kMaxT = 20;
constexpr int kMaxAttempts = 1000;

void check_spec(const InstanceSpec& spec) {
  if (spec.t < 1 || spec.t > kMaxT) {
    throw std::invalid_argument("generate: t must be in [1, " +
                                std::to_string(kMaxT) + "]");
  }
  int64_t space = (int64_t{1} << spec.t) - 1;
  if (spec.n < spec.t || spec.n > space) {
    throw std::invalid_argument("generate: n must be in [t, 2^t - 1]");
  }
}

BitMatrix unit_basis(int t) {
  BitMatrix m(t);
  for (int i = 1; i <= t; ++i) {
    BitVec v = BitVec::zeros(t);
    v.set(i, true);
    m.rows.push_back(v);
  }
  return m;
}

BitMatrix generate_uniform(const InstanceSpec& spec, bool* basis_forced) {
  std::mt19937_64 rng(spec.seed);
  int64_t space = (int64_t{1} << spec.t) - 1;
  std::vector<uint64_t> ids(static_cast<size_t>(space));
  for (int64_t i = 0; i < space; ++i) {
    ids[static_cast<size_t>(i)] = static_cast<uint64_t>(i) + 1;
  }
  size_t n = static_cast<size_t>(spec.n);
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    // Partial Fisher-Yates: the first n slots become a uniform sample
    // without replacement.
    for (size_t i = 0; i < n; ++i) {
      size_t j =
          i + static_cast<size_t>(rng_below(rng, ids.size() - i));
      std::swap(ids[i], ids[j]);
    }
    BitMatrix m(spec.t);
    for (size_t i = 0; i < n; ++i) {
      m.rows.push_back(BitVec::from_msb_id(ids[i], spec.t));
    }
    if (rank(m) == spec.t) return m;
  }
  // Rejection failed; plant the unit basis and fill uniformly.
  if (basis_forced != nullptr) *basis_forced = true;
  BitMatrix m = unit_basis(spec.t);
  std::unordered_set<uint64_t> used;
  for (const BitVec& v : m.rows) used.insert(v.msb_id());
  while (m.row_count() < spec.n) {
    uint64_t id = rng_below(rng, static_cast<uint64_t>(space)) + 1;
    if (used.insert(id).second) {
      m.rows.push_back(BitVec::from_msb_id(id, spec.t));
    }
  }
  return m;
}

// A random basis of the subspace supported on coordinates
// [first, first + dim); falls back to the unit vectors of those
// coordinates if rejection keeps failing.
BitMatrix random_subspace_basis(std::mt19937_64& rng, int t, int first,
                                int dim) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    BitMatrix m(t);
    for (int i = 0; i < dim; ++i) {
      uint64_t raw = rng_below(rng, (uint64_t{1} << dim) - 1) + 1;
      m.rows.push_back(BitVec(raw << (first - 1), t));
    }
    if (rank(m) == dim) return m;
  }
  BitMatrix m(t);
  for (int i = 0; i < dim; ++i) {
    BitVec v = BitVec::zeros(t);
    v.set(first + i, true);
    m.rows.push_back(v);
  }
  return m;
}

BitMatrix generate_planted(const InstanceSpec& spec) {
  int s = spec.circuit_size;
  if (s < 3) {
    throw std::invalid_argument("generate: circuit_size must be >= 3");
  }
  int64_t circuits = spec.n / s;
  int64_t fillers = spec.n % s;
  if (circuits * (s - 1) + fillers != spec.t) {
    throw std::invalid_argument(
        "generate: planted_circuits needs floor(n/s)*(s-1) + n mod s = t");
  }
  std::mt19937_64 rng(spec.seed);
  BitMatrix m(spec.t);
  for (int64_t b = 0; b < circuits; ++b) {
    int first = static_cast<int>(b) * (s - 1) + 1;
    BitMatrix block = random_subspace_basis(rng, spec.t, first, s - 1);
    BitVec sum = BitVec::zeros(spec.t);
    for (const BitVec& v : block.rows) {
      m.rows.push_back(v);
      sum = sum ^ v;
    }
    m.rows.push_back(sum);
  }
  int first_filler = static_cast<int>(circuits) * (s - 1) + 1;
  for (int64_t i = 0; i < fillers; ++i) {
    BitVec v = BitVec::zeros(spec.t);
    v.set(first_filler + static_cast<int>(i), true);
    m.rows.push_back(v);
  }
  rng_shuffle(rng, m.rows);
  return m;
}

BitMatrix generate_nested(const InstanceSpec& spec) {
  int64_t dependents = spec.n - spec.t;
  if (dependents > spec.t - 1) {
    throw std::invalid_argument("generate: nested needs n - t <= t - 1");
  }
  std::mt19937_64 rng(spec.seed);
  int64_t space = (int64_t{1} << spec.t) - 1;
  for (int attempt = 0; attempt <= kMaxAttempts; ++attempt) {
    BitMatrix basis(spec.t);
    if (attempt < kMaxAttempts) {
      for (int i = 0; i < spec.t; ++i) {
        uint64_t id = rng_below(rng, static_cast<uint64_t>(space)) + 1;
        basis.rows.push_back(BitVec::from_msb_id(id, spec.t));
      }
      if (rank(basis) != spec.t) continue;
    } else {
      basis = unit_basis(spec.t);
    }
    std::vector<int> lens;
    for (int l = 2; l <= spec.t; ++l) lens.push_back(l);
    rng_shuffle(rng, lens);
    lens.resize(static_cast<size_t>(dependents));
    std::sort(lens.begin(), lens.end());

    BitMatrix m = basis;
    BitVec prefix = BitVec::zeros(spec.t);
    int next = 1;
    for (int l : lens) {
      while (next <= l) prefix = prefix ^ basis.row(next++);
      m.rows.push_back(prefix);
    }
    std::unordered_set<uint64_t> seen;
    bool distinct = true;
    for (const BitVec& v : m.rows) {
      if (v.is_zero() || !seen.insert(v.bits).second) {
        distinct = false;
        break;
      }
    }
    if (distinct) return m;
  }
  throw std::logic_error("generate: nested fallback failed");
}

bool is_power_of_two(int k) { return k > 0 && (k & (k - 1)) == 0; }

bool scheme1_in_range(int t, int k) {
  return t >= 2 && k >= 1 && (k == 1 || k < (t + 1) / 2);
}

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

}  // namespace

Family family_from_string(const std::string& name) {
  if (name == "uniform_full_rank" || name == "uniform") {
    return Family::uniform_full_rank;
  }
  if (name == "planted_circuits" || name == "planted") {
    return Family::planted_circuits;
  }
  if (name == "nested") return Family::nested;
  throw std::invalid_argument("unknown family: " + name);
}

std::string family_to_string(Family f) {
  switch (f) {
    case Family::uniform_full_rank:
      return "uniform_full_rank";
    case Family::planted_circuits:
      return "planted_circuits";
    case Family::nested:
      return "nested";
  }
  return "?";
}

BitMatrix generate(const InstanceSpec& spec, bool* basis_forced) {
  check_spec(spec);
  if (basis_forced != nullptr) *basis_forced = false;
  switch (spec.family) {
    case Family::uniform_full_rank:
      return generate_uniform(spec, basis_forced);
    case Family::planted_circuits:
      return generate_planted(spec);
    case Family::nested:
      return generate_nested(spec);
  }
  throw std::logic_error("generate: unhandled family");
}

std::string scheme_tag_name(SchemeTag tag) {
  switch (tag) {
    case SchemeTag::LB:
      return "LB";
    case SchemeTag::UB:
      return "UB";
    case SchemeTag::Scheme1:
      return "Scheme1";
    case SchemeTag::SCR:
      return "SCR";
    case SchemeTag::SCR_best:
      return "SCR_best";
    case SchemeTag::SCR_worst:
      return "SCR_worst";
    case SchemeTag::BS:
      return "BS";
  }
  return "?";
}

std::vector<BenchRecord> run_sweep(int t, int k,
                                   const std::vector<int64_t>& n_values,
                                   int trials, uint64_t seed0,
                                   const SweepOptions& options) {
  if (k < 1) throw std::invalid_argument("run_sweep: k must be >= 1");
  if (trials < 1) throw std::invalid_argument("run_sweep: trials must be >= 1");
  std::vector<BenchRecord> records;
  for (int64_t n : n_values) {
    for (int trial = 0; trial < trials; ++trial) {
      uint64_t seed = derive_seed(seed0, static_cast<uint64_t>(n),
                                  static_cast<uint64_t>(trial));
      BenchRecord base;
      base.n = n;
      base.t = t;
      base.k = k;
      base.seed = seed;

      auto emit = [&](SchemeTag tag, auto&& body) {
        BenchRecord rec = base;
        rec.scheme = tag;
        auto start = Clock::now();
        try {
          body(rec);
        } catch (const std::exception& e) {
          rec.ok = false;
          rec.t_k = 0;
          rec.note = e.what();
        }
        rec.elapsed_ms = ms_since(start);
        records.push_back(std::move(rec));
      };

      InstanceSpec spec;
      spec.t = t;
      spec.n = n;
      spec.seed = seed;
      spec.family = options.family;
      spec.circuit_size = options.circuit_size;
      bool forced = false;
      BitMatrix g = generate(spec, &forced);
      std::string forced_note = forced ? "basis forced" : "";

      emit(SchemeTag::LB, [&](BenchRecord& rec) {
        rec.t_k = t_star(n, k);
        rec.note = forced_note;
      });
      emit(SchemeTag::UB, [&](BenchRecord& rec) { rec.t_k = n; });
      emit(SchemeTag::Scheme1, [&](BenchRecord& rec) {
        if (!scheme1_in_range(t, k)) {
          rec.ok = false;
          rec.t_k = 0;
          rec.note = "k outside the block construction's range";
          return;
        }
        rec.t_k = scheme1_adapted(g, k).a_k.row_count();
      });

      bool pow2 = is_power_of_two(k);
      int q = pow2 ? std::countr_zero(static_cast<unsigned>(k)) : 0;
      emit(SchemeTag::SCR, [&](BenchRecord& rec) {
        if (!pow2) {
          rec.ok = false;
          rec.t_k = 0;
          rec.note = "scr requires k = 2^q";
          return;
        }
        rec.t_k = scr(g, q, options.scr_trials, seed).a_k.row_count();
      });
      emit(SchemeTag::SCR_best, [&](BenchRecord& rec) {
        if (!pow2) {
          rec.ok = false;
          rec.t_k = 0;
          rec.note = "scr requires k = 2^q";
          return;
        }
        rec.t_k = scr_bounds(n, t, q).best;
      });
      emit(SchemeTag::SCR_worst, [&](BenchRecord& rec) {
        if (!pow2) {
          rec.ok = false;
          rec.t_k = 0;
          rec.note = "scr requires k = 2^q";
          return;
        }
        rec.t_k = scr_bounds(n, t, q).worst;
      });
      emit(SchemeTag::BS, [&](BenchRecord& rec) {
        if (k < 2) {
          rec.ok = false;
          rec.t_k = 0;
          rec.note = "branch requires k >= 2";
          return;
        }
        BranchResult br = branch(g, k);
        SearchOutcome out = search(br.r, g, k, options.search_limits);
        rec.t_k = out.scheme->a_k.row_count();
        if (out.status == SearchStatus::exhausted) {
          rec.ok = false;
          rec.note = "search budget exhausted; incumbent cover reported";
        }
      });
    }
  }
  return records;
}

std::string to_csv(const std::vector<BenchRecord>& records) {
  std::ostringstream out;
  out << "scheme,n,t,k,seed,t_k,elapsed_ms,status\n";
  out.setf(std::ios::fixed);
  out.precision(3);
  for (const BenchRecord& rec : records) {
    out << scheme_tag_name(rec.scheme) << ',' << rec.n << ',' << rec.t << ','
        << rec.k << ',' << rec.seed << ',' << rec.t_k << ',' << rec.elapsed_ms
        << ',' << (rec.ok ? "ok" : "limit_exhausted") << '\n';
  }
  return out.str();
}

void write_csv_file(const std::string& path,
                    const std::vector<BenchRecord>& records) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << to_csv(records);
  if (!out.flush()) throw std::runtime_error("write failed: " + path);
}

std::string sweep_filename(int t, int k) {
  return "sweep_T" + std::to_string(t) + "_k" + std::to_string(k) + ".csv";
}

}  // namespace klac
