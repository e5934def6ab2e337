// Instance generation, multi-scheme benchmark sweeps, and CSV emission.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "klac/bits.hpp"
#include "klac/schemes.hpp"

namespace klac {

enum class Family { uniform_full_rank, planted_circuits, nested };

Family family_from_string(const std::string& name);  // throws on unknown
std::string family_to_string(Family f);

struct InstanceSpec {
  int t = 0;
  int64_t n = 0;  // t <= n <= 2^t - 1
  uint64_t seed = 0;
  Family family = Family::uniform_full_rank;
  int circuit_size = 3;  // planted_circuits only
};

// Deterministic in seed. Always returns n distinct nonzero rows of rank t.
//   uniform_full_rank: distinct nonzero vectors sampled uniformly; draws
//     are rejected until rank = t, falling back to planting the unit basis
//     after 1000 rejections (then *basis_forced is set).
//   planted_circuits: floor(n/s) disjoint circuits of size s on disjoint
//     coordinate blocks of s-1 columns each, plus unit-vector fillers on
//     the remaining columns; requires floor(n/s)(s-1) + (n mod s) = t.
//     Rows are shuffled.
//   nested: a random basis as rows 1..t, then n-t dependents, each the XOR
//     of a prefix of the basis, with distinct prefix lengths in [2, t]
//     (requires n - t <= t - 1). Row order is basis first, then dependents
//     by ascending prefix length.
// Throws std::invalid_argument for infeasible specs; guard t <= 20.
BitMatrix generate(const InstanceSpec& spec, bool* basis_forced = nullptr);

enum class SchemeTag { LB, UB, Scheme1, SCR, SCR_best, SCR_worst, BS };
std::string scheme_tag_name(SchemeTag tag);

struct BenchRecord {
  SchemeTag scheme = SchemeTag::LB;
  int64_t n = 0;
  int t = 0;
  int k = 0;
  uint64_t seed = 0;
  int64_t t_k = 0;
  double elapsed_ms = 0.0;
  bool ok = true;      // false = limit_exhausted
  std::string note;    // diagnostics only; not part of the CSV
};

struct SweepOptions {
  Family family = Family::uniform_full_rank;
  int circuit_size = 3;
  int scr_trials = 10;
  // No wall-clock limit by default: sweep results must be deterministic.
  // The node budget is modest: past it the search is proving optimality of
  // an incumbent it has already recorded, which a sweep does not need.
  SearchLimits search_limits{200'000, std::nullopt};
};

// For each n and trial: generates an instance from seed0 (one derived seed
// per (n, trial)), runs scheme1_adapted, scr and branch+search on it, and
// records the closed-form LB/UB/SCR_best/SCR_worst values. Records are
// emitted in deterministic (n, trial, scheme-tag) order, raw (no averages).
// Constructions whose domain excludes the requested k (scr needs k = 2^q,
// scheme1 needs k < ceil(t/2), branch needs k >= 2) yield records with
// status limit_exhausted, t_k = 0 and an explanatory note.
std::vector<BenchRecord> run_sweep(int t, int k,
                                   const std::vector<int64_t>& n_values,
                                   int trials, uint64_t seed0,
                                   const SweepOptions& options = {});

// CSV schema (header mandatory): scheme,n,t,k,seed,t_k,elapsed_ms,status
std::string to_csv(const std::vector<BenchRecord>& records);
void write_csv_file(const std::string& path,
                    const std::vector<BenchRecord>& records);

// Canonical sweep output filename: sweep_T<t>_k<k>.csv
std::string sweep_filename(int t, int k);

}  // namespace klac
