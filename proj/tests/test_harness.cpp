// Instance generation families, the multi-scheme sweep, and CSV emission.
#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "klac/bounds.hpp"
#include "klac/harness.hpp"
#include "klac/schemes.hpp"
#include "klac/verify.hpp"
#include "oracles.hpp"

using namespace klac;

TEST_SUITE("harness") {

TEST_CASE("family names round-trip and accept short aliases") {
  CHECK(family_from_string("uniform_full_rank") == Family::uniform_full_rank);
  CHECK(family_from_string("uniform") == Family::uniform_full_rank);
  CHECK(family_from_string("planted_circuits") == Family::planted_circuits);
  CHECK(family_from_string("planted") == Family::planted_circuits);
  CHECK(family_from_string("nested") == Family::nested);
  CHECK(family_to_string(Family::planted_circuits) == "planted_circuits");
  CHECK_THROWS_AS(family_from_string("gaussian"), std::invalid_argument);
}

TEST_CASE("generate validates the instance envelope") {
  InstanceSpec spec;
  spec.t = 0;
  spec.n = 5;
  CHECK_THROWS_AS(generate(spec), std::invalid_argument);
  spec.t = 21;
  spec.n = 30;
  CHECK_THROWS_AS(generate(spec), std::invalid_argument);
  spec.t = 4;
  spec.n = 3;  // below t
  CHECK_THROWS_AS(generate(spec), std::invalid_argument);
  spec.n = 16;  // above 2^4 - 1
  CHECK_THROWS_AS(generate(spec), std::invalid_argument);
}

TEST_CASE("uniform instances are distinct, nonzero and full rank") {
  for (uint64_t seed = 0; seed < 10; ++seed) {
    InstanceSpec spec;
    spec.t = 6;
    spec.n = 9;
    spec.seed = seed;
    bool forced = true;
    BitMatrix g = generate(spec, &forced);
    CHECK_FALSE(forced);
    REQUIRE(g.row_count() == 9);
    CHECK(g.dim == 6);
    CHECK(rank(g) == 6);
    std::set<uint64_t> values;
    for (const BitVec& v : g.rows) {
      CHECK_FALSE(v.is_zero());
      values.insert(v.bits);
    }
    CHECK(values.size() == 9);
    // Deterministic in the seed.
    CHECK(generate(spec) == g);
  }

  SUBCASE("different seeds give different instances") {
    InstanceSpec a, b;
    a.t = b.t = 6;
    a.n = b.n = 9;
    a.seed = 1;
    b.seed = 2;
    CHECK_FALSE(generate(a) == generate(b));
  }
  SUBCASE("the full space is reproduced exactly when n = 2^t - 1") {
    InstanceSpec spec;
    spec.t = 4;
    spec.n = 15;
    spec.seed = 7;
    BitMatrix g = generate(spec);
    std::set<uint64_t> values;
    for (const BitVec& v : g.rows) values.insert(v.bits);
    CHECK(values.size() == 15);
  }
}

TEST_CASE("planted instances consist of disjoint circuits plus fillers") {
  InstanceSpec spec;
  spec.t = 6;
  spec.n = 9;
  spec.family = Family::planted_circuits;
  spec.circuit_size = 3;
  spec.seed = 2;
  BitMatrix g = generate(spec);
  REQUIRE(g.row_count() == 9);
  CHECK(rank(g) == 6);

  // Partition the rows by their coordinate block; each block of two
  // columns carries exactly three rows XORing to zero.
  std::map<int, std::vector<int>> blocks;
  for (int i = 1; i <= 9; ++i) {
    int c = 1;
    while (!g.row(i).get(c)) ++c;
    blocks[(c - 1) / 2].push_back(i);
  }
  REQUIRE(blocks.size() == 3);
  for (const auto& [block, members] : blocks) {
    CHECK(members.size() == 3);
    CHECK(test::xor_rows(g, members).is_zero());
    for (int i : members) {
      for (int c = 1; c <= 6; ++c) {
        if ((c - 1) / 2 != block) CHECK_FALSE(g.row(i).get(c));
      }
    }
  }

  SUBCASE("fillers appear as unit vectors on the leftover columns") {
    InstanceSpec f;
    f.t = 7;
    f.n = 10;
    f.family = Family::planted_circuits;
    f.circuit_size = 3;
    f.seed = 4;
    BitMatrix m = generate(f);
    REQUIRE(m.row_count() == 10);
    CHECK(rank(m) == 7);
    BitVec unit = BitVec::zeros(7);
    unit.set(7, true);
    CHECK(std::count(m.rows.begin(), m.rows.end(), unit) == 1);
  }
  SUBCASE("infeasible column budgets are rejected") {
    InstanceSpec bad;
    bad.t = 6;
    bad.n = 10;
    bad.family = Family::planted_circuits;
    bad.circuit_size = 3;
    CHECK_THROWS_AS(generate(bad), std::invalid_argument);
    bad.n = 9;
    bad.circuit_size = 2;
    CHECK_THROWS_AS(generate(bad), std::invalid_argument);
  }
}

TEST_CASE("nested instances are a basis plus prefix-sum dependents") {
  InstanceSpec spec;
  spec.t = 6;
  spec.n = 9;
  spec.family = Family::nested;
  spec.seed = 1;
  BitMatrix g = generate(spec);
  REQUIRE(g.row_count() == 9);
  CHECK(rank(g) == 6);

  BitMatrix basis(6);
  for (int i = 1; i <= 6; ++i) basis.append(g.row(i));
  CHECK(rank(basis) == 6);

  // Dependents are prefix XORs of the basis with increasing lengths.
  int last_len = 1;
  for (int i = 7; i <= 9; ++i) {
    BitVec prefix = BitVec::zeros(6);
    int len = 0;
    for (int l = 1; l <= 6; ++l) {
      prefix = prefix ^ basis.row(l);
      if (prefix == g.row(i)) {
        len = l;
        break;
      }
    }
    REQUIRE(len >= 2);
    CHECK(len > last_len);
    last_len = len;
  }

  SUBCASE("the chain cover over the basis spends exactly t rows") {
    CoverScheme s = chain_cover(g, {1, 2, 3, 4, 5, 6});
    CHECK(s.a_k.row_count() == 6);
    CHECK(verify_cover(s, g).ok);
  }
  SUBCASE("too many dependents for distinct prefix lengths") {
    InstanceSpec bad;
    bad.t = 6;
    bad.n = 12;
    bad.family = Family::nested;
    CHECK_THROWS_AS(generate(bad), std::invalid_argument);
  }
  SUBCASE("n = t yields just the basis") {
    InstanceSpec flat;
    flat.t = 6;
    flat.n = 6;
    flat.family = Family::nested;
    flat.seed = 9;
    BitMatrix b = generate(flat);
    CHECK(b.row_count() == 6);
    CHECK(rank(b) == 6);
  }
}

TEST_CASE("run_sweep emits records in (n, trial, scheme) order") {
  SweepOptions options;
  options.family = Family::nested;
  std::vector<BenchRecord> records =
      run_sweep(6, 2, {7, 9}, 2, /*seed0=*/42, options);
  REQUIRE(records.size() == 2 * 2 * 7);

  const SchemeTag expected[] = {
      SchemeTag::LB,  SchemeTag::UB,        SchemeTag::Scheme1,
      SchemeTag::SCR, SchemeTag::SCR_best,  SchemeTag::SCR_worst,
      SchemeTag::BS};
  for (size_t i = 0; i < records.size(); ++i) {
    CHECK(records[i].scheme == expected[i % 7]);
    CHECK(records[i].n == (i < 14 ? 7 : 9));
    CHECK(records[i].t == 6);
    CHECK(records[i].k == 2);
  }

  for (const BenchRecord& rec : records) {
    CHECK(rec.ok);
    switch (rec.scheme) {
      case SchemeTag::LB:
        CHECK(rec.t_k == t_star(rec.n, 2));
        break;
      case SchemeTag::UB:
        CHECK(rec.t_k == rec.n);
        break;
      case SchemeTag::Scheme1:
        CHECK(rec.t_k >= 6);
        CHECK(rec.t_k <= scheme1_full(6, 2).a_k.row_count());
        break;
      case SchemeTag::SCR:
        CHECK(rec.t_k >= 6);
        CHECK(rec.t_k <= rec.n);
        break;
      case SchemeTag::SCR_best:
        CHECK(rec.t_k == scr_bounds(rec.n, 6, 1).best);
        break;
      case SchemeTag::SCR_worst:
        CHECK(rec.t_k == scr_bounds(rec.n, 6, 1).worst);
        break;
      case SchemeTag::BS:
        // A nested instance always folds back to t rows with k = 2.
        CHECK(rec.t_k == 6);
        break;
    }
    CHECK(rec.elapsed_ms >= 0.0);
  }

  SUBCASE("the sweep is deterministic apart from timings") {
    std::vector<BenchRecord> again =
        run_sweep(6, 2, {7, 9}, 2, /*seed0=*/42, options);
    REQUIRE(again.size() == records.size());
    for (size_t i = 0; i < records.size(); ++i) {
      CHECK(again[i].scheme == records[i].scheme);
      CHECK(again[i].seed == records[i].seed);
      CHECK(again[i].t_k == records[i].t_k);
      CHECK(again[i].ok == records[i].ok);
      CHECK(again[i].note == records[i].note);
    }
  }
}

TEST_CASE("run_sweep marks out-of-domain constructions as exhausted") {
  SUBCASE("k = 3 excludes SCR and the block construction at t = 6") {
    std::vector<BenchRecord> records = run_sweep(6, 3, {9}, 1, 0);
    REQUIRE(records.size() == 7);
    for (const BenchRecord& rec : records) {
      switch (rec.scheme) {
        case SchemeTag::SCR:
        case SchemeTag::SCR_best:
        case SchemeTag::SCR_worst:
          CHECK_FALSE(rec.ok);
          CHECK(rec.t_k == 0);
          CHECK(rec.note.find("2^q") != std::string::npos);
          break;
        case SchemeTag::Scheme1:
          CHECK_FALSE(rec.ok);
          CHECK(rec.t_k == 0);
          break;
        case SchemeTag::BS:
          CHECK(rec.ok);
          CHECK(rec.t_k >= 6);
          break;
        default:
          CHECK(rec.ok);
          break;
      }
    }
  }
  SUBCASE("k = 1 excludes branch-and-search and circuit removal") {
    std::vector<BenchRecord> records = run_sweep(6, 1, {9}, 1, 0);
    REQUIRE(records.size() == 7);
    for (const BenchRecord& rec : records) {
      if (rec.scheme == SchemeTag::BS) {
        CHECK_FALSE(rec.ok);
        CHECK(rec.t_k == 0);
        CHECK(rec.note.find("k >= 2") != std::string::npos);
      }
      if (rec.scheme == SchemeTag::SCR) {
        CHECK_FALSE(rec.ok);  // zero removal rounds are rejected
      }
      if (rec.scheme == SchemeTag::Scheme1) {
        CHECK(rec.ok);
      }
    }
  }
  CHECK_THROWS_AS(run_sweep(6, 0, {9}, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(run_sweep(6, 2, {9}, 0, 0), std::invalid_argument);
}

TEST_CASE("to_csv freezes the record schema") {
  BenchRecord a;
  a.scheme = SchemeTag::LB;
  a.n = 7;
  a.t = 6;
  a.k = 2;
  a.seed = 42;
  a.t_k = 6;
  a.elapsed_ms = 0.1239;
  BenchRecord b;
  b.scheme = SchemeTag::BS;
  b.n = 9;
  b.t = 6;
  b.k = 2;
  b.seed = 43;
  b.t_k = 0;
  b.elapsed_ms = 12.5;
  b.ok = false;
  b.note = "ignored by the CSV";
  CHECK(to_csv({a, b}) ==
        "scheme,n,t,k,seed,t_k,elapsed_ms,status\n"
        "LB,7,6,2,42,6,0.124,ok\n"
        "BS,9,6,2,43,0,12.500,limit_exhausted\n");
}

TEST_CASE("write_csv_file writes exactly the rendered text") {
  std::string path = "test_harness_sweep.csv";
  std::vector<BenchRecord> records = run_sweep(6, 2, {7}, 1, 3);
  write_csv_file(path, records);
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() == to_csv(records));
  std::remove(path.c_str());
  CHECK_THROWS_AS(write_csv_file("no_such_dir/x.csv", records),
                  std::runtime_error);
}

TEST_CASE("sweep_filename follows the canonical pattern") {
  CHECK(sweep_filename(6, 2) == "sweep_T6_k2.csv");
  CHECK(sweep_filename(12, 4) == "sweep_T12_k4.csv");
}

TEST_CASE("scheme_tag_name covers every tag") {
  CHECK(scheme_tag_name(SchemeTag::LB) == "LB");
  CHECK(scheme_tag_name(SchemeTag::UB) == "UB");
  CHECK(scheme_tag_name(SchemeTag::Scheme1) == "Scheme1");
  CHECK(scheme_tag_name(SchemeTag::SCR) == "SCR");
  CHECK(scheme_tag_name(SchemeTag::SCR_best) == "SCR_best");
  CHECK(scheme_tag_name(SchemeTag::SCR_worst) == "SCR_worst");
  CHECK(scheme_tag_name(SchemeTag::BS) == "BS");
}

}  // TEST_SUITE
