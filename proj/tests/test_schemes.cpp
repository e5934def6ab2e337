// The constructions: block-diagonal full and adapted variants, chain
// covers, and successive circuit removal.
#include <algorithm>
#include <set>
#include <stdexcept>

#include "doctest.h"
#include "klac/bounds.hpp"
#include "klac/harness.hpp"
#include "klac/schemes.hpp"
#include "klac/verify.hpp"
#include "oracles.hpp"

using namespace klac;

namespace {

// Coordinates of the section a row lives in: [first, last], 1-based.
std::pair<int, int> support_range(const BitVec& v) {
  int first = 0, last = 0;
  for (int c = 1; c <= v.len; ++c) {
    if (v.get(c)) {
      if (first == 0) first = c;
      last = c;
    }
  }
  return {first, last};
}

}  // namespace

TEST_SUITE("schemes") {

TEST_CASE("scheme1_full(8, 3) has the documented shape") {
  CoverScheme s = scheme1_full(8, 3);
  CHECK(s.k == 3);
  REQUIRE(s.a_k.row_count() == 17);
  CHECK(s.a_k.dim == 8);

  // Three blocks of 7, 7 and 3 rows on coordinate sections 1-3, 4-6, 7-8.
  for (int i = 1; i <= 7; ++i) {
    auto [lo, hi] = support_range(s.a_k.row(i));
    CHECK(lo >= 1);
    CHECK(hi <= 3);
  }
  for (int i = 8; i <= 14; ++i) {
    auto [lo, hi] = support_range(s.a_k.row(i));
    CHECK(lo >= 4);
    CHECK(hi <= 6);
  }
  for (int i = 15; i <= 17; ++i) {
    auto [lo, hi] = support_range(s.a_k.row(i));
    CHECK(lo >= 7);
    CHECK(hi <= 8);
  }

  // Patterns are enumerated in increasing integer order within a section.
  CHECK(s.a_k.row(1).to_string() == "00100000");
  CHECK(s.a_k.row(2).to_string() == "01000000");
  CHECK(s.a_k.row(7).to_string() == "11100000");
  CHECK(s.a_k.row(10).to_string() == "00001100");
  CHECK(s.a_k.row(16).to_string() == "00000010");

  // The witness of vector 01001110 (msb_id 78) is rows {2, 10, 16}.
  BitVec v = BitVec::from_string("01001110");
  CHECK(s.witnesses.at(78) == std::vector<int>{2, 10, 16});
  CHECK((s.a_k.row(2) ^ s.a_k.row(10) ^ s.a_k.row(16)) == v);

  CHECK(verify_full_space(s, 8).ok);
}

TEST_CASE("scheme1_full(4, 1) degenerates to the whole space") {
  CoverScheme s = scheme1_full(4, 1);
  REQUIRE(s.a_k.row_count() == 15);
  for (int64_t id = 1; id <= 15; ++id) {
    CHECK(s.witnesses.at(id) == std::vector<int>{static_cast<int>(id)});
    CHECK(s.a_k.row(static_cast<int>(id)).msb_id() ==
          static_cast<uint64_t>(id));
  }
}

TEST_CASE("scheme1_full row counts follow the section formula") {
  for (int t = 2; t <= 16; ++t) {
    for (int k = 1; k == 1 || k < (t + 1) / 2; ++k) {
      CoverScheme s = scheme1_full(t, k);
      int m = (t + k - 1) / k;
      int t_rem = t - (k - 1) * m;
      if (t_rem >= 0) {
        int64_t expect = static_cast<int64_t>(k - 1) * ((1 << m) - 1) +
                         (int64_t{1} << t_rem) - 1;
        CHECK(s.a_k.row_count() == expect);
      }
      CHECK(s.a_k.row_count() <= theorem1_ub(t, k));
      CHECK(static_cast<int64_t>(s.witnesses.size()) ==
            (int64_t{1} << t) - 1);
      CHECK_FALSE(validate_structure(s).has_value());
    }
  }
}

TEST_CASE("scheme1_full handles k close to t/2 with fewer sections") {
  // ceil(11/5) = 3 does not fit 4 times into 11 coordinates; four
  // sections of lengths 3, 3, 3, 2 are used instead.
  CoverScheme s = scheme1_full(11, 5);
  CHECK(s.a_k.row_count() == 24);  // 3 * 7 + 3
  CHECK(verify_full_space(s, 11).ok);

  CoverScheme square = scheme1_full(12, 5);
  CHECK(square.a_k.row_count() == 28);  // four sections of length 3
}

TEST_CASE("scheme1_full rejects parameters outside its range") {
  CHECK_THROWS_AS(scheme1_full(6, 3), std::domain_error);
  CHECK_THROWS_AS(scheme1_full(1, 1), std::domain_error);
  CHECK_THROWS_AS(scheme1_full(8, 0), std::domain_error);
  CHECK_THROWS_AS(scheme1_full(8, 4), std::domain_error);
}

TEST_CASE("scheme1_adapted keeps only occurring patterns") {
  SUBCASE("a unit basis needs exactly its own rows") {
    BitMatrix g = BitMatrix::from_rows(
        {"100000", "010000", "001000", "000100", "000010", "000001"});
    CoverScheme s = scheme1_adapted(g, 2);
    CHECK(s.a_k.row_count() == 6);
    for (int i = 1; i <= 6; ++i) {
      REQUIRE(s.witnesses.at(i).size() == 1);
      CHECK(s.a_k.row(s.witnesses.at(i)[0]) == g.row(i));
    }
    CHECK(verify_cover(s, g).ok);
  }
  SUBCASE("on the full space it matches the full construction's size") {
    CHECK(scheme1_adapted(full_space_matrix(5), 2).a_k.row_count() == 10);
    CHECK(scheme1_full(5, 2).a_k.row_count() == 10);
    CHECK(scheme1_adapted(full_space_matrix(6), 2).a_k.row_count() == 14);
    CHECK(scheme1_full(6, 2).a_k.row_count() == 14);
  }
}

TEST_CASE("scheme1_adapted never exceeds the full construction") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    int t = 5 + static_cast<int>(rng_below(rng, 4));  // 5..8
    int k = 2;
    int max_n = (1 << t) - 1;
    int n = t + static_cast<int>(rng_below(rng,
                                           static_cast<uint64_t>(max_n - t)));
    BitMatrix g = test::random_distinct_nonzero(rng, t, n);
    CoverScheme s = scheme1_adapted(g, k);
    CHECK(s.a_k.row_count() <= scheme1_full(t, k).a_k.row_count());
    CHECK_FALSE(validate_structure(s).has_value());
    VerifyReport rep = verify_cover(s, g);
    CHECK(rep.ok);
    CHECK(rep.max_witness_size <= k);
  }
}

TEST_CASE("scheme1_adapted rejects bad inputs") {
  BitMatrix dup = BitMatrix::from_rows({"100000", "100000"});
  CHECK_THROWS_AS(scheme1_adapted(dup, 2), std::invalid_argument);
  BitMatrix zero = BitMatrix::from_rows({"000000", "100000"});
  CHECK_THROWS_AS(scheme1_adapted(zero, 2), std::invalid_argument);
  CHECK_THROWS_AS(scheme1_adapted(full_space_matrix(6), 3),
                  std::domain_error);
}

TEST_CASE("chain_cover_parts reproduces the worked nine-row cover") {
  BitMatrix g = BitMatrix::from_rows(
      {"100000", "010000", "001000", "000100", "000010", "000001",
       "111100", "110000", "111000"});
  CoverScheme s = chain_cover_parts(g, {{1, 2, 3, 4}, {5, 6}});
  CHECK(s.k == 2);
  CHECK(s.a_k == BitMatrix::from_rows({"100000", "110000", "111000",
                                       "111100", "000010", "000011"}));
  CHECK(s.witnesses.at(1) == std::vector<int>{1});
  CHECK(s.witnesses.at(2) == std::vector<int>{1, 2});
  CHECK(s.witnesses.at(3) == std::vector<int>{2, 3});
  CHECK(s.witnesses.at(4) == std::vector<int>{3, 4});
  CHECK(s.witnesses.at(5) == std::vector<int>{5});
  CHECK(s.witnesses.at(6) == std::vector<int>{5, 6});
  CHECK(s.witnesses.at(7) == std::vector<int>{4});  // 111100 is a prefix
  CHECK(s.witnesses.at(8) == std::vector<int>{2});  // 110000 is a prefix
  CHECK(s.witnesses.at(9) == std::vector<int>{3});  // 111000 is a prefix
  CHECK(verify_cover(s, g).ok);
}

TEST_CASE("chain_cover witnesses rows outside the order") {
  SUBCASE("a row equal to one prefix sum") {
    BitMatrix g = BitMatrix::from_rows({"100", "010", "110"});
    CoverScheme s = chain_cover(g, {1, 2});
    CHECK(s.a_k == BitMatrix::from_rows({"100", "110"}));
    CHECK(s.witnesses.at(3) == std::vector<int>{2});
    CHECK(verify_cover(s, g).ok);
  }
  SUBCASE("a row equal to the XOR of two prefix sums") {
    BitMatrix g = BitMatrix::from_rows({"100", "010", "011", "001"});
    // Prefix sums 100, 110, 101; row 001 = 100 ^ 101.
    CoverScheme s = chain_cover(g, {1, 2, 3});
    CHECK(s.a_k.row_count() == 3);
    CHECK(s.witnesses.at(4) == std::vector<int>{1, 3});
    CHECK(verify_cover(s, g).ok);
  }
  SUBCASE("a single-row chain") {
    BitMatrix g = BitMatrix::from_rows({"101"});
    CoverScheme s = chain_cover(g, {1});
    CHECK(s.a_k.row_count() == 1);
    CHECK(s.witnesses.at(1) == std::vector<int>{1});
  }
}

TEST_CASE("chain_cover rejects impossible instances") {
  BitMatrix g = BitMatrix::from_rows({"100", "010", "001"});
  CHECK_THROWS_AS(chain_cover(g, {1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(chain_cover(g, {1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(chain_cover(g, {0}), std::invalid_argument);
  CHECK_THROWS_AS(chain_cover_parts(g, {{1, 2}, {2, 3}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(chain_cover_parts(g, {{}}), std::invalid_argument);
  // A dependent order makes a prefix sum vanish.
  BitMatrix dep = BitMatrix::from_rows({"100", "010", "110"});
  CHECK_THROWS_AS(chain_cover(dep, {1, 2, 3}), std::invalid_argument);
}

TEST_CASE("scr collapses planted circuits to their chain rows") {
  InstanceSpec spec;
  spec.t = 6;
  spec.n = 9;
  spec.family = Family::planted_circuits;
  spec.circuit_size = 3;
  spec.seed = 5;
  BitMatrix g = generate(spec);

  SUBCASE("one round halves the circuit rows: 9 -> 6") {
    CoverScheme s = scr(g, 1, 3, 5);
    CHECK(s.k == 2);
    CHECK(s.a_k.row_count() == 6);
    VerifyReport rep = verify_cover(s, g);
    CHECK(rep.ok);
    CHECK(rep.max_witness_size <= 2);
    CHECK_FALSE(validate_structure(s).has_value());
  }
  SUBCASE("a second round cannot grow the output") {
    CoverScheme s = scr(g, 2, 3, 5);
    CHECK(s.k == 4);
    CHECK(s.a_k.row_count() == 6);
    CHECK(verify_cover(s, g).ok);
  }
}

TEST_CASE("scr emits independent rows verbatim") {
  InstanceSpec spec;
  spec.t = 6;
  spec.n = 6;
  spec.family = Family::nested;
  spec.seed = 3;
  BitMatrix g = generate(spec);
  CoverScheme s = scr(g, 1);
  CHECK(s.a_k == g);
  for (int i = 1; i <= 6; ++i) {
    CHECK(s.witnesses.at(i) == std::vector<int>{i});
  }
}

TEST_CASE("scr output stays within [t, n] and verifies") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 30; ++trial) {
    int t = 4 + static_cast<int>(rng_below(rng, 4));  // 4..7
    int max_n = (1 << t) - 1;
    int n = t + static_cast<int>(
                    rng_below(rng, static_cast<uint64_t>(max_n - t + 1)));
    BitMatrix g = test::random_distinct_nonzero(rng, t, n);
    if (rank(g) < t) continue;
    int q = 1 + static_cast<int>(rng_below(rng, 2));
    CoverScheme s = scr(g, q, 4, trial);
    CHECK(s.k == (1 << q));
    CHECK(s.a_k.row_count() >= t);
    CHECK(s.a_k.row_count() <= n);
    VerifyReport rep = verify_cover(s, g);
    CHECK(rep.ok);
    CHECK(rep.max_witness_size <= (1 << q));
  }
}

TEST_CASE("scr is deterministic in its seed") {
  std::mt19937_64 rng(47);
  BitMatrix g = test::random_distinct_nonzero(rng, 6, 20);
  CHECK(format_scheme(scr(g, 2, 5, 99)) == format_scheme(scr(g, 2, 5, 99)));
}

TEST_CASE("scr rejects bad inputs") {
  BitMatrix g = BitMatrix::from_rows({"100", "010"});
  CHECK_THROWS_AS(scr(g, 0), std::invalid_argument);
  CHECK_THROWS_AS(scr(g, 1, 0), std::invalid_argument);
  BitMatrix dup = BitMatrix::from_rows({"100", "100"});
  CHECK_THROWS_AS(scr(dup, 1), std::invalid_argument);
  BitMatrix zero = BitMatrix::from_rows({"000", "100"});
  CHECK_THROWS_AS(scr(zero, 1), std::invalid_argument);
}

}  // TEST_SUITE
