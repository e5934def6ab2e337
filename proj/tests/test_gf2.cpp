// GF(2) algebra: rank, span membership, dependency extraction and circuit
// finding, each cross-checked against the naive oracles.
#include <algorithm>
#include <stdexcept>

#include "doctest.h"
#include "klac/gf2.hpp"
#include "klac/harness.hpp"
#include "oracles.hpp"

using namespace klac;

TEST_SUITE("gf2") {

TEST_CASE("rank on fixed matrices") {
  CHECK(rank(BitMatrix::from_rows({"100", "010", "001"})) == 3);
  CHECK(rank(BitMatrix::from_rows({"100", "010", "110"})) == 2);
  CHECK(rank(BitMatrix(5)) == 0);
  CHECK(rank(BitMatrix::from_rows({"0000"})) == 0);
}

TEST_CASE("rank agrees with coordinate-wise elimination") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    int dim = 1 + static_cast<int>(rng_below(rng, 14));
    int rows = static_cast<int>(rng_below(rng, 2 * static_cast<uint64_t>(dim) + 1));
    BitMatrix m = test::random_any_matrix(rng, dim, rows);
    int r = rank(m);
    CHECK(r == test::naive_rank(m));
    CHECK(r <= std::min(rows, dim));

    // Invariant under row permutation.
    BitMatrix shuffled = m;
    rng_shuffle(rng, shuffled.rows);
    CHECK(rank(shuffled) == r);
  }
}

TEST_CASE("rank of generated benchmark instances is the full dimension") {
  for (uint64_t seed = 0; seed < 10; ++seed) {
    InstanceSpec spec;
    spec.t = 6;
    spec.n = 9;
    spec.seed = seed;
    BitMatrix g = generate(spec);
    CHECK(rank(g) == 6);
    CHECK(test::naive_rank(g) == 6);
  }
}

TEST_CASE("in_span on fixed inputs") {
  BitMatrix m = BitMatrix::from_rows({"100", "010"});
  CHECK(in_span(m, BitVec::from_string("110")));
  CHECK_FALSE(in_span(m, BitVec::from_string("001")));
  CHECK(in_span(m, BitVec::zeros(3)));
  CHECK_THROWS_AS(in_span(m, BitVec::from_string("1100")),
                  std::invalid_argument);
}

TEST_CASE("in_span agrees with the rank-extension oracle") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    int dim = 2 + static_cast<int>(rng_below(rng, 10));
    int rows = static_cast<int>(rng_below(rng, static_cast<uint64_t>(dim) + 2));
    BitMatrix m = test::random_any_matrix(rng, dim, rows);
    BitVec v(rng_below(rng, uint64_t{1} << dim), dim);
    CHECK(in_span(m, v) == test::naive_in_span(m, v));
  }
}

TEST_CASE("find_dependency on fixed inputs") {
  CHECK_FALSE(find_dependency(BitMatrix::from_rows({"100", "010", "001"})));
  auto dep = find_dependency(BitMatrix::from_rows({"100", "010", "110"}));
  REQUIRE(dep.has_value());
  CHECK(*dep == std::vector<int>{1, 2, 3});
  auto dup = find_dependency(BitMatrix::from_rows({"100", "100"}));
  REQUIRE(dup.has_value());
  CHECK(*dup == std::vector<int>{1, 2});
}

TEST_CASE("find_dependency returns an ascending zero-sum combination") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    int dim = 2 + static_cast<int>(rng_below(rng, 8));
    int rows = 1 + static_cast<int>(rng_below(rng, 2 * static_cast<uint64_t>(dim)));
    BitMatrix m = test::random_any_matrix(rng, dim, rows);
    auto dep = find_dependency(m);
    CHECK(dep.has_value() == (rank(m) < m.row_count()));
    if (dep) {
      CHECK(std::is_sorted(dep->begin(), dep->end()));
      CHECK(test::xor_rows(m, *dep).is_zero());
    }
  }
}

TEST_CASE("minimize_to_circuit on fixed inputs") {
  BitMatrix m = BitMatrix::from_rows({"100", "010", "110"});
  Circuit c = minimize_to_circuit(m, {1, 2, 3});
  CHECK(c.indices == std::vector<int>{1, 2, 3});

  BitMatrix pairs = BitMatrix::from_rows({"100", "100", "010", "010"});
  Circuit first = minimize_to_circuit(pairs, {1, 2, 3, 4});
  CHECK(first.indices == std::vector<int>{1, 2});
  CHECK(test::is_circuit(pairs, first.indices));

  CHECK_THROWS_AS(
      minimize_to_circuit(BitMatrix::from_rows({"100", "010"}), {1, 2}),
      std::invalid_argument);
  CHECK_THROWS_AS(minimize_to_circuit(m, {1, 5}), std::invalid_argument);
}

TEST_CASE("minimize_to_circuit always lands on a circuit inside dep") {
  std::mt19937_64 rng(17);
  int done = 0;
  while (done < 100) {
    int dim = 3 + static_cast<int>(rng_below(rng, 5));
    int rows = dim + 1 + static_cast<int>(rng_below(rng, 3));
    if (rows > (1 << dim) - 1) continue;
    BitMatrix m = test::random_distinct_nonzero(rng, dim, rows);
    auto dep = find_dependency(m);
    REQUIRE(dep.has_value());
    Circuit c = minimize_to_circuit(m, *dep);
    CHECK(test::is_circuit(m, c.indices));
    CHECK(std::includes(dep->begin(), dep->end(), c.indices.begin(),
                        c.indices.end()));
    // Deterministic.
    CHECK(minimize_to_circuit(m, *dep) == c);
    ++done;
  }
}

TEST_CASE("find_small_circuit scans in matrix order when trials = 1") {
  BitMatrix m = BitMatrix::from_rows({"100", "010", "110", "001", "101"});
  auto c = find_small_circuit(m, 1);
  REQUIRE(c.has_value());
  CHECK(c->indices == std::vector<int>{1, 2, 3});

  SUBCASE("more trials can only keep or improve the size") {
    auto better = find_small_circuit(m, 20);
    REQUIRE(better.has_value());
    CHECK(better->indices.size() == 3);
    bool known = better->indices == std::vector<int>{1, 2, 3} ||
                 better->indices == std::vector<int>{1, 4, 5};
    CHECK(known);
  }
}

TEST_CASE("find_small_circuit is absent exactly on independent rows") {
  CHECK_FALSE(find_small_circuit(BitMatrix::from_rows({"100", "010", "001"})));
  CHECK_FALSE(find_small_circuit(BitMatrix(4), 5));
}

TEST_CASE("a full-support dependency needs rank+1 rows") {
  BitMatrix m = BitMatrix::from_rows(
      {"1000", "0100", "0010", "0001", "1111"});
  auto c = find_small_circuit(m, 8);
  REQUIRE(c.has_value());
  CHECK(c->indices == std::vector<int>{1, 2, 3, 4, 5});
  CHECK(static_cast<int>(c->indices.size()) == rank(m) + 1);
}

TEST_CASE("find_small_circuit respects the rank+1 bound and minimality") {
  std::mt19937_64 rng(23);
  int done = 0;
  while (done < 120) {
    int dim = 3 + static_cast<int>(rng_below(rng, 5));
    int rows = dim + 1 + static_cast<int>(rng_below(rng, 4));
    if (rows > (1 << dim) - 1) continue;
    BitMatrix m = test::random_distinct_nonzero(rng, dim, rows);
    auto c = find_small_circuit(m, 6, /*seed=*/done);
    REQUIRE(c.has_value());
    CHECK(test::is_circuit(m, c->indices));
    CHECK(static_cast<int>(c->indices.size()) <= rank(m) + 1);
    auto smallest = test::naive_smallest_circuit_size(m);
    REQUIRE(smallest.has_value());
    CHECK(static_cast<int>(c->indices.size()) >= *smallest);
    // Same seed, same answer.
    auto again = find_small_circuit(m, 6, /*seed=*/done);
    CHECK(again->indices == c->indices);
    ++done;
  }
}

TEST_CASE("find_small_circuit rejects a non-positive trial count") {
  BitMatrix m = BitMatrix::from_rows({"10", "01"});
  CHECK_THROWS_AS(find_small_circuit(m, 0), std::invalid_argument);
}

}  // TEST_SUITE
