#include <random>

#include "cartan.hpp"
#include "doctest.h"

using namespace qc;

TEST_CASE("Cartan data") {
  const CartanData a1 = make_cartan("A1"), a2 = make_cartan("A2");
  CHECK(a1.a == std::vector<std::vector<int>>{{2}});
  CHECK(a2.a == std::vector<std::vector<int>>{{2, -1}, {-1, 2}});
  CHECK(a2.sym(0, 1) == -1);
  CHECK_THROWS_AS(make_cartan("B7"), Error);
  CHECK_THROWS_AS(make_cartan(""), Error);
}

TEST_CASE("hbar matrices: inverse is two-sided on random inputs") {
  std::mt19937 rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 4), K = 3;
    HMatrix m = HMatrix::identity(n, K);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 1; k < K; ++k)  // identity plus O(hbar)
          m.at(i, j)[k] = qfrac(static_cast<long>(rng() % 5) - 2, 1 + static_cast<long>(rng() % 3));
    const HMatrix inv = m.inverse();
    CHECK(m * inv == HMatrix::identity(n, K));
    CHECK(inv * m == HMatrix::identity(n, K));
    CHECK(m.transposed().transposed() == m);
  }
}

TEST_CASE("Cartan operator checks") {
  for (const char* name : {"A1", "A2"}) {
    const CartanReport r = run_cartan(make_cartan(name), 4, 3);
    CHECK(r.T_zero_vanishes);
    CHECK(r.T_mod_hbar_scalar);
    CHECK(r.inverse_two_sided);
    CHECK(r.inverse_leading_matches);
    CHECK(r.rho_zero);
    CHECK(r.C_zero);
    CHECK(r.r_zero);
    CHECK(r.passed());
  }
  const CartanReport a2 = run_cartan(make_cartan("A2"), 3, 2);
  CHECK(a2.inverse_cartan == std::vector<std::vector<Q>>{{qfrac(2, 3), qfrac(1, 3)}, {qfrac(1, 3), qfrac(2, 3)}});
  const CartanReport a1 = run_cartan(make_cartan("A1"), 3, 2);
  CHECK(a1.inverse_cartan == std::vector<std::vector<Q>>{{qfrac(1, 2)}});
}
