#include <random>

#include "doctest.h"
#include "series.hpp"

using namespace qc;

namespace {

HSeries random_series(std::mt19937& rng, int K, bool unit = false) {
  HSeries h(K);
  for (int i = 0; i < K; ++i) h[i] = qfrac(static_cast<long>(rng() % 11) - 5, 1 + static_cast<long>(rng() % 4));
  if (unit && sgn(h[0]) == 0) h[0] = 1;
  return h;
}

}  // namespace

TEST_CASE("rationals print as p/q in lowest terms") {
  CHECK(qstr(Q(3)) == "3/1");
  CHECK(qstr(qfrac(4, -6)) == "-2/3");
  CHECK(qstr(qparse("10/4")) == "5/2");
  CHECK(qfrac(2, 2) == Q(1));
  CHECK_THROWS_AS(qparse("x/2"), Error);
  CHECK_THROWS_AS(qparse("1/0"), Error);
}

TEST_CASE("generalized binomials and factorials") {
  CHECK(binomial(Q(5), 2) == 10);
  CHECK(binomial(Q(-1), 3) == -1);               // (-1 choose k) = (-1)^k
  CHECK(binomial(qfrac(1, 2), 2) == qfrac(-1, 8));
  CHECK(binomial(Q(3), -1) == 0);
  CHECK(factorial(5) == 120);
}

TEST_CASE("hbar series: known expansions") {
  const int K = 6;
  HSeries one_minus(K);
  one_minus[0] = 1;
  one_minus[1] = -1;
  const HSeries geo = one_minus.inv();  // 1/(1 - h) = sum h^n
  for (int i = 0; i < K; ++i) CHECK(geo[i] == 1);

  HSeries h(K);
  h[1] = 1;
  const HSeries e = h.exp();  // e^h
  for (int i = 0; i < K; ++i) CHECK(e[i] == 1 / factorial(i));
  CHECK(e.log() == h);

  CHECK(HSeries::monomial(K, 2, Q(3)).valuation() == 2);
  CHECK(HSeries(K).valuation() == K);
  CHECK(HSeries::monomial(K, K, Q(1)).is_zero());
  CHECK(h.times_hbar_power(2) == HSeries::monomial(K, 3, Q(1)));
  CHECK(HSeries::monomial(K, 3, Q(1)).div_hbar_power(2) == h.truncated(K - 2));
  CHECK_THROWS_AS(HSeries(K).inv(), Error);
  CHECK_THROWS_AS(e.exp(), Error);
}

TEST_CASE("hbar series: ring axioms on random inputs") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const int K = 1 + static_cast<int>(rng() % 7);
    const HSeries a = random_series(rng, K), b = random_series(rng, K), c = random_series(rng, K);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK((a - a).is_zero());
    const HSeries u = random_series(rng, K, true);
    CHECK(u * u.inv() == HSeries::constant(K, 1));
    HSeries acc = a;
    HSeries::fma(acc, b, c);
    CHECK(acc == a + b * c);
    CHECK(a.scale_hbar(Q(2)).scale_hbar(qfrac(1, 2)) == a);
  }
}

TEST_CASE("polynomials: multiplication and exact linear division") {
  std::mt19937 rng(5);
  const int K = 3, n = 3;
  for (int trial = 0; trial < 20; ++trial) {
    Poly p(n, K);
    for (int t = 0; t < 4; ++t) {
      Exps e{static_cast<int>(rng() % 5) - 2, static_cast<int>(rng() % 5) - 2, static_cast<int>(rng() % 3)};
      p.add_term(e, random_series(rng, K));
    }
    const Poly lin = Poly::linear(n, K, 0, 1, 0);
    CHECK((p * lin).divide_linear(0, 1) == p);
    CHECK((p + p) == p.scaled(Q(2)));
    CHECK((p - p).is_zero());
  }
  Poly q(2, K);
  q.add_term({1, 0}, HSeries::constant(K, 1));
  CHECK_THROWS_AS(q.divide_linear(0, 1), Error);  // t1 is not divisible by t1 - t2
  // permutation: swap variables
  const Poly sw = q.permuted(2, {1, 0});
  CHECK(sw.coeff({0, 1}) == HSeries::constant(K, 1));
}

TEST_CASE("window containment") {
  const Window w = Window::uniform(2, -2, 3);
  CHECK(w.contains({-2, 3}));
  CHECK_FALSE(w.contains({-3, 0}));
  CHECK_FALSE(w.contains({0, 4}));
}
