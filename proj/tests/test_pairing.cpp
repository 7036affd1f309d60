#include <random>

#include "doctest.h"
#include "pairing.hpp"

using namespace qc;

namespace {

// z^x w^y coefficient of (u1 - u2)/(u1 - u2 + hbar) in u1 >> u2:
// 1 - hbar sum_k (u2 - hbar)^k u1^{-k-1}
HSeries kernel_coeff(int x, int y, int K) {
  HSeries r(K);
  if (x == 0 && y == 0) r[0] += 1;
  const int k = -x - 1;
  if (k >= 0 && y >= 0 && y <= k) {
    const int p = 1 + k - y;
    if (p < K) r[p] -= binomial(Q(k), y) * ((k - y) % 2 ? -1 : 1);
  }
  return r;
}

}  // namespace

TEST_CASE("single-letter pairing is the residue") {
  const int K = 3;
  const CartanData a1 = make_cartan("A1");
  for (int a = -3; a <= 3; ++a)
    for (int b = -3; b <= 3; ++b)
      CHECK(pair(embed(a1, 0, a, K), FreeWord{{0, b}}) == HSeries::constant(K, a + b == -1 ? 1 : 0));
  // mismatched multidegree
  CHECK(pair(embed(a1, 0, 0, K), FreeWord{{0, -1}, {0, 0}}).is_zero());
  const CartanData a2 = make_cartan("A2");
  CHECK(pair(embed(a2, 0, 0, K), FreeWord{{1, -1}}).is_zero());
}

TEST_CASE("two-letter pairing against a hand expansion") {
  // P = e[1] * e[0] = t1 + t2 + hbar
  const int K = 4;
  const CartanData a1 = make_cartan("A1");
  const FOElement P = star(embed(a1, 0, 1, K), embed(a1, 0, 0, K));
  const std::vector<std::tuple<int, int, int>> terms{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  for (int b1 = -4; b1 <= 2; ++b1)
    for (int b2 = -4; b2 <= 2; ++b2) {
      HSeries want(K);
      for (const auto& [p1, p2, h] : terms) {
        const HSeries kc = kernel_coeff(-1 - b1 - p1, -1 - b2 - p2, K);
        want = want + kc.times_hbar_power(h);
      }
      CHECK(pair(P, FreeWord{{0, b1}, {0, b2}}) == want);
    }
}

TEST_CASE("determinants") {
  const int K = 3;
  std::vector<std::vector<HSeries>> m(3, std::vector<HSeries>(3, HSeries(K)));
  std::mt19937 rng(2);
  for (auto& row : m)
    for (auto& e : row)
      for (int k = 0; k < K; ++k) e[k] = static_cast<long>(rng() % 7) - 3;
  bool unit = false;
  const HSeries d = hdet(m, K, &unit);
  std::swap(m[0], m[2]);
  bool unit2 = false;
  CHECK(hdet(m, K, &unit2) == HSeries(K) - d);
  CHECK(unit == unit2);
  // identity and a singular constant matrix
  std::vector<std::vector<HSeries>> id(2, std::vector<HSeries>(2, HSeries(K)));
  id[0][0] = id[1][1] = HSeries::constant(K, 1);
  CHECK(hdet(id, K, &unit) == HSeries::constant(K, 1));
  CHECK(unit);
  CHECK(rank_q({{1, 2}, {2, 4}}) == 1);
  CHECK(rank_q({{1, 0}, {0, 1}}) == 2);
}

TEST_CASE("Gram blocks, Hopf rules and the annihilator") {
  const GramReport g1 = gram_alpha1(3, 3);
  CHECK(g1.square);
  CHECK(g1.nondegenerate);
  CHECK(g1.kernel_dim == 0);
  const GramReport g2 = gram_2alpha1(3, 3);
  CHECK(g2.square);
  CHECK(g2.nondegenerate);
  CHECK(check_hopf_rules(3, 4, 7).passed());
  CHECK(check_annihilator(3, 2).passed());
}

TEST_CASE("Hopf product rule on a fixed sample") {
  const int K = 3;
  const CartanData a1 = make_cartan("A1");
  const RuleValue v = hopf_rule_product(embed(a1, 0, -1, K), embed(a1, 0, -2, K), FreeWord{{0, 0}, {0, 1}});
  CHECK(v.holds());
  CHECK_FALSE(v.lhs.is_zero());
}
