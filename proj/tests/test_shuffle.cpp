#include "doctest.h"
#include "shuffle.hpp"

using namespace qc;

namespace {

// Numerator in two variables from {exponents, coefficient of hbar^k} triples.
Poly poly2(int K, std::initializer_list<std::tuple<int, int, int, Q>> terms) {
  Poly p(2, K);
  for (const auto& [a, b, k, c] : terms) p.add_term({a, b}, HSeries::monomial(K, k, c));
  return p;
}

}  // namespace

TEST_CASE("star product of two A1 generators by hand") {
  // Sym t1^m t2^n (t1 - t2 + hbar)/(t1 - t2)
  const int K = 3;
  const CartanData a1 = make_cartan("A1");
  const FOElement e1 = embed(a1, 0, 1, K), e0 = embed(a1, 0, 0, K);
  const FOElement p = star(e1, e0);
  CHECK(p.k == std::vector<int>{2});
  CHECK(p.P == poly2(K, {{1, 0, 0, Q(1)}, {0, 1, 0, Q(1)}, {0, 0, 1, Q(1)}}));
  CHECK(star(e0, e1).P == poly2(K, {{1, 0, 0, Q(1)}, {0, 1, 0, Q(1)}, {0, 0, 1, Q(-1)}}));
  // e[0] * e[0] = 2
  CHECK(star(e0, e0).P == poly2(K, {{0, 0, 0, Q(2)}}));
  CHECK(group_symmetric(p));
  CHECK(fo_degree(e1) == 1);
}

TEST_CASE("star product: unit and associativity on small inputs") {
  const int K = 3;
  for (const char* name : {"A1", "A2"}) {
    const CartanData c = make_cartan(name);
    const FOElement one = fo_one(c, K);
    for (int i = 0; i < c.rank(); ++i)
      for (int m = -1; m <= 1; ++m) {
        const FOElement e = embed(c, i, m, K);
        CHECK(star(one, e) == e);
        CHECK(star(e, one) == e);
      }
    const FOElement a = embed(c, 0, 1, K), b = embed(c, c.rank() - 1, -1, K), d = embed(c, 0, 0, K);
    CHECK(star(star(a, b), d) == star(a, star(b, d)));
    CHECK(star_all({a, b, d}) == star(a, star(b, d)));
  }
  CHECK(cross_pairs({2, 1}) == 2);
  CHECK(cross_pairs({3}) == 0);
}

TEST_CASE("vertex and Serre elements vanish") {
  const int K = 3;
  const CartanData a1 = make_cartan("A1"), a2 = make_cartan("A2");
  for (int m = -2; m <= 2; ++m)
    for (int n = -2; n <= 2; ++n) {
      CHECK(vertex_element(a1, 0, 0, m, n, K).is_zero());
      CHECK(vertex_element(a2, 0, 1, m, n, K).is_zero());
      CHECK(vertex_element(a2, 1, 0, m, n, K).is_zero());
    }
  CHECK(serre_element(a2, 0, 1, 0, -1, 1, K).is_zero());
  CHECK(serre_element(a2, 1, 0, 1, 0, 0, K).is_zero());
  CHECK_THROWS_AS(serre_element(a1, 0, 0, 0, 0, 0, K), Error);
  // a plain product of generators is not zero
  CHECK_FALSE(star(embed(a2, 0, 0, K), embed(a2, 1, 0, K)).is_zero());
}

TEST_CASE("coproduct counit components") {
  const int K = 3;
  const CartanData a1 = make_cartan("A1");
  const FOElement p = star(embed(a1, 0, 1, K), embed(a1, 0, -1, K));
  // split terms are grouped by right-leg monomial; with everything on one side they
  // must sum back to p
  FOElement acc = p.scaled(Q(0));
  for (const auto& t : coproduct_A(p, {0}, 10)) {
    CHECK(t.x.k == std::vector<int>{0});
    acc = acc + t.y.scaled(t.h * t.x.P.coeff({}));
  }
  CHECK(acc == p);
  const auto left = coproduct_A(p, {2}, 10);
  REQUIRE(left.size() == 1);
  CHECK(left[0].x.scaled(left[0].h * left[0].y.P.coeff({})) == p);
}

TEST_CASE("randomized shuffle checks") {
  const ShuffleReport r = check_shuffle(3, 2, 6, 5);
  CHECK(r.assoc_checked > 0);
  CHECK(r.assoc_failed == 0);
  CHECK(r.vertex_nonzero == 0);
  CHECK(r.serre_nonzero == 0);
  CHECK(r.passed());
}
