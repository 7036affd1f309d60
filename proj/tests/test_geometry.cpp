#include "doctest.h"
#include "geometry.hpp"

using namespace qc;

TEST_CASE("rational curve: dual mode bases under the residue pairing") {
  const RationalCurve c(4, 6);
  for (int a = 0; a <= 6; ++a)
    for (int b = 0; b <= 6; ++b) {
      const HSeries p = c.pair(c.r_mode(a), c.lambda_mode(b));
      CHECK(p == HSeries::constant(4, a == b ? 1 : 0));
      // both sides isotropic
      CHECK(c.pair(c.r_mode(a), c.r_mode(b)).is_zero());
      CHECK(c.pair(c.lambda_mode(a), c.lambda_mode(b)).is_zero());
    }
}

TEST_CASE("rational curve: projections and derivation") {
  const RationalCurve c(3, 5);
  ModeExp f = ModeExp::monomial(3, 2) + ModeExp::monomial(3, -3);
  CHECK(c.project(f, Side::R) == ModeExp::monomial(3, 2));
  CHECK(c.project(f, Side::Lambda) == ModeExp::monomial(3, -3));
  CHECK(c.derivation(ModeExp::monomial(3, 3)) == ModeExp::monomial(3, 2, Q(3)));
  const GeometryChecks g = check_geometry(c);
  CHECK(g.dual_basis);
  CHECK(g.lagrangian);
  CHECK(g.derivation_preserves_R);
  CHECK(g.pairing_invariant);
}

TEST_CASE("shift z -> z + c hbar on a monomial") {
  // z^2 -> z^2 + 2c hbar z + c^2 hbar^2
  const ModeExp s = ModeExp::monomial(3, 2).shifted(Q(3));
  CHECK(s.c.at(2) == HSeries::constant(3, 1));
  CHECK(s.c.at(1) == HSeries::monomial(3, 1, Q(6)));
  CHECK(s.c.at(0) == HSeries::monomial(3, 2, Q(9)));
}

TEST_CASE("curve factory") {
  CHECK(make_curve("rational", 3, 4)->name() == "rational");
  CHECK_THROWS_AS(make_curve("elliptic", 3, 4), Error);
}
