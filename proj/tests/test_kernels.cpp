#include "doctest.h"
#include "kernels.hpp"

using namespace qc;

namespace {

// Evaluate a gamma-polynomial at gamma_0 = c, gamma_{i>0} = 0.
Q at_constant(const GPoly& p, const Q& c) {
  Q acc = 0;
  for (const auto& [m, v] : p) {
    bool only0 = true;
    for (size_t i = 1; i < m.size(); ++i) only0 = only0 && m[i] == 0;
    if (!only0) continue;
    Q t = v;
    for (int k = 0; k < m[0]; ++k) t *= c;
    acc += t;
  }
  return acc;
}

Q qpow(const Q& b, int n) {
  Q r = 1;
  for (int i = 0; i < n; ++i) r *= b;
  return r;
}

}  // namespace

TEST_CASE("q_sigma matches a hand expansion of the rational kernel") {
  // (z - w + a)/(z - w - a), a = sigma hbar/2, in w << z:
  // the z^{-n-b} w^b hbar^n coefficient is sigma^n / 2^{n-1} * C(n-1+b, b), plus 1.
  const int K = 5, lo = -6, hi = 6;
  for (const Q s : {Q(1), Q(-2), Q(3)}) {
    const Frame fr = make_frame({"z", "w"}, {0, 1}, K, default_bound(K, hi, 2));
    const KernelFn q = q_sigma(fr, "z", "w", s);
    const Window win = fr.window(lo, hi);
    REQUIRE(q.certified_on(win));
    for (int ez = lo; ez <= hi; ++ez)
      for (int ew = lo; ew <= hi; ++ew) {
        HSeries want(K);
        if (ez == 0 && ew == 0) want[0] = 1;
        const int n = -ez - ew;
        if (ew >= 0 && n >= 1 && n < K) want[n] = qpow(s, n) / qpow(Q(2), n - 1) * binomial(Q(n - 1 + ew), ew);
        CHECK(q.coeff({ez, ew}) == want);
      }
  }
}

TEST_CASE("q_sigma^+ reduces to 1 + (sigma hbar/2)/(z - w)") {
  const int K = 4, hi = 6;
  const Q s = 2;
  const Frame fr = make_frame({"z", "w"}, {0, 1}, K, default_bound(K, hi, 2));
  const KernelFn qp = q_sigma_plus(fr, "z", "w", s);
  for (int ez = -hi; ez <= hi; ++ez)
    for (int ew = -hi; ew <= hi; ++ew) {
      HSeries want(K);
      if (ez == 0 && ew == 0) want[0] = 1;
      if (ew >= 0 && ez == -ew - 1) want[1] = s / 2;
      CHECK(qp.coeff({ez, ew}) == want);
    }
}

TEST_CASE("psi and phi at constant gamma are the tan and log-cos series") {
  // psi' = -1 - c psi^2  =>  psi = -tan(sqrt(c) s)/sqrt(c);  phi = -ln cos(sqrt(c) s)
  const PsiPhi pp = solve_psi_phi(8);
  for (const Q c : {Q(1), Q(2), qfrac(-1, 3)}) {
    CHECK(at_constant(pp.psi.c[1], c) == -1);
    CHECK(at_constant(pp.psi.c[3], c) == -c / 3);
    CHECK(at_constant(pp.psi.c[5], c) == -2 * c * c / 15);
    CHECK(at_constant(pp.psi.c[7], c) == -17 * c * c * c / 315);
    for (int n : {0, 2, 4, 6}) CHECK(at_constant(pp.psi.c[static_cast<size_t>(n)], c) == 0);
    CHECK(at_constant(pp.phi.c[2], c) == c / 2);
    CHECK(at_constant(pp.phi.c[4], c) == c * c / 12);
    CHECK(at_constant(pp.phi.c[6], c) == c * c * c / 45);
    CHECK(at_constant(pp.phi.c[1], c) == 0);
  }
  CHECK_THROWS_AS(solve_psi_phi(1), Error);
}

TEST_CASE("derivation on gamma polynomials") {
  const GMono g0{1, 0, 0}, g1{0, 1, 0}, g0g1{1, 1, 0}, g1sq{0, 2, 0}, g0g2{1, 0, 1};
  // D(gamma_0 gamma_1) = gamma_1^2 + gamma_0 gamma_2
  CHECK(gpoly_derivation(GPoly{{g0g1, Q(1)}}, 3) == GPoly{{g1sq, Q(1)}, {g0g2, Q(1)}});
  CHECK(gpoly_derivation(GPoly{{g0, Q(5)}}, 3) == GPoly{{g1, Q(5)}});
  CHECK(gpoly_mul(GPoly{{g0, Q(2)}}, GPoly{{g1, Q(3)}}) == GPoly{{g0g1, Q(6)}});
}

TEST_CASE("rational curve: gamma underline vanishes and the kernel checks hold") {
  const GammaUnderline g = gamma_underline(4, 6);
  CHECK(g.one_var.is_zero());
  CHECK(g.in_R_tensor_R);
  CHECK(check_delta(4, -6, 6).holds);

  const auto curve = make_curve("rational", 4, 6);
  for (const Q s : {Q(-2), Q(1), Q(4)}) {
    const KernelChecks k = check_kernels(4, -6, 6, s, *curve);
    CHECK(k.q_matches_closed);
    CHECK(k.inverse_identity);
    CHECK(k.i_sigma_is_one);
    CHECK(k.i_sigma_unit);
    CHECK(k.giov_identity);
    CHECK(k.q_plus_factorization);
    CHECK(k.tau_constraint);
    CHECK(k.lemma_alpha_shift);
    CHECK(k.lemma_green_regular);
  }
}

TEST_CASE("operator series of the symmetric difference") {
  // (e^{a d} - e^{-a d})/d = 2a + a^3 d^2/3 + ..., a = sigma hbar/2
  const auto ops = op_symmetric(4, Q(2));
  CHECK(ops[0] == HSeries::monomial(4, 1, Q(2)));
  CHECK(ops[1].is_zero());
  CHECK(ops[2] == HSeries::monomial(4, 3, qfrac(1, 3)));
}
