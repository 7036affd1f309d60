#include "serre.hpp"

#include <map>
#include <tuple>

namespace qc {

namespace {

Frame exact_frame(std::vector<std::string> vars, int K) {
  std::vector<int> rank(vars.size());
  for (size_t i = 0; i < rank.size(); ++i) rank[i] = static_cast<int>(i);
  return make_frame(std::move(vars), std::move(rank), K, KernelFn::kExact);
}

bool same(const KernelFn& a, const KernelFn& b) { return (a - b).poly().is_zero(); }

// exact two-variable swap f(x, y) -> f(y, x), staying in the same frame
KernelFn sw(const KernelFn& f) { return f.swap21().with_region(f.rank()); }

// f in c + hbar(...), every hbar^0 coefficient constant and equal to c
bool leading_is(const KernelFn& f, const Q& c) {
  const Exps zero(static_cast<size_t>(f.nvars()), 0);
  if (f.coeff(zero)[0] != c) return false;
  for (const auto& [e, v] : f.poly().terms())
    if (e != zero && sgn(v[0]) != 0) return false;
  return true;
}

bool no_negative(const KernelFn& f) { return f.is_exact() && !f.has_negative_exponent(); }

// exact K+1 kernel divided by hbar, returned at order K in `fr`
KernelFn hdiv(const KernelFn& f, const Frame& fr) {
  Poly p(f.nvars(), fr.K);
  for (const auto& [e, c] : f.poly().terms()) p.add_term(e, c.div_hbar_power(1).truncated(fr.K));
  return KernelFn::from_poly(fr.vars, fr.rank, p);
}

}  // namespace

KernelFn compose(const KernelFn& f, const Frame& target, const std::vector<Arg>& args) {
  require(f.is_exact(), ErrorKind::WindowLoss, "compose needs an exact Laurent polynomial");
  require(static_cast<int>(args.size()) == f.nvars(), ErrorKind::InvalidArgument, "compose: argument count mismatch");
  KernelFn g = f;
  std::vector<std::string> names;
  for (size_t i = 0; i < args.size(); ++i) {
    if (sgn(args[i].shift) != 0) g = g.shift_subst(f.vars()[i], args[i].shift);
    names.push_back(args[i].var);
  }
  return target.lift(g, names);
}

GlueResult glue_lemma(const KernelFn& f, const KernelFn& g, const Q& s, const Q& sp) {
  require(f.nvars() == 2 && g.nvars() == 2, ErrorKind::InvalidArgument, "glue_lemma: f and g take two variables");
  const int K = std::min(f.K(), g.K());
  const Frame one = exact_frame({"t"}, K);
  const Frame two = exact_frame({"x", "y"}, K);
  const Frame H = exact_frame({"z1", "z2", "z3"}, K);
  GlueResult r;
  r.compatible = same(compose(f, one, {{"t", 0}, {"t", s + sp}}), compose(g, one, {{"t", 0}, {"t", s}}));
  require(r.compatible, ErrorKind::Invariant, "glue_lemma: f and g disagree on the common diagonal");
  // de-shifted problem: h0(z, z, w) = f~(z, w), h0(z, w, w) = g~(z, w)
  const KernelFn ft = compose(f, H, {{"z2", 0}, {"z3", s + sp}});
  const KernelFn g13 = compose(g, H, {{"z1", 0}, {"z3", s}});
  const KernelFn g23 = compose(g, H, {{"z2", 0}, {"z3", s}});
  r.h = compose(g13 + ft - g23, H, {{"z1", 0}, {"z2", -s}, {"z3", -(s + sp)}});
  r.sections_ok = same(compose(r.h, two, {{"x", 0}, {"x", s}, {"y", 0}}), two.lift(f, {"x", "y"})) &&
                  same(compose(r.h, two, {{"x", 0}, {"y", 0}, {"y", sp}}), two.lift(g, {"x", "y"}));
  return r;
}

SerreRatios build_rhs_ratios(const CurveConfig& curve) {
  const int K = curve.K();
  const Frame P = exact_frame({"x", "y"}, K);
  const Frame P1 = exact_frame({"x", "y"}, K + 1);
  const GammaUnderline gu = gamma_underline(K, 4), gu1 = gamma_underline(K + 1, 4);
  const PsiPhi pp = solve_psi_phi(K), pp1 = solve_psi_phi(K + 1);
  auto psi = [&](const Q& s) { return hdiv(eval_gamma(pp1.psi, s, gu1.two_var, P1, "x", "y"), P); };
  auto phi = [&](const Q& s) { return eval_gamma(pp.phi, s, gu.two_var, P, "x", "y"); };
  auto tau = [&](const Q& s) { return tau_sigma(P, s, curve).tau; };

  SerreRatios R;
  R.psi2 = psi(2);
  R.psim2 = psi(-2);
  R.psi4 = psi(4);
  const KernelFn phi2 = phi(2), phim2 = phi(-2), phi4 = phi(4);
  const KernelFn t2 = tau(2), tm1 = tau(-1);
  const KernelFn tsh = tm1.shift_subst("x", -1);  // (q^{-d} (x) id) tau_{-1}
  const KernelFn dpm = R.psi2 - R.psim2;          // (psi(2h) - psi(-2h)) / hbar

  R.R1 = (-t2 - tsh + phi2).exp_series() * R.psim2 * dpm.inverse_series();
  R.R2 = (-tsh + phim2).exp_series() * R.psi2 * (-dpm).inverse_series();
  R.R3 = sw((-tsh + phim2).exp_series() * R.psi2 * (-dpm).inverse_series());
  R.R4 = sw((-t2 - tsh + phi2).exp_series() * R.psim2 * dpm.inverse_series());
  R.R5 = -sw((tm1.shift_subst("x", 3) + phi4 - phi2).exp_series() * R.psi2 * R.psi4.inverse_series());
  R.R6 = sw((-tm1.shift_subst("x", 1) - phi2).exp_series() * (R.psi2 - R.psi4) * R.psi4.inverse_series());

  R.u = tsh.exp_series() * (-phim2).exp_series();
  R.uprime = (t2 + tsh).exp_series() * (-phi2).exp_series();
  R.rhs1 = -(R.u * R.uprime.inverse_series()) * R.psim2 * R.psi2.inverse_series();
  R.rhs2 = -(R.psi2 * R.psim2.inverse_series()) * R.uprime * R.u.inverse_series();
  return R;
}

KernelFn reindexed_sum(const std::vector<OrderedTerm>& terms, const Frame& fr, int a, const Q& s) {
  const int n = static_cast<int>(fr.vars.size());
  std::vector<int> target_pos(static_cast<size_t>(n));
  for (int l = 0; l < n; ++l) target_pos[static_cast<size_t>(l)] = n - 1 - l;  // w_m ... w_1 z
  std::map<std::tuple<int, int>, KernelFn> cache;
  auto q = [&](int x, int y) -> const KernelFn& {
    auto key = std::make_tuple(x, y);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    const Q sig = (x == 0 || y == 0) ? s * a : s * 2;
    return cache.emplace(key, q_sigma(fr, fr.vars[static_cast<size_t>(x)], fr.vars[static_cast<size_t>(y)], sig))
        .first->second;
  };
  KernelFn acc = fr.zero();
  bool first = true;
  for (const auto& t : terms) {
    KernelFn prod = t.coeff;
    for (size_t p = 0; p < t.order.size(); ++p)
      for (size_t r = p + 1; r < t.order.size(); ++r) {
        const int x = t.order[p], y = t.order[r];
        if (target_pos[static_cast<size_t>(x)] > target_pos[static_cast<size_t>(y)]) prod = prod * q(x, y);
      }
    acc = first ? prod : acc + prod;
    first = false;
  }
  return acc;
}

bool SerreReport::passed() const {
  return ratios_leading && ratio_consistency && ratio_conditions && compat2 && compat2_glue && glue_alpha &&
         t_diag_one && glue_alphap && wronskian_unit && gammap_polynomial && gammap_regular && memberships &&
         main_identity && main_identity_scaled && reindex_identity && kawa && kita && shira && divisibility;
}

SerreReport run_serre(const CurveConfig& curve, int lo, int hi) {
  const int K = curve.K();
  SerreReport rep;
  rep.K = K;
  rep.lo = lo;
  rep.hi = hi;
  const SerreRatios R = build_rhs_ratios(curve);
  const Frame P = exact_frame({"x", "y"}, K);
  const Frame W1 = exact_frame({"x"}, K);
  const Frame F3x = exact_frame({"z", "w1", "w2"}, K);

  rep.ratios_leading = leading_is(R.R1, Q(-1, 2)) && leading_is(R.R2, Q(-1, 2)) && leading_is(R.R3, Q(-1, 2)) &&
                       leading_is(R.R4, Q(-1, 2)) && leading_is(R.R5, Q(-1, 2)) && leading_is(R.R6, Q(-1, 2));
  rep.ratio_consistency = same(R.rhs2, R.R2 * R.R1.inverse_series()) && same(sw(R.rhs1), R.R4 * R.R3.inverse_series());

  {
    const KernelFn tm1 = tau_sigma(P, -1, curve).tau;
    const PsiPhi pp = solve_psi_phi(K);
    const GammaUnderline gu = gamma_underline(K, 4);
    const KernelFn phi2 = eval_gamma(pp.phi, 2, gu.two_var, P, "x", "y");
    const KernelFn phi4 = eval_gamma(pp.phi, 4, gu.two_var, P, "x", "y");
    const KernelFn lhs2 = -(tm1.shift_subst("x", 3).exp_series() * (phi4 - phi2).exp_series() * R.psi2 *
                            R.psi4.inverse_series());
    const KernelFn rhs2 = R.u.inverse_series() * R.psi2 * (R.psim2 - R.psi2).inverse_series();
    const KernelFn lhs = compose(lhs2, W1, {{"x", 0}, {"x", 0}});
    const KernelFn rhs = compose(rhs2, W1, {{"x", 1}, {"x", 3}});
    rep.compat2 = same(lhs, rhs);
    rep.compat2_glue = same(compose(R.R3, W1, {{"x", 3}, {"x", 1}}), compose(R.R5, W1, {{"x", 0}, {"x", 0}}));
  }

  SerreSystem& S = rep.sys;
  S.beta = F3x.constant(-2);
  S.gamma = compose(R.R6, F3x, {{"z", 0}, {"w2", -1}}).scaled(Q(-2));
  {
    const KernelFn ut = R.R3 + P.constant(Q(1, 2)), vt = R.R5 + P.constant(Q(1, 2));
    const KernelFn f = compose(ut, P, {{"y", 0}, {"x", 1}}).scaled(Q(-2));
    const KernelFn g = compose(vt, P, {{"x", 0}, {"y", -1}}).scaled(Q(-2));
    const GlueResult gl = glue_lemma(f, g, 1, 2);
    rep.glue_alpha = gl.compatible && gl.sections_ok;
    S.alpha = F3x.constant(1) + compose(gl.h, F3x, {{"z", 0}, {"w2", 0}, {"w1", 0}});
  }
  rep.t_diag_one = same(compose(R.rhs2, W1, {{"x", 0}, {"x", 0}}), W1.constant(1));
  {
    const KernelFn f = compose(S.alpha, P, {{"x", -1}, {"x", 0}, {"y", 0}}) * R.rhs2;
    const KernelFn g = compose(S.alpha, P, {{"y", 0}, {"x", 0}, {"y", 1}}) * compose(R.rhs1, P, {{"y", 1}, {"x", 0}});
    const GlueResult gl = glue_lemma(f, g, -1, 1);
    rep.glue_alphap = gl.compatible && gl.sections_ok;
    S.alphap = compose(gl.h, F3x, {{"w1", 0}, {"z", 0}, {"w2", 0}});
  }
  S.betap = S.alphap * compose(R.R2, F3x, {{"w1", 0}, {"w2", 0}}).inverse_series();

  {
    // the six defining ratio conditions, read back from the synthesized system
    auto at_w1 = [&](const KernelFn& f) { return compose(f, P, {{"x", -1}, {"x", 0}, {"y", 0}}); };
    auto at_w2 = [&](const KernelFn& f) { return compose(f, P, {{"y", -1}, {"x", 0}, {"y", 0}}); };
    auto at_3 = [&](const KernelFn& f) { return compose(f, P, {{"x", 0}, {"y", 3}, {"y", 1}}); };
    const KernelFn bp1 = at_w1(S.betap).inverse_series(), b2 = at_w2(S.beta).inverse_series();
    const KernelFn b3 = at_3(S.beta).inverse_series();
    rep.ratio_conditions = same(at_w1(S.alpha) * bp1, R.R1) && same(at_w1(S.alphap) * bp1, R.R2) &&
                           same(at_w2(S.alpha) * b2, R.R3) && same(at_w2(S.alphap) * b2, R.R4) &&
                           same(at_3(S.alpha) * b3, R.R5) && same(at_3(S.gamma) * b3, R.R6);
  }

  {
    // u'v - uv' with v = -u psi(-2h), v' = -u' psi(2h); everything divided by hbar once
    const KernelFn v = -(R.u * R.psim2), vp = -(R.uprime * R.psi2);
    const KernelFn wr = R.uprime * v - R.u * vp;
    const Exps zero{0, 0};
    bool unit = sgn(wr.coeff(zero)[0]) != 0;
    for (const auto& [e, c] : wr.poly().terms())
      if (e != zero && sgn(c[0]) != 0) unit = false;
    rep.wronskian_unit = unit && same(wr, R.u * R.uprime * (R.psi2 - R.psim2));
  }

  // identity and gamma' in z >> w1 >> w2
  const int guard = certify_guard(K);
  const long E3 = 3L * std::max(hi, -lo) + 1 + guard + 3L * K + 4;
  const Frame F3 = make_frame({"z", "w1", "w2"}, {0, 1, 2}, K, E3);
  const Window win = F3.window(lo, hi);
  auto lift3 = [&](const KernelFn& f) { return F3.lift(f, {"z", "w1", "w2"}); };
  const KernelFn al = lift3(S.alpha), be = lift3(S.beta), ga = lift3(S.gamma), alp = lift3(S.alphap),
                 bep = lift3(S.betap);
  {
    const KernelFn qa = q_sigma(F3, "z", "w1", -2), qb = q_sigma(F3, "z", "w2", -2), qc = q_sigma(F3, "w1", "w2", 4);
    const KernelFn Pbc = qb * qc, Pab = qa * qb, Pabc = qa * Pbc;
    const KernelFn sum = al * Pabc + be * Pbc + ga * qc + alp * Pab + bep * qa;
    KernelFn gp;
    rep.gammap_polynomial = (-sum).certify_polynomial(guard, &gp);
    if (rep.gammap_polynomial) {
      S.gammap = F3x.lift(gp, {"z", "w1", "w2"});
      rep.gammap_regular = no_negative(S.gammap);
      rep.main_dev = deviation_on(sum + lift3(S.gammap), win);
      rep.main_identity = rep.main_dev.zero();
    }
  }
  if (rep.gammap_polynomial) {
    auto lift_half = [&](const KernelFn& f) { return lift3(f).scale_hbar(Q(1, 2)); };
    const KernelFn qa = q_sigma(F3, "z", "w1", -1), qb = q_sigma(F3, "z", "w2", -1), qc = q_sigma(F3, "w1", "w2", 2);
    const KernelFn Pbc = qb * qc;
    const KernelFn sum = lift_half(S.alpha) * (qa * Pbc) + lift_half(S.beta) * Pbc + lift_half(S.gamma) * qc +
                         lift_half(S.alphap) * (qa * qb) + lift_half(S.betap) * qa + lift_half(S.gammap);
    rep.main_identity_scaled = deviation_on(sum, win).zero();

    const std::vector<OrderedTerm> terms = {
        {{0, 1, 2}, al}, {{1, 0, 2}, be}, {{1, 2, 0}, ga}, {{0, 2, 1}, alp}, {{2, 0, 1}, bep}, {{2, 1, 0}, lift3(S.gammap)}};
    rep.reindex_identity = deviation_on(reindexed_sum(terms, F3, -1, 2), win).zero();
  }

  auto unit_plus = [&](const KernelFn& f, const Q& c) { return f.is_exact() && no_negative(f) && leading_is(f, c); };
  rep.memberships = unit_plus(S.alpha, 1) && unit_plus(S.gamma, 1) && unit_plus(S.alphap, 1) &&
                    unit_plus(S.beta, -2) && unit_plus(S.betap, -2) && rep.gammap_polynomial && unit_plus(S.gammap, 1);

  // regularity conditions at the three pole loci
  const long E2 = default_bound(K, std::max(hi, -lo), 2);
  {
    const Frame W = make_frame({"w1", "w2"}, {0, 1}, K, E2);
    const Window w2 = W.window(lo, hi);
    auto at = [&](const KernelFn& f, const Q& zs) { return compose(f, W, {{"w1", zs}, {"w1", 0}, {"w2", 0}}); };
    const KernelFn qm = q_sigma(W, "w1", "w2", -2).shift_subst("w1", -1);
    const KernelFn q4 = q_sigma(W, "w1", "w2", 4);
    const KernelFn kawa = at(S.alpha, -1) * qm * q4 + at(S.alphap, -1) * qm + at(S.betap, -1);
    rep.kawa = deviation_on(kawa, w2).zero();

    auto at2 = [&](const KernelFn& f) { return compose(f, W, {{"w2", -1}, {"w1", 0}, {"w2", 0}}); };
    // q_{-2}(x, w1) with x << w1 is 1/q_{-2}(w1, x); then x = w2 - hbar
    const KernelFn qx = q_sigma(W, "w1", "w2", -2).inverse_series().shift_subst("w2", -1);
    const KernelFn q4i = q4.inverse_series();
    const KernelFn kita = at2(S.alpha) * qx + at2(S.beta) + at2(S.alphap) * qx * q4i;
    rep.kita = deviation_on(kita, w2).zero();
  }
  {
    const Frame Z = make_frame({"z", "w2"}, {0, 1}, K, E2);
    auto at = [&](const KernelFn& f) { return compose(f, Z, {{"z", 0}, {"w2", 3}, {"w2", 1}}); };
    const KernelFn base = q_sigma(Z, "z", "w2", -2);
    const KernelFn q3 = base.shift_subst("w2", 3), q1 = base.shift_subst("w2", 1);
    const KernelFn shira = at(S.alpha) * q3 * q1 + at(S.beta) * q1 + at(S.gamma);
    rep.shira = deviation_on(shira, Z.window(lo, hi)).zero();
  }

  {
    // exact division by (x - y) of functions vanishing on the diagonal
    bool ok = true;
    const KernelFn d1 = S.alpha - compose(S.alpha, F3x, {{"w1", 0}, {"w1", 0}, {"w2", 0}});
    const Poly q1 = d1.poly().divide_linear(0, 1);
    ok = ok && (Poly::linear(3, K, 0, 1, 0) * q1 == d1.poly());
    const Poly cube = Poly::monomial(2, K, {3, 0}, Q(1)) - Poly::monomial(2, K, {0, 3}, Q(1));
    const Poly p2 = cube * (Poly::constant(2, K, HSeries::constant(K, 1)) + Poly::monomial(2, K, {1, 1}, HSeries::monomial(K, 1, 1)));
    const Poly q2 = p2.divide_linear(0, 1);
    ok = ok && (Poly::linear(2, K, 0, 1, 0) * q2 == p2);
    rep.divisibility = ok;
  }
  return rep;
}

}  // namespace qc
