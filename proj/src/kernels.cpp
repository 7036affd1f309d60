#include "kernels.hpp"

#include <algorithm>

namespace qc {

int Frame::idx(const std::string& v) const {
  for (size_t i = 0; i < vars.size(); ++i)
    if (vars[i] == v) return static_cast<int>(i);
  fail(ErrorKind::InvalidArgument, "frame has no variable " + v);
}

KernelFn Frame::zero() const { return KernelFn(vars, rank, K); }

KernelFn Frame::constant(const HSeries& c) const { return KernelFn::constant(vars, rank, c.truncated(K)); }

KernelFn Frame::constant(const Q& c) const { return constant(HSeries::constant(K, c)); }

KernelFn Frame::linear(const std::string& a, const std::string& b, const Q& c) const {
  return KernelFn::from_poly(vars, rank, Poly::linear(static_cast<int>(vars.size()), K, idx(a), idx(b), c));
}

KernelFn Frame::var(const std::string& a, const Q& c) const {
  return KernelFn::from_poly(vars, rank, Poly::linear(static_cast<int>(vars.size()), K, idx(a), -1, c));
}

KernelFn Frame::inv_linear(const std::string& a, const std::string& b, const Q& c) const {
  const int ia = idx(a), ib = idx(b);
  if (rank[static_cast<size_t>(ia)] < rank[static_cast<size_t>(ib)])
    return KernelFn::inverse_linear(vars, rank, K, a, b, c, E);
  return -KernelFn::inverse_linear(vars, rank, K, b, a, -c, E);
}

KernelFn Frame::lift(const KernelFn& f, const std::vector<std::string>& as) const {
  require(f.is_exact(), ErrorKind::RegionMismatch, "lift needs an exact Laurent polynomial");
  require(static_cast<int>(as.size()) == f.nvars(), ErrorKind::InvalidArgument, "lift: name count mismatch");
  std::vector<int> mapping;
  for (const auto& n : as) mapping.push_back(idx(n));
  Poly p = f.poly().permuted(static_cast<int>(vars.size()), mapping).truncated(std::min(K, f.K()));
  return KernelFn::from_poly(vars, rank, p);
}

Frame make_frame(std::vector<std::string> vars, std::vector<int> rank, int K, long E) {
  Frame f;
  f.vars = std::move(vars);
  f.rank = std::move(rank);
  f.K = K;
  f.E = E;
  KernelFn probe(f.vars, f.rank, K);  // validates the region
  return f;
}

int certify_guard(int K) { return std::max(K + 2, 8); }

long default_bound(int K, int hi, int nvars) {
  const long top = static_cast<long>(std::max(hi, 0)) * nvars * (nvars - 1) / 2;
  return top + 1 + 2L * K * K + 16 + certify_guard(K);
}

std::vector<HSeries> op_exp_difference(int K, const Q& a, const Q& b) {
  std::vector<HSeries> ops;
  Q ak = a, bk = b;  // a^{k+1}, b^{k+1}
  for (int k = 0; k + 1 < K; ++k) {
    ops.push_back(HSeries::monomial(K, k + 1, (ak - bk) / factorial(k + 1)));
    ak *= a;
    bk *= b;
  }
  return ops;
}

std::vector<HSeries> op_symmetric(int K, const Q& sigma) { return op_exp_difference(K, sigma / 2, -sigma / 2); }

KernelFn green_kernel(const Frame& fr, const std::string& z, const std::string& w) {
  require(fr.rank[static_cast<size_t>(fr.idx(z))] > fr.rank[static_cast<size_t>(fr.idx(w))],
          ErrorKind::RegionMismatch, "G is expanded in z << w");
  return fr.inv_linear(w, z, 0);
}

KernelFn green_kernel21(const Frame& fr, const std::string& z, const std::string& w) {
  require(fr.rank[static_cast<size_t>(fr.idx(w))] > fr.rank[static_cast<size_t>(fr.idx(z))],
          ErrorKind::RegionMismatch, "G^(21) is expanded in w << z");
  return fr.inv_linear(z, w, 0);
}

GammaUnderline gamma_underline(int K, int window_hi) {
  const Frame fr = make_frame({"z", "w"}, {1, 0}, K, default_bound(K, window_hi, 2));
  const KernelFn G = green_kernel(fr, "z", "w");
  const KernelFn raw = G.diff("z") - G * G;
  GammaUnderline g;
  KernelFn cert;
  const bool ok = raw.certify_polynomial(certify_guard(K), &cert);
  g.in_R_tensor_R = ok && !cert.has_negative_exponent();
  require(g.in_R_tensor_R, ErrorKind::Invariant, "d_z G - G^2 is not in R (x) R");
  g.two_var = cert;
  g.one_var = cert.substitute_var("w", "z", 0).poly();
  return g;
}

GPoly gpoly_add(const GPoly& a, const GPoly& b, const Q& sb) {
  GPoly r = a;
  for (const auto& [m, c] : b) {
    Q& v = r[m];
    v += sb * c;
    if (sgn(v) == 0) r.erase(m);
  }
  return r;
}

GPoly gpoly_mul(const GPoly& a, const GPoly& b) {
  GPoly r;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      GMono m = ma;
      for (size_t i = 0; i < m.size(); ++i) m[i] += mb[i];
      Q& v = r[m];
      v += ca * cb;
      if (sgn(v) == 0) r.erase(m);
    }
  return r;
}

GPoly gpoly_derivation(const GPoly& a, int ngam) {
  GPoly r;
  for (const auto& [m, c] : a)
    for (int i = 0; i < ngam; ++i) {
      if (m[static_cast<size_t>(i)] == 0) continue;
      require(i + 1 < ngam, ErrorKind::Domain, "gamma index exceeds truncation");
      GMono n = m;
      n[static_cast<size_t>(i)] -= 1;
      n[static_cast<size_t>(i) + 1] += 1;
      Q& v = r[n];
      v += c * m[static_cast<size_t>(i)];
      if (sgn(v) == 0) r.erase(n);
    }
  return r;
}

PsiPhi solve_psi_phi(int K) {
  require(K >= 2, ErrorKind::InvalidArgument, "solve_psi_phi needs K >= 2");
  const int ng = K;
  PsiPhi pp{GammaSeries(K, ng), GammaSeries(K, ng)};
  GMono one(static_cast<size_t>(ng), 0), g0 = one;
  g0[0] = 1;
  const GPoly unit{{one, Q(1)}}, gamma0{{g0, Q(1)}};
  auto& psi = pp.psi.c;
  auto& phi = pp.phi.c;
  for (int n = 1; n < K; ++n) {
    GPoly sq;
    for (int i = 0; i < n; ++i) sq = gpoly_add(sq, gpoly_mul(psi[static_cast<size_t>(i)], psi[static_cast<size_t>(n - 1 - i)]));
    GPoly rhs = gpoly_derivation(psi[static_cast<size_t>(n - 1)], ng);
    if (n == 1) rhs = gpoly_add(rhs, unit, -1);
    rhs = gpoly_add(rhs, gpoly_mul(gamma0, sq), -1);
    for (auto& [m, c] : rhs) c /= n;
    psi[static_cast<size_t>(n)] = rhs;

    GPoly rp = gpoly_add(gpoly_derivation(phi[static_cast<size_t>(n - 1)], ng),
                         gpoly_mul(gamma0, psi[static_cast<size_t>(n - 1)]), -1);
    for (auto& [m, c] : rp) c /= n;
    phi[static_cast<size_t>(n)] = rp;
  }
  return pp;
}

KernelFn eval_gamma(const GammaSeries& g, const Q& sigma, const KernelFn& gamma2, const Frame& fr,
                    const std::string& x, const std::string& y) {
  require(gamma2.nvars() == 2 && gamma2.is_exact(), ErrorKind::InvalidArgument,
          "eval_gamma: gamma must be an exact two-variable polynomial");
  const int K = fr.K;
  std::vector<KernelFn> d;  // d_z^i gamma, lifted to (x, y)
  KernelFn cur = gamma2;
  for (int i = 0; i < g.ngam; ++i) {
    d.push_back(fr.lift(cur, {x, y}));
    cur = cur.diff(gamma2.vars()[0]);
  }
  KernelFn acc = fr.zero();
  Q sn = 1;
  for (int n = 0; n < std::min(K, g.K); ++n, sn *= sigma) {
    for (const auto& [m, c] : g.c[static_cast<size_t>(n)]) {
      KernelFn t = fr.constant(HSeries::monomial(K, n, c * sn));
      for (size_t i = 0; i < m.size(); ++i)
        for (int e = 0; e < m[i]; ++e) t = t * d[i];
      acc = acc + t;
    }
  }
  return acc;
}

TauReport tau_sigma(const Frame& fr, const Q& sigma, const CurveConfig& curve) {
  TauReport r;
  r.tau = fr.zero();
  // constraint: tau + tau^(21) + sum_i r^i (x) (op lambda_i)_R = 0; the mode sum is zero
  // exactly when every projected image vanishes, since the r^i are independent
  const auto ops = op_symmetric(curve.K(), sigma);
  bool proj_zero = true;
  for (int i = 0; i <= curve.max_mode(); ++i) {
    const ModeExp img = curve.lambda_mode(i).apply_op(ops);
    if (!curve.project(img, Side::R).is_zero()) proj_zero = false;
    ++r.modes_checked;
  }
  const bool sym_zero = (r.tau.nvars() != 2) || (r.tau + r.tau.swap21().with_region(r.tau.rank())).poly().is_zero();
  r.constraint_holds = proj_zero && sym_zero;
  return r;
}

KernelFn q_sigma(const Frame& fr, const std::string& x, const std::string& y, const Q& sigma) {
  const KernelFn G21 = green_kernel21(fr, x, y);
  const KernelFn L = G21.diff_op(x, op_symmetric(fr.K, sigma));
  return L.exp_series();  // tau_sigma = 0
}

KernelFn q_sigma_closed(const Frame& fr, const std::string& x, const std::string& y, const Q& sigma) {
  return fr.linear(x, y, sigma / 2) * fr.inv_linear(x, y, -sigma / 2);
}

KernelFn q_sigma_plus(const Frame& fr, const std::string& x, const std::string& y, const Q& sigma) {
  const KernelFn G21 = green_kernel21(fr, x, y);
  return G21.diff_op(x, op_exp_difference(fr.K, sigma / 2, 0)).exp_series();  // alpha_sigma = 0
}

KernelFn prolong(const KernelFn& f, const std::vector<LinearFactor>& poles, const Frame& target) {
  const int n = f.nvars();
  KernelFn g = f;
  for (const auto& p : poles) {
    const Poly lin = Poly::linear(n, f.K(), f.index_of(p.a), f.index_of(p.b), p.c);
    g = g * KernelFn::from_poly(f.vars(), f.rank(), lin);
  }
  KernelFn cert;
  require(g.certify_polynomial(certify_guard(f.K()), &cert), ErrorKind::WindowLoss,
          "prolong: numerator is not certified polynomial");
  KernelFn r = target.lift(cert, f.vars());
  for (const auto& p : poles) r = r * target.inv_linear(p.a, p.b, p.c);
  return r;
}

KernelChecks check_kernels(int K, int lo, int hi, const Q& sigma, const CurveConfig& curve) {
  KernelChecks ck;
  ck.sigma = sigma;
  const long E = default_bound(K, std::max(hi, -lo), 2);
  const Frame wz = make_frame({"z", "w"}, {0, 1}, K, E);  // w << z
  const Frame zw = make_frame({"z", "w"}, {1, 0}, K, E);  // z << w
  const Window win = wz.window(lo, hi);
  const int guard = certify_guard(K);

  ck.q = q_sigma(wz, "z", "w", sigma);
  ck.q_matches_closed = deviation_on(ck.q - q_sigma_closed(wz, "z", "w", sigma), win).zero();

  // q(z,w) continued into z << w times q(w,z) there
  const KernelFn q_cont = prolong(ck.q, {{"z", "w", -sigma / 2}}, zw);
  const KernelFn q_wz = ck.q.swap21();
  ck.inverse_identity = deviation_on(q_cont * q_wz - zw.constant(1), win).zero();

  const KernelFn iraw = ck.q * wz.linear("z", "w", -sigma / 2) * wz.inv_linear("z", "w", sigma / 2);
  ck.i_sigma_unit = iraw.certify_polynomial(guard, &ck.i_sigma);
  if (ck.i_sigma_unit) {
    const KernelFn rest = ck.i_sigma - wz.constant(1);
    for (const auto& [e, c] : rest.poly().terms())
      if (c.valuation() < 1) ck.i_sigma_unit = false;
    ck.i_sigma_is_one = rest.poly().is_zero();
  }

  const GammaUnderline gu = gamma_underline(K, std::max(hi, -lo));
  const PsiPhi pp = solve_psi_phi(K);
  {
    const KernelFn G21 = green_kernel21(wz, "z", "w");
    const KernelFn lhs = G21.diff_op("z", op_exp_difference(K, 1, 0));
    const KernelFn psi = eval_gamma(pp.psi, 1, gu.two_var, wz, "z", "w");
    const KernelFn phi = eval_gamma(pp.phi, 1, gu.two_var, wz, "z", "w");
    const KernelFn rhs = -phi + (wz.constant(1) - G21 * psi).log_series();
    ck.giov_identity = deviation_on(lhs - rhs, win).zero();
  }

  {
    const KernelFn qp = q_sigma_plus(wz, "z", "w", sigma);
    const KernelFn qp_rev = q_sigma_plus(zw, "w", "z", sigma);  // q+(w,z) in z << w
    const KernelFn qp_rev_cont = prolong(qp_rev, {{"w", "z", 0}}, wz);
    ck.q_plus_factorization = deviation_on(qp - ck.q * qp_rev_cont, win).zero();
  }

  {
    bool ok = true;
    const KernelFn q2 = q_sigma(wz, "z", "w", 2 * sigma);
    const KernelFn zs = wz.var("z", -sigma), w1 = wz.var("w");
    for (int power = 1; power <= 2; ++power) {
      KernelFn a = zs, b = w1;
      if (power == 2) {
        a = zs * zs;
        b = w1 * w1;
      }
      KernelFn cert;
      if (!((a - b) * q2).certify_polynomial(guard, &cert) || cert.has_negative_exponent()) ok = false;
    }
    ck.lemma_alpha_shift = ok;
  }

  {
    bool ok = true;
    const KernelFn G = green_kernel(zw, "z", "w");
    const KernelFn z = zw.var("z"), w = zw.var("w");
    for (int power = 1; power <= 2; ++power) {
      const KernelFn a = power == 1 ? z : z * z, b = power == 1 ? w : w * w;
      KernelFn cert;
      if (!((a - b) * G).certify_polynomial(guard, &cert) || cert.has_negative_exponent()) ok = false;
    }
    ck.lemma_green_regular = ok;
  }

  ck.tau_constraint = tau_sigma(wz, sigma, curve).constraint_holds;
  return ck;
}

DeltaCheck check_delta(int K, int lo, int hi) {
  const long E = default_bound(K, std::max(hi, -lo), 2);
  const Frame wz = make_frame({"z", "w"}, {0, 1}, K, E);
  const Frame zw = make_frame({"z", "w"}, {1, 0}, K, E);
  const KernelFn G = green_kernel(zw, "z", "w");
  const KernelFn G21 = green_kernel21(wz, "z", "w");
  const Window win = wz.window(lo, hi);
  Poly diff = G.poly() + G21.poly();
  // delta_kernel truncates to the box; compare only inside it
  diff -= delta_kernel(K, lo, hi).poly();
  DeltaCheck d;
  d.dev = deviation_on(KernelFn::from_poly({"z", "w"}, {0, 1}, diff).with_bound(KernelFn::kExact), win);
  d.dev.certified = G.certified_on(win) && G21.certified_on(win);
  d.holds = d.dev.zero();
  return d;
}

}  // namespace qc
