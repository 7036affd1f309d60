#include "geometry.hpp"

namespace qc {

ModeExp ModeExp::monomial(int K, int n, const Q& coef) {
  ModeExp m(K);
  m.add(n, HSeries::constant(K, coef));
  return m;
}

void ModeExp::add(int n, const HSeries& v) {
  auto it = c.find(n);
  if (it == c.end()) {
    if (!v.is_zero()) c.emplace(n, v.truncated(K));
    return;
  }
  it->second += v;
  if (it->second.is_zero()) c.erase(it);
}

ModeExp ModeExp::operator+(const ModeExp& o) const {
  ModeExp r = *this;
  r.K = std::min(K, o.K);
  for (const auto& [n, v] : o.c) r.add(n, v);
  return r;
}

ModeExp ModeExp::scaled(const Q& s) const {
  ModeExp r(K);
  for (const auto& [n, v] : c) r.add(n, v * s);
  return r;
}

ModeExp ModeExp::derivative() const {
  ModeExp r(K);
  for (const auto& [n, v] : c)
    if (n != 0) r.add(n - 1, v * Q(n));
  return r;
}

ModeExp ModeExp::apply_op(const std::vector<HSeries>& ops) const {
  ModeExp r(K), d = *this;
  for (size_t k = 0; k < ops.size(); ++k) {
    if (k > 0) d = d.derivative();
    if (ops[k].is_zero()) continue;
    for (const auto& [n, v] : d.c) r.add(n, v * ops[k]);
  }
  return r;
}

ModeExp ModeExp::shifted(const Q& s) const {
  ModeExp r(K);
  for (const auto& [n, v] : c) {
    Q sk = 1;
    for (int k = 0; k < K; ++k) {
      if (n >= 0 && k > n) break;
      r.add(n - k, v * HSeries::monomial(K, k, binomial(Q(n), k) * sk));
      sk *= s;
    }
  }
  return r;
}

RationalCurve::RationalCurve(int K, int max_mode) : K_(K), M_(max_mode) {
  require(K >= 1, ErrorKind::Config, "K must be positive");
  require(max_mode >= 0, ErrorKind::Config, "max_mode must be non-negative");
}

ModeExp RationalCurve::r_mode(int a) const {
  require(a >= 0 && a <= M_, ErrorKind::InvalidArgument, "R mode index outside [0, max_mode]");
  return ModeExp::monomial(K_, a);
}

ModeExp RationalCurve::lambda_mode(int a) const {
  require(a >= 0 && a <= M_, ErrorKind::InvalidArgument, "Lambda mode index outside [0, max_mode]");
  return ModeExp::monomial(K_, -a - 1);
}

HSeries RationalCurve::pair(const ModeExp& f, const ModeExp& g) const {
  for (const auto* m : {&f, &g})
    for (const auto& [n, v] : m->c)
      require(n >= -M_ - 1 && n <= M_, ErrorKind::InvalidArgument, "mode index beyond max_mode in pairing");
  HSeries s(std::min(f.K, g.K));
  for (const auto& [n, v] : f.c) {
    auto it = g.c.find(-1 - n);
    if (it != g.c.end()) HSeries::fma(s, v, it->second);
  }
  return s;
}

ModeExp RationalCurve::project(const ModeExp& f, Side side) const {
  ModeExp r(f.K);
  for (const auto& [n, v] : f.c)
    if ((side == Side::R) == (n >= 0)) r.add(n, v);
  return r;
}

std::unique_ptr<CurveConfig> make_curve(const std::string& name, int K, int max_mode) {
  if (name == "rational") return std::make_unique<RationalCurve>(K, max_mode);
  fail(ErrorKind::Config, "unknown curve '" + name + "'");
}

KernelFn delta_kernel(int K, int lo, int hi) {
  Poly p(2, K);
  for (int n = lo; n <= hi; ++n)
    if (-n - 1 >= lo && -n - 1 <= hi) p.add_term({n, -n - 1}, HSeries::constant(K, 1));
  return KernelFn::from_poly({"z", "w"}, {0, 1}, p);
}

GeometryChecks check_geometry(const CurveConfig& c) {
  GeometryChecks g;
  const int M = c.max_mode();
  for (int a = 0; a <= M; ++a)
    for (int b = 0; b <= M; ++b) {
      const HSeries d = c.pair(c.r_mode(a), c.lambda_mode(b));
      if (d != HSeries::constant(c.K(), a == b ? 1 : 0)) g.dual_basis = false;
      if (!c.pair(c.r_mode(a), c.r_mode(b)).is_zero()) g.lagrangian = false;
    }
  for (int a = 0; a <= M; ++a) {
    const ModeExp d = c.derivation(c.r_mode(a));
    if (!c.project(d, Side::Lambda).is_zero()) g.derivation_preserves_R = false;
    for (int b = 0; b <= M; ++b) {
      const ModeExp f = c.r_mode(a), h = c.lambda_mode(b);
      const ModeExp df = c.derivation(f), dh = c.derivation(h);
      // d(lambda_M) leaves the pairing range, so stay one mode inside
      if (b == M) continue;
      if (!(c.pair(df, h) + c.pair(f, dh)).is_zero()) g.pairing_invariant = false;
    }
  }
  return g;
}

}  // namespace qc
