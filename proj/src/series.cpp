#include "series.hpp"

#include <algorithm>

namespace qc {

std::string qstr(const Q& q) { return q.get_num().get_str() + "/" + q.get_den().get_str(); }

Q qparse(const std::string& s) {
  Q q;
  if (q.set_str(s, 10) != 0) fail(ErrorKind::InvalidArgument, "not a rational: " + s);
  require(q.get_den() != 0, ErrorKind::InvalidArgument, "zero denominator: " + s);
  q.canonicalize();
  return q;
}

Q binomial(const Q& n, long k) {
  if (k < 0) return 0;
  Q r = 1;
  for (long i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

Q factorial(long n) {
  Q r = 1;
  for (long i = 2; i <= n; ++i) r *= i;
  return r;
}

// ---------------------------------------------------------------- HSeries

HSeries::HSeries(int K) {
  require(K >= 1, ErrorKind::InvalidArgument, "truncation order must be positive");
  c_.assign(static_cast<size_t>(K), Q(0));
}

HSeries HSeries::constant(int K, const Q& c) {
  HSeries h(K);
  h[0] = c;
  return h;
}

HSeries HSeries::monomial(int K, int power, const Q& c) {
  HSeries h(K);
  if (power >= 0 && power < K) h[power] = c;
  return h;
}

bool HSeries::is_zero() const {
  for (const auto& x : c_)
    if (sgn(x) != 0) return false;
  return true;
}

int HSeries::valuation() const {
  for (int i = 0; i < K(); ++i)
    if (sgn(c_[static_cast<size_t>(i)]) != 0) return i;
  return K();
}

HSeries HSeries::truncated(int K) const {
  HSeries r(K);
  for (int i = 0; i < std::min(K, this->K()); ++i) r[i] = (*this)[i];
  return r;
}

HSeries& HSeries::operator+=(const HSeries& o) {
  if (o.K() < K()) c_.resize(static_cast<size_t>(o.K()));
  for (int i = 0; i < K(); ++i) c_[static_cast<size_t>(i)] += o[i];
  return *this;
}

HSeries& HSeries::operator-=(const HSeries& o) {
  if (o.K() < K()) c_.resize(static_cast<size_t>(o.K()));
  for (int i = 0; i < K(); ++i) c_[static_cast<size_t>(i)] -= o[i];
  return *this;
}

HSeries& HSeries::operator*=(const Q& s) {
  for (auto& x : c_) x *= s;
  return *this;
}

HSeries operator+(const HSeries& a, const HSeries& b) {
  HSeries r = a;
  r += b;
  return r;
}

HSeries operator-(const HSeries& a, const HSeries& b) {
  HSeries r = a;
  r -= b;
  return r;
}

HSeries operator*(const HSeries& a, const HSeries& b) {
  const int K = std::min(a.K(), b.K());
  HSeries r(K);
  for (int i = 0; i < K; ++i) {
    if (sgn(a[i]) == 0) continue;
    for (int j = 0; i + j < K; ++j)
      if (sgn(b[j]) != 0) r[i + j] += a[i] * b[j];
  }
  return r;
}

void HSeries::fma(HSeries& acc, const HSeries& b, const HSeries& c) {
  const int K = std::min({acc.K(), b.K(), c.K()});
  if (acc.K() > K) acc.c_.resize(static_cast<size_t>(K));
  Q tmp;
  for (int i = 0; i < K; ++i) {
    if (sgn(b[i]) == 0) continue;
    for (int j = 0; i + j < K; ++j) {
      if (sgn(c[j]) == 0) continue;
      mpq_mul(tmp.get_mpq_t(), b[i].get_mpq_t(), c[j].get_mpq_t());
      acc.c_[static_cast<size_t>(i + j)] += tmp;
    }
  }
}

HSeries operator*(const HSeries& a, const Q& s) {
  HSeries r = a;
  r *= s;
  return r;
}

HSeries HSeries::operator-() const {
  HSeries r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

bool HSeries::operator==(const HSeries& o) const {
  const int K = std::min(this->K(), o.K());
  for (int i = 0; i < K; ++i)
    if ((*this)[i] != o[i]) return false;
  return true;
}

HSeries HSeries::inv() const {
  require(K() >= 1 && sgn(c_[0]) != 0, ErrorKind::Domain, "HSeries inverse: leading coefficient is zero");
  HSeries r(K());
  r[0] = 1 / c_[0];
  for (int n = 1; n < K(); ++n) {
    Q s = 0;
    for (int i = 1; i <= n; ++i) s += (*this)[i] * r[n - i];
    r[n] = -s / c_[0];
  }
  return r;
}

HSeries HSeries::exp() const {
  require(sgn(c_[0]) == 0, ErrorKind::Domain, "HSeries exp: constant term must vanish");
  HSeries r(K());
  r[0] = 1;
  for (int n = 1; n < K(); ++n) {
    Q s = 0;
    for (int k = 1; k <= n; ++k) s += Q(k) * (*this)[k] * r[n - k];
    r[n] = s / n;
  }
  return r;
}

HSeries HSeries::log() const {
  require(c_[0] == 1, ErrorKind::Domain, "HSeries log: constant term must be 1");
  HSeries r(K());
  for (int n = 1; n < K(); ++n) {
    Q s = 0;
    for (int k = 1; k < n; ++k) s += Q(k) * r[k] * (*this)[n - k];
    r[n] = (*this)[n] - s / n;
  }
  return r;
}

HSeries HSeries::scale_hbar(const Q& s) const {
  HSeries r = *this;
  Q p = 1;
  for (int i = 0; i < K(); ++i) {
    r[i] *= p;
    p *= s;
  }
  return r;
}

HSeries HSeries::times_hbar_power(int k) const {
  require(k >= 0, ErrorKind::InvalidArgument, "negative hbar power");
  HSeries r(K());
  for (int i = 0; i + k < K(); ++i) r[i + k] = (*this)[i];
  return r;
}

HSeries HSeries::div_hbar_power(int k) const {
  require(k >= 0 && valuation() >= std::min(k, K()), ErrorKind::Domain, "HSeries not divisible by hbar power");
  HSeries r(K());
  for (int i = k; i < K(); ++i) r[i - k] = (*this)[i];
  return r;
}

// ---------------------------------------------------------------- Poly

Poly Poly::constant(int nvars, int K, const HSeries& c) {
  Poly p(nvars, K);
  p.add_term(Exps(static_cast<size_t>(nvars), 0), c);
  return p;
}

Poly Poly::monomial(int nvars, int K, const Exps& e, const HSeries& c) {
  Poly p(nvars, K);
  p.add_term(e, c);
  return p;
}

Poly Poly::monomial(int nvars, int K, const Exps& e, const Q& c) {
  return monomial(nvars, K, e, HSeries::constant(K, c));
}

Poly Poly::linear(int nvars, int K, int a, int b, const Q& c) {
  Poly p(nvars, K);
  Exps e(static_cast<size_t>(nvars), 0);
  Exps ea = e;
  ea[static_cast<size_t>(a)] = 1;
  p.add_term(ea, HSeries::constant(K, 1));
  if (b >= 0) {
    Exps eb = e;
    eb[static_cast<size_t>(b)] = 1;
    p.add_term(eb, HSeries::constant(K, -1));
  }
  if (sgn(c) != 0 && K > 1) p.add_term(e, HSeries::monomial(K, 1, c));
  return p;
}

HSeries Poly::coeff(const Exps& e) const {
  auto it = t_.find(e);
  return it == t_.end() ? HSeries(K_) : it->second;
}

void Poly::add_term(const Exps& e, const HSeries& c) {
  auto it = t_.find(e);
  if (it == t_.end()) {
    if (!c.is_zero()) t_.emplace(e, c.K() == K_ ? c : c.truncated(K_));
    return;
  }
  it->second += c;
  if (it->second.is_zero()) t_.erase(it);
}

void Poly::add_term_product(const Exps& e, const HSeries& a, const HSeries& b) {
  auto it = t_.find(e);
  if (it == t_.end()) {
    HSeries p = a * b;
    if (!p.is_zero()) t_.emplace(e, p.truncated(K_));
    return;
  }
  HSeries::fma(it->second, a, b);
  if (it->second.is_zero()) t_.erase(it);
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [e, c] : o.t_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [e, c] : o.t_) add_term(e, -c);
  return *this;
}

Poly operator+(const Poly& a, const Poly& b) {
  Poly r = a;
  r += b;
  return r;
}

Poly operator-(const Poly& a, const Poly& b) {
  Poly r = a;
  r -= b;
  return r;
}

Poly operator*(const Poly& a, const Poly& b) {
  require(a.n_ == b.n_, ErrorKind::InvalidArgument, "Poly product: variable count mismatch");
  Poly r(a.n_, std::min(a.K_, b.K_));
  Exps e(static_cast<size_t>(a.n_));
  for (const auto& [ea, ca] : a.t_)
    for (const auto& [eb, cb] : b.t_) {
      for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term_product(e, ca, cb);
    }
  return r;
}

Poly Poly::scaled(const HSeries& s) const {
  Poly r(n_, std::min(K_, s.K()));
  for (const auto& [e, c] : t_) r.add_term(e, c * s);
  return r;
}

Poly Poly::scaled(const Q& s) const {
  Poly r(n_, K_);
  if (sgn(s) == 0) return r;
  r.t_ = t_;
  for (auto& [e, c] : r.t_) c *= s;
  return r;
}

Poly Poly::permuted(int nnew, const std::vector<int>& mapping) const {
  Poly r(nnew, K_);
  Exps ne(static_cast<size_t>(nnew));
  for (const auto& [e, c] : t_) {
    std::fill(ne.begin(), ne.end(), 0);
    for (size_t i = 0; i < e.size(); ++i) ne[static_cast<size_t>(mapping[i])] += e[i];
    r.add_term(ne, c);
  }
  return r;
}

Poly Poly::divide_linear(int p, int q) const {
  if (t_.empty()) return *this;
  // group by the exponent of t_p
  std::map<int, Poly> by;
  for (const auto& [e, c] : t_) {
    Exps rest = e;
    rest[static_cast<size_t>(p)] = 0;
    auto [it, ins] = by.try_emplace(e[static_cast<size_t>(p)], n_, K_);
    it->second.add_term(rest, c);
  }
  const int kmin = by.begin()->first;
  const int kmax = by.rbegin()->first;
  auto times_tq = [&](const Poly& d) {
    Poly r(n_, K_);
    for (const auto& [e, c] : d.t_) {
      Exps ne = e;
      ne[static_cast<size_t>(q)] += 1;
      r.t_.emplace(std::move(ne), c);
    }
    return r;
  };
  // (t_p - t_q) * sum d_k t_p^k = sum c_k t_p^k  =>  d_{k-1} = c_k + t_q d_k
  std::map<int, Poly> d;
  Poly cur(n_, K_);
  for (int k = kmax; k > kmin; --k) {
    auto it = by.find(k);
    Poly next = times_tq(cur);
    if (it != by.end()) next += it->second;
    cur = next;
    d.emplace(k - 1, cur);
  }
  Poly rem = times_tq(cur);
  rem += by.at(kmin);
  require(rem.is_zero(), ErrorKind::Invariant, "divide_linear: not divisible");
  Poly r(n_, K_);
  for (const auto& [k, poly] : d)
    for (const auto& [e, c] : poly.t_) {
      Exps ne = e;
      ne[static_cast<size_t>(p)] = k;
      r.t_.emplace(std::move(ne), c);
    }
  return r;
}

Poly Poly::truncated(int K) const {
  Poly r(n_, K);
  for (const auto& [e, c] : t_) r.add_term(e, c.truncated(K));
  return r;
}

Poly Poly::scale_hbar(const Q& s) const {
  Poly r(n_, K_);
  for (const auto& [e, c] : t_) r.add_term(e, c.scale_hbar(s));
  return r;
}

// ---------------------------------------------------------------- Window

Window Window::uniform(int nvars, int lo, int hi) {
  require(lo <= hi, ErrorKind::InvalidArgument, "window: lo > hi");
  Window w;
  w.box.assign(static_cast<size_t>(nvars), {lo, hi});
  return w;
}

bool Window::contains(const Exps& e) const {
  if (e.size() != box.size()) return false;
  for (size_t i = 0; i < e.size(); ++i)
    if (e[i] < box[i].first || e[i] > box[i].second) return false;
  return true;
}

// ---------------------------------------------------------------- KernelFn

KernelFn::KernelFn(std::vector<std::string> vars, std::vector<int> rank, int K)
    : vars_(std::move(vars)), rank_(std::move(rank)), poly_(static_cast<int>(vars_.size()), K) {
  require(vars_.size() == rank_.size(), ErrorKind::InvalidArgument, "region must rank every variable");
  std::vector<int> sorted = rank_;
  std::sort(sorted.begin(), sorted.end());
  for (size_t i = 0; i < sorted.size(); ++i)
    require(sorted[i] == static_cast<int>(i), ErrorKind::InvalidArgument, "region ranks must be a permutation");
  for (size_t i = 0; i < vars_.size(); ++i)
    for (size_t j = i + 1; j < vars_.size(); ++j)
      require(vars_[i] != vars_[j], ErrorKind::InvalidArgument, "duplicate variable " + vars_[i]);
}

KernelFn KernelFn::from_poly(std::vector<std::string> vars, std::vector<int> rank, const Poly& p) {
  KernelFn f(std::move(vars), std::move(rank), p.K());
  require(p.nvars() == f.nvars(), ErrorKind::InvalidArgument, "from_poly: variable count mismatch");
  f.poly_ = p;
  return f;
}

KernelFn KernelFn::constant(std::vector<std::string> vars, std::vector<int> rank, const HSeries& c) {
  const int n = static_cast<int>(vars.size());
  return from_poly(std::move(vars), std::move(rank), Poly::constant(n, c.K(), c));
}

KernelFn KernelFn::inverse_linear(std::vector<std::string> vars, std::vector<int> rank, int K,
                                  const std::string& big, const std::string& small, const Q& c, long E) {
  KernelFn f(std::move(vars), std::move(rank), K);
  const int b = f.index_of(big), s = f.index_of(small);
  require(b >= 0 && s >= 0 && b != s, ErrorKind::InvalidArgument, "inverse_linear: unknown variables");
  const long rb = f.rank_[static_cast<size_t>(b)], rs = f.rank_[static_cast<size_t>(s)];
  require(rb < rs, ErrorKind::RegionMismatch, "inverse_linear: " + small + " is not the smaller variable");
  f.E_ = E;
  // sum_{i,j} C(i+j,i) (-c hbar)^i small^j big^{-1-i-j}; weight = j(rs-rb) - rb(1+i)
  Exps e(static_cast<size_t>(f.nvars()), 0);
  for (int i = 0; i < K; ++i) {
    if (i > 0 && sgn(c) == 0) break;
    Q ci = 1;
    for (int t = 0; t < i; ++t) ci *= -c;
    for (long j = 0;; ++j) {
      const long w = j * (rs - rb) - rb * (1 + i);
      if (w >= E) break;
      e[static_cast<size_t>(s)] = static_cast<int>(j);
      e[static_cast<size_t>(b)] = static_cast<int>(-1 - i - j);
      f.poly_.add_term(e, HSeries::monomial(K, i, ci * binomial(Q(i + j), i)));
    }
  }
  return f;
}

int KernelFn::index_of(const std::string& v) const {
  for (size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == v) return static_cast<int>(i);
  return -1;
}

std::vector<std::string> KernelFn::region_order() const {
  std::vector<std::string> r(vars_.size());
  for (size_t i = 0; i < vars_.size(); ++i) r[static_cast<size_t>(rank_[i])] = vars_[i];
  return r;
}

long KernelFn::weight(const Exps& e) const {
  long w = 0;
  for (size_t i = 0; i < e.size(); ++i) w += static_cast<long>(rank_[i]) * e[i];
  return w;
}

long KernelFn::min_weight() const {
  long m = E_;
  for (const auto& [e, c] : poly_.terms()) m = std::min(m, weight(e));
  return m;
}

long KernelFn::max_box_weight(const Window& w) const {
  require(w.box.size() == vars_.size(), ErrorKind::InvalidArgument, "window dimension mismatch");
  long m = 0;
  for (size_t i = 0; i < vars_.size(); ++i) {
    const long r = rank_[i];
    m += r * (r >= 0 ? w.box[i].second : w.box[i].first);
  }
  return m;
}

void KernelFn::check_compatible(const KernelFn& o) const {
  require(vars_ == o.vars_, ErrorKind::InvalidArgument, "kernel arithmetic: variable-set mismatch");
  require(rank_ == o.rank_, ErrorKind::RegionMismatch, "kernel arithmetic: region mismatch");
}

void KernelFn::drop_at_or_above_bound() {
  if (E_ == kExact) return;
  std::vector<Exps> drop;
  for (const auto& [e, c] : poly_.terms())
    if (weight(e) >= E_) drop.push_back(e);
  for (const auto& e : drop) poly_.erase(e);
}

static long add_bound(long a, long b) {
  if (a == KernelFn::kExact || b == KernelFn::kExact) return KernelFn::kExact;
  return a + b;
}

KernelFn KernelFn::operator+(const KernelFn& o) const {
  check_compatible(o);
  KernelFn r = *this;
  r.poly_ += o.poly_;
  r.E_ = std::min(E_, o.E_);
  r.drop_at_or_above_bound();
  return r;
}

KernelFn KernelFn::operator-(const KernelFn& o) const { return *this + (-o); }

KernelFn KernelFn::operator*(const KernelFn& o) const {
  check_compatible(o);
  KernelFn r(vars_, rank_, std::min(K(), o.K()));
  const long Lf = min_weight(), Lg = o.min_weight();
  if (E_ == kExact && o.E_ == kExact) {
    r.E_ = kExact;
  } else {
    long a = (E_ == kExact) ? kExact : add_bound(E_, Lg);
    long b = (o.E_ == kExact) ? kExact : add_bound(o.E_, Lf);
    if (E_ == kExact && poly_.is_zero()) a = kExact;
    r.E_ = std::min(a, b);
  }
  Exps e(static_cast<size_t>(nvars()));
  for (const auto& [ea, ca] : poly_.terms()) {
    const long wa = weight(ea);
    for (const auto& [eb, cb] : o.poly_.terms()) {
      if (r.E_ != kExact && wa + o.weight(eb) >= r.E_) continue;
      for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.poly_.add_term_product(e, ca, cb);
    }
  }
  return r;
}

KernelFn KernelFn::scaled(const HSeries& s) const {
  KernelFn r = *this;
  r.poly_ = poly_.scaled(s);
  return r;
}

KernelFn KernelFn::scaled(const Q& s) const {
  KernelFn r = *this;
  r.poly_ = poly_.scaled(s);
  return r;
}

KernelFn KernelFn::with_bound(long E) const {
  KernelFn r = *this;
  r.E_ = std::min(E_, E);
  r.drop_at_or_above_bound();
  return r;
}

KernelFn KernelFn::shift_subst(const std::string& var, const Q& c) const {
  const int v = index_of(var);
  require(v >= 0, ErrorKind::InvalidArgument, "shift_subst: unknown variable " + var);
  if (sgn(c) == 0) return *this;
  const int K = this->K();
  const long rho = rank_[static_cast<size_t>(v)];
  KernelFn r(vars_, rank_, K);
  r.E_ = (E_ == kExact) ? kExact : E_ - rho * (K - 1);
  Exps ne;
  for (const auto& [e, coef] : poly_.terms()) {
    const int n = e[static_cast<size_t>(v)];
    Q ck = 1;  // c^k
    for (int k = 0; k < K; ++k) {
      if (n >= 0 && k > n) break;
      ne = e;
      ne[static_cast<size_t>(v)] = n - k;
      if (r.E_ == kExact || r.weight(ne) < r.E_) {
        const HSeries factor = HSeries::monomial(K, k, binomial(Q(n), k) * ck);
        r.poly_.add_term_product(ne, coef, factor);
      }
      ck *= c;
    }
  }
  return r;
}

KernelFn KernelFn::diff(const std::string& var) const {
  const int v = index_of(var);
  require(v >= 0, ErrorKind::InvalidArgument, "diff: unknown variable " + var);
  KernelFn r(vars_, rank_, K());
  r.E_ = (E_ == kExact) ? kExact : E_ - rank_[static_cast<size_t>(v)];
  for (const auto& [e, c] : poly_.terms()) {
    const int n = e[static_cast<size_t>(v)];
    if (n == 0) continue;
    Exps ne = e;
    ne[static_cast<size_t>(v)] = n - 1;
    r.poly_.add_term(ne, c * Q(n));
  }
  r.drop_at_or_above_bound();
  return r;
}

KernelFn KernelFn::diff_op(const std::string& var, const std::vector<HSeries>& ops) const {
  KernelFn acc(vars_, rank_, K());
  acc.E_ = E_;
  KernelFn d = *this;
  bool first = true;
  for (size_t k = 0; k < ops.size(); ++k) {
    if (k > 0) d = d.diff(var);
    if (ops[k].is_zero()) continue;
    KernelFn term = d.scaled(ops[k]);
    if (first) {
      acc = term;
      first = false;
    } else {
      acc = acc + term;
    }
  }
  if (first) {
    acc.E_ = d.E_;
  } else {
    acc.E_ = std::min(acc.E_, d.E_);
    acc.drop_at_or_above_bound();
  }
  return acc;
}

KernelFn KernelFn::substitute_var(const std::string& var_from, const std::string& var_to, const Q& shift) const {
  const int f = index_of(var_from);
  require(f >= 0, ErrorKind::InvalidArgument, "substitute_var: unknown variable " + var_from);
  KernelFn s = shift_subst(var_from, shift);
  const int t = s.index_of(var_to);
  if (t < 0 || t == f) {
    std::vector<std::string> names = s.vars_;
    names[static_cast<size_t>(f)] = var_to;
    return s.renamed(names);
  }
  require(s.is_exact(), ErrorKind::WindowLoss,
          "substitute_var: merging " + var_from + " into " + var_to + " needs an exact Laurent polynomial");
  // drop var_from; its exponent moves to var_to
  std::vector<std::string> nv;
  std::vector<int> nr;
  std::vector<int> mapping(static_cast<size_t>(s.nvars()));
  for (int i = 0, j = 0; i < s.nvars(); ++i) {
    if (i == f) continue;
    nv.push_back(s.vars_[static_cast<size_t>(i)]);
    nr.push_back(s.rank_[static_cast<size_t>(i)]);
    mapping[static_cast<size_t>(i)] = j++;
  }
  // renumber ranks densely
  std::vector<int> order(nr.size());
  for (size_t i = 0; i < nr.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return nr[static_cast<size_t>(a)] < nr[static_cast<size_t>(b)]; });
  std::vector<int> dense(nr.size());
  for (size_t i = 0; i < order.size(); ++i) dense[static_cast<size_t>(order[i])] = static_cast<int>(i);
  int tgt = 0;
  for (int i = 0, j = 0; i < s.nvars(); ++i) {
    if (i == f) continue;
    if (i == t) tgt = j;
    ++j;
  }
  mapping[static_cast<size_t>(f)] = tgt;
  return from_poly(nv, dense, s.poly_.permuted(static_cast<int>(nv.size()), mapping));
}

KernelFn KernelFn::swap21() const {
  require(nvars() == 2, ErrorKind::InvalidArgument, "swap21 needs two variables");
  KernelFn r(vars_, {rank_[1], rank_[0]}, K());
  r.E_ = E_;
  r.poly_ = poly_.permuted(2, {1, 0});
  return r;
}

KernelFn KernelFn::renamed(const std::vector<std::string>& names) const {
  KernelFn r(names, rank_, K());
  r.E_ = E_;
  r.poly_ = poly_;
  return r;
}

KernelFn KernelFn::scale_hbar(const Q& s) const {
  KernelFn r = *this;
  r.poly_ = poly_.scale_hbar(s);
  return r;
}

KernelFn KernelFn::with_region(const std::vector<int>& rank) const {
  require(is_exact(), ErrorKind::RegionMismatch, "region change needs an exact Laurent polynomial");
  return from_poly(vars_, rank, poly_);
}

KernelFn KernelFn::exp_series() const {
  Exps zero(static_cast<size_t>(nvars()), 0);
  for (const auto& [e, c] : poly_.terms())
    require(sgn(c[0]) == 0, ErrorKind::Domain, "kernel exp: argument must be O(hbar)");
  KernelFn one = constant(vars_, rank_, HSeries::constant(K(), 1));
  KernelFn acc = one, term = one;
  for (int n = 1; n < K(); ++n) {
    term = (term * (*this)).scaled(Q(1, n));
    acc = acc + term;
  }
  return acc;
}

KernelFn KernelFn::log_series() const {
  Exps zero(static_cast<size_t>(nvars()), 0);
  KernelFn x = *this - constant(vars_, rank_, HSeries::constant(K(), 1));
  for (const auto& [e, c] : x.poly_.terms())
    require(sgn(c[0]) == 0, ErrorKind::Domain, "kernel log: argument must be 1 + O(hbar)");
  KernelFn acc = x, pw = x;
  for (int n = 2; n < K(); ++n) {
    pw = pw * x;
    acc = acc + pw.scaled(Q((n % 2 == 0) ? -1 : 1, n));
  }
  return acc;
}

KernelFn KernelFn::inverse_series() const {
  Exps zero(static_cast<size_t>(nvars()), 0);
  const HSeries c0 = poly_.coeff(zero);
  require(sgn(c0[0]) != 0, ErrorKind::Domain, "kernel inverse: constant term must be a unit");
  for (const auto& [e, c] : poly_.terms())
    if (e != zero) require(sgn(c[0]) == 0, ErrorKind::Domain, "kernel inverse: non-constant hbar^0 part");
  const HSeries ic = c0.inv();
  // f = c0 (1 + x), x = O(hbar)
  KernelFn x = scaled(ic) - constant(vars_, rank_, HSeries::constant(K(), 1));
  KernelFn acc = constant(vars_, rank_, HSeries::constant(K(), 1)), pw = acc;
  for (int n = 1; n < K(); ++n) {
    pw = pw * x;
    acc = (n % 2 == 1) ? acc - pw : acc + pw;
  }
  return acc.scaled(ic);
}

bool KernelFn::certify_polynomial(int guard, KernelFn* out) const {
  if (is_exact()) {
    if (out) *out = *this;
    return true;
  }
  for (const auto& [e, c] : poly_.terms())
    if (weight(e) >= E_ - guard) return false;
  if (out) {
    *out = *this;
    out->E_ = kExact;
  }
  return true;
}

bool KernelFn::has_negative_exponent() const {
  for (const auto& [e, c] : poly_.terms())
    for (int x : e)
      if (x < 0) return true;
  return false;
}

Deviation deviation_on(const KernelFn& f, const Window& w) {
  Deviation d;
  d.certified = f.certified_on(w);
  for (const auto& [e, c] : f.poly().terms()) {
    if (!w.contains(e)) continue;
    for (const auto& x : c.coeffs()) {
      if (sgn(x) == 0) continue;
      ++d.nonzero;
      Q a = abs(x);
      if (a > d.max_abs) d.max_abs = a;
    }
  }
  return d;
}

}  // namespace qc
