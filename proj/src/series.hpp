#pragma once

// Exact truncated series in hbar and windowed multivariate Laurent objects over them.

#include <gmpxx.h>

#include <climits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace qc {

using Q = mpq_class;

// "p/q" with q > 0, integers as "p/1".
std::string qstr(const Q& q);
Q qparse(const std::string& s);
Q binomial(const Q& n, long k);  // generalized binomial coefficient
Q factorial(long n);
// num/den in lowest terms; mpq_class(num, den) alone does not reduce, and == assumes reduced values.
inline Q qfrac(long num, long den) {
  Q q(num, den);
  q.canonicalize();
  return q;
}

// Truncated power series in hbar: coefficient i is the hbar^i term, i < K.
class HSeries {
 public:
  HSeries() = default;
  explicit HSeries(int K);
  static HSeries constant(int K, const Q& c);
  static HSeries monomial(int K, int power, const Q& c);  // c * hbar^power, zero if power >= K

  int K() const { return static_cast<int>(c_.size()); }
  const Q& operator[](int i) const { return c_[static_cast<size_t>(i)]; }
  Q& operator[](int i) { return c_[static_cast<size_t>(i)]; }
  const std::vector<Q>& coeffs() const { return c_; }

  bool is_zero() const;
  int valuation() const;  // K when zero
  HSeries truncated(int K) const;

  HSeries& operator+=(const HSeries& o);
  HSeries& operator-=(const HSeries& o);
  HSeries& operator*=(const Q& s);
  friend HSeries operator+(const HSeries& a, const HSeries& b);
  friend HSeries operator-(const HSeries& a, const HSeries& b);
  friend HSeries operator*(const HSeries& a, const HSeries& b);
  friend HSeries operator*(const HSeries& a, const Q& s);
  friend HSeries operator*(const Q& s, const HSeries& a) { return a * s; }
  HSeries operator-() const;
  bool operator==(const HSeries& o) const;
  bool operator!=(const HSeries& o) const { return !(*this == o); }

  HSeries inv() const;
  HSeries exp() const;  // needs zero constant term
  HSeries log() const;  // needs constant term 1
  HSeries scale_hbar(const Q& s) const;  // hbar -> s*hbar
  HSeries times_hbar_power(int k) const;  // multiply by hbar^k, k >= 0
  HSeries div_hbar_power(int k) const;    // exact division by hbar^k; loses the top k orders

  // fused a += b*c without temporaries
  static void fma(HSeries& acc, const HSeries& b, const HSeries& c);

 private:
  std::vector<Q> c_;
};

using Exps = std::vector<int>;

// Sparse Laurent polynomial in n variables over HSeries.
class Poly {
 public:
  Poly() = default;
  Poly(int nvars, int K) : n_(nvars), K_(K) {}
  static Poly constant(int nvars, int K, const HSeries& c);
  static Poly monomial(int nvars, int K, const Exps& e, const HSeries& c);
  static Poly monomial(int nvars, int K, const Exps& e, const Q& c);
  // t_a - t_b + c*hbar (b may equal -1 for t_a + c*hbar)
  static Poly linear(int nvars, int K, int a, int b, const Q& c);

  int nvars() const { return n_; }
  int K() const { return K_; }
  const std::map<Exps, HSeries>& terms() const { return t_; }
  size_t size() const { return t_.size(); }
  bool is_zero() const { return t_.empty(); }
  HSeries coeff(const Exps& e) const;

  void add_term(const Exps& e, const HSeries& c);
  void add_term_product(const Exps& e, const HSeries& a, const HSeries& b);
  void erase(const Exps& e) { t_.erase(e); }

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly scaled(const HSeries& s) const;
  Poly scaled(const Q& s) const;
  Poly operator-() const { return scaled(Q(-1)); }
  bool operator==(const Poly& o) const { return n_ == o.n_ && t_ == o.t_; }

  // variable i goes to variable mapping[i] of a polynomial in nnew variables (repeats add up)
  Poly permuted(int nnew, const std::vector<int>& mapping) const;
  // exact division by (t_p - t_q); throws if not divisible
  Poly divide_linear(int p, int q) const;
  Poly truncated(int K) const;
  Poly scale_hbar(const Q& s) const;

 private:
  int n_ = 0;
  int K_ = 0;
  std::map<Exps, HSeries> t_;
};

// Report box per variable (inclusive bounds).
struct Window {
  std::vector<std::pair<int, int>> box;
  static Window uniform(int nvars, int lo, int hi);
  bool contains(const Exps& e) const;
};

// Multivariate Laurent object expanded in a region.  The region is encoded by
// rank: rank 0 is the largest variable, higher ranks are successively smaller.
// Geometric expansions raise the weight sum(rank*exponent), so every term of
// weight below the exactness bound E is exact; terms at or above E are absent
// or incomplete and never stored.
class KernelFn {
 public:
  static constexpr long kExact = LONG_MAX;

  KernelFn() = default;
  KernelFn(std::vector<std::string> vars, std::vector<int> rank, int K);

  static KernelFn from_poly(std::vector<std::string> vars, std::vector<int> rank, const Poly& p);
  static KernelFn constant(std::vector<std::string> vars, std::vector<int> rank, const HSeries& c);
  // 1/(x_big - x_small + c*hbar) expanded with x_small << x_big, all terms of weight < E
  static KernelFn inverse_linear(std::vector<std::string> vars, std::vector<int> rank, int K,
                                 const std::string& big, const std::string& small, const Q& c, long E);

  const std::vector<std::string>& vars() const { return vars_; }
  const std::vector<int>& rank() const { return rank_; }
  int nvars() const { return static_cast<int>(vars_.size()); }
  int K() const { return poly_.K(); }
  const Poly& poly() const { return poly_; }
  long exact_bound() const { return E_; }
  bool is_exact() const { return E_ == kExact; }
  int index_of(const std::string& v) const;  // -1 when absent
  std::vector<std::string> region_order() const;  // largest first

  long weight(const Exps& e) const;
  long min_weight() const;  // min over stored terms and E

  // box checks: the box is certified when every point has weight < E
  long max_box_weight(const Window& w) const;
  bool certified_on(const Window& w) const { return is_exact() || max_box_weight(w) < E_; }

  KernelFn operator+(const KernelFn& o) const;
  KernelFn operator-(const KernelFn& o) const;
  KernelFn operator*(const KernelFn& o) const;
  KernelFn scaled(const HSeries& s) const;
  KernelFn scaled(const Q& s) const;
  KernelFn operator-() const { return scaled(Q(-1)); }

  KernelFn with_bound(long E) const;  // drops terms at or above the new (lower) bound
  KernelFn shift_subst(const std::string& var, const Q& c) const;
  KernelFn diff(const std::string& var) const;
  // sum_k ops[k] * d_var^k f
  KernelFn diff_op(const std::string& var, const std::vector<HSeries>& ops) const;
  // var_from := var_to + shift*hbar; var_to fresh, or already present when f is exact
  KernelFn substitute_var(const std::string& var_from, const std::string& var_to, const Q& shift) const;
  KernelFn swap21() const;
  KernelFn renamed(const std::vector<std::string>& names) const;
  KernelFn scale_hbar(const Q& s) const;  // hbar -> s*hbar on coefficients
  // re-tag the region; only an exact Laurent polynomial may move between regions
  KernelFn with_region(const std::vector<int>& rank) const;

  // exp of an O(hbar) object, log of 1 + O(hbar)
  KernelFn exp_series() const;
  KernelFn log_series() const;
  KernelFn inverse_series() const;  // 1/f for f in c + O(hbar), c a nonzero constant

  // Certify that the object is a Laurent polynomial: the band of `guard` weights just
  // below E must vanish.  Returns false when the band carries a nonzero term.
  bool certify_polynomial(int guard, KernelFn* out) const;

  bool has_negative_exponent() const;
  HSeries coeff(const Exps& e) const { return poly_.coeff(e); }

 private:
  void check_compatible(const KernelFn& o) const;
  void drop_at_or_above_bound();

  std::vector<std::string> vars_;
  std::vector<int> rank_;
  Poly poly_;
  long E_ = kExact;
};

// Deviation of a kernel from zero inside a box.
struct Deviation {
  long nonzero = 0;
  Q max_abs = 0;
  bool certified = true;
  bool zero() const { return nonzero == 0 && certified; }
};
Deviation deviation_on(const KernelFn& f, const Window& w);

}  // namespace qc
