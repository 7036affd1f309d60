#pragma once

// Green kernel, the psi/phi series, tau_sigma and the R-matrix kernels q_sigma, q_sigma^+.

#include <map>
#include <string>
#include <vector>

#include "geometry.hpp"
#include "series.hpp"

namespace qc {

// A region together with an exactness bound shared by the kernels built in it.
struct Frame {
  std::vector<std::string> vars;
  std::vector<int> rank;
  int K = 1;
  long E = 0;

  int idx(const std::string& v) const;
  KernelFn zero() const;
  KernelFn constant(const HSeries& c) const;
  KernelFn constant(const Q& c) const;
  KernelFn linear(const std::string& a, const std::string& b, const Q& c) const;  // a - b + c*hbar
  KernelFn var(const std::string& a, const Q& c = 0) const;                       // a + c*hbar
  // 1/(a - b + c*hbar) expanded in this region, whichever of a, b is larger
  KernelFn inv_linear(const std::string& a, const std::string& b, const Q& c) const;
  // exact polynomial f moved into this frame, f's variable i named as[i]
  KernelFn lift(const KernelFn& f, const std::vector<std::string>& as) const;
  Window window(int lo, int hi) const { return Window::uniform(static_cast<int>(vars.size()), lo, hi); }
};

Frame make_frame(std::vector<std::string> vars, std::vector<int> rank, int K, long E);

// Default exactness bound for a box [lo, hi] in n variables: room for shifts and a certification band.
long default_bound(int K, int hi, int nvars);
int certify_guard(int K);

// Operator series: coefficient k multiplies d^k.
// (e^{a hbar d} - e^{b hbar d}) / d
std::vector<HSeries> op_exp_difference(int K, const Q& a, const Q& b);
// (e^{s hbar d/2} - e^{-s hbar d/2}) / d
std::vector<HSeries> op_symmetric(int K, const Q& sigma);

// G = sum_alpha r^alpha(z) lambda_alpha(w) = 1/(w - z) expanded in z << w.
KernelFn green_kernel(const Frame& fr, const std::string& z, const std::string& w);
// G^{(21)} = 1/(z - w) expanded in w << z.
KernelFn green_kernel21(const Frame& fr, const std::string& z, const std::string& w);

// gamma = d_z G - G^2 restricted to the diagonal; an element of R in one variable.
struct GammaUnderline {
  KernelFn two_var;  // d_z G - G^2 in z << w, certified polynomial
  Poly one_var;      // restriction to w = z
  bool in_R_tensor_R = false;
};
GammaUnderline gamma_underline(int K, int window_hi);

// Series in s = sigma*hbar whose coefficients are polynomials in gamma_0, gamma_1, ...
using GMono = std::vector<int>;
using GPoly = std::map<GMono, Q>;
struct GammaSeries {
  int K = 1;
  int ngam = 1;
  std::vector<GPoly> c;  // c[n] multiplies s^n
  GammaSeries() = default;
  GammaSeries(int K_, int ngam_) : K(K_), ngam(ngam_), c(static_cast<size_t>(K_)) {}
  bool operator==(const GammaSeries& o) const { return c == o.c; }
};
GPoly gpoly_mul(const GPoly& a, const GPoly& b);
GPoly gpoly_add(const GPoly& a, const GPoly& b, const Q& sb = 1);
GPoly gpoly_derivation(const GPoly& a, int ngam);  // D = sum gamma_{i+1} d/d gamma_i

struct PsiPhi {
  GammaSeries psi, phi;
};
// psi' = D psi - 1 - gamma_0 psi^2, phi' = D phi - gamma_0 psi, both vanishing at s = 0.
PsiPhi solve_psi_phi(int K);
// sum_n sigma^n hbar^n c_n(gamma_i -> d_x^i gamma(x, y)), as an exact kernel in fr;
// gamma2 is the two-variable gamma with variables (z, w)
KernelFn eval_gamma(const GammaSeries& g, const Q& sigma, const KernelFn& gamma2, const Frame& fr,
                    const std::string& x, const std::string& y);

// tau_sigma(z, w): zero in this instance; the defining constraint is checked on modes.
struct TauReport {
  KernelFn tau;
  bool constraint_holds = false;
  int modes_checked = 0;
};
TauReport tau_sigma(const Frame& fr, const Q& sigma, const CurveConfig& curve);

// q_sigma(x, y) in y << x: exp of the symmetric difference operator applied to G^{(21)}, plus tau.
KernelFn q_sigma(const Frame& fr, const std::string& x, const std::string& y, const Q& sigma);
// closed form (x - y + sigma hbar/2)/(x - y - sigma hbar/2)
KernelFn q_sigma_closed(const Frame& fr, const std::string& x, const std::string& y, const Q& sigma);
// q_sigma^+(x, y) in y << x: exp((e^{sigma hbar d/2} - 1)/d G^{(21)})
KernelFn q_sigma_plus(const Frame& fr, const std::string& x, const std::string& y, const Q& sigma);

// Analytic continuation: f * prod(poles) is certified polynomial, re-expanded in `target`
// times the inverse linear factors.
struct LinearFactor {
  std::string a, b;
  Q c;  // a - b + c*hbar
};
KernelFn prolong(const KernelFn& f, const std::vector<LinearFactor>& poles, const Frame& target);

// Kernel report for one sigma.
struct KernelChecks {
  Q sigma;
  bool q_matches_closed = false;
  bool inverse_identity = false;
  bool i_sigma_is_one = false;
  bool i_sigma_unit = false;
  bool giov_identity = false;
  bool q_plus_factorization = false;
  bool lemma_alpha_shift = false;
  bool lemma_green_regular = false;
  bool tau_constraint = false;
  KernelFn q;        // q_sigma(z, w) in w << z
  KernelFn i_sigma;  // certified polynomial
};
KernelChecks check_kernels(int K, int lo, int hi, const Q& sigma, const CurveConfig& curve);

struct DeltaCheck {
  bool holds = false;
  Deviation dev;
};
// G + G^{(21)} equals the delta distribution on the box
DeltaCheck check_delta(int K, int lo, int hi);

}  // namespace qc
