#pragma once

// Curve configuration: function rings, dual mode bases, residue pairing, projections.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "series.hpp"

namespace qc {

// Finite Laurent expansion in one variable, exponent -> coefficient.
struct ModeExp {
  int K = 1;
  std::map<int, HSeries> c;

  ModeExp() = default;
  explicit ModeExp(int K_) : K(K_) {}
  static ModeExp monomial(int K, int n, const Q& coef = 1);
  void add(int n, const HSeries& v);
  ModeExp operator+(const ModeExp& o) const;
  ModeExp scaled(const Q& s) const;
  bool is_zero() const { return c.empty(); }
  bool operator==(const ModeExp& o) const { return c == o.c; }
  ModeExp derivative() const;
  // sum_k ops[k] d^k f; ops[k] should carry enough hbar powers to terminate
  ModeExp apply_op(const std::vector<HSeries>& ops) const;
  ModeExp shifted(const Q& c_) const;  // z -> z + c*hbar
};

enum class Side { R, Lambda };

// Interface so further instances (e.g. the trigonometric one) can slot in.
class CurveConfig {
 public:
  virtual ~CurveConfig() = default;
  virtual std::string name() const = 0;
  virtual int K() const = 0;
  virtual int max_mode() const = 0;
  virtual ModeExp r_mode(int a) const = 0;       // basis of R
  virtual ModeExp lambda_mode(int a) const = 0;  // dual basis of Lambda
  virtual HSeries pair(const ModeExp& f, const ModeExp& g) const = 0;
  virtual ModeExp project(const ModeExp& f, Side side) const = 0;
  virtual ModeExp derivation(const ModeExp& f) const = 0;
};

// C = P^1, omega = dz, S = {infinity}.  R has modes z^a, Lambda has modes z^{-a-1};
// the pairing is the z^{-1} coefficient of the product, which makes the bases dual.
class RationalCurve final : public CurveConfig {
 public:
  RationalCurve(int K, int max_mode);
  std::string name() const override { return "rational"; }
  int K() const override { return K_; }
  int max_mode() const override { return M_; }
  ModeExp r_mode(int a) const override;
  ModeExp lambda_mode(int a) const override;
  HSeries pair(const ModeExp& f, const ModeExp& g) const override;
  ModeExp project(const ModeExp& f, Side side) const override;
  ModeExp derivation(const ModeExp& f) const override { return f.derivative(); }

 private:
  int K_;
  int M_;
};

std::unique_ptr<CurveConfig> make_curve(const std::string& name, int K, int max_mode);

// The formal delta distribution sum_n z^n w^{-n-1}, cut to a square exponent box.
KernelFn delta_kernel(int K, int lo, int hi);

struct GeometryChecks {
  bool dual_basis = true;
  bool lagrangian = true;
  bool derivation_preserves_R = true;
  bool pairing_invariant = true;
};
GeometryChecks check_geometry(const CurveConfig& c);

}  // namespace qc
