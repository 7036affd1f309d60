#pragma once

// Cartan operator calculus on truncated mode spaces: T_sigma, its block inverse,
// A_sigma, U_sigma and the derived rho, C, c, r.

#include <string>
#include <vector>

#include "series.hpp"

namespace qc {

struct CartanData {
  std::string name;
  std::vector<std::vector<int>> a;  // Cartan matrix
  std::vector<int> d;               // symmetrizers
  int rank() const { return static_cast<int>(a.size()); }
  int sym(int i, int j) const { return d[static_cast<size_t>(i)] * a[static_cast<size_t>(i)][static_cast<size_t>(j)]; }
};
CartanData make_cartan(const std::string& name);  // "A1", "A2"; Config error otherwise

// Dense matrix over Q[[hbar]]/hbar^K.
class HMatrix {
 public:
  HMatrix() = default;
  HMatrix(int rows, int cols, int K);
  static HMatrix identity(int n, int K);
  int rows() const { return r_; }
  int cols() const { return c_; }
  int K() const { return K_; }
  HSeries& at(int i, int j) { return m_[static_cast<size_t>(i * c_ + j)]; }
  const HSeries& at(int i, int j) const { return m_[static_cast<size_t>(i * c_ + j)]; }
  HMatrix operator*(const HMatrix& o) const;
  HMatrix operator+(const HMatrix& o) const;
  HMatrix operator-(const HMatrix& o) const;
  HMatrix scaled(const Q& s) const;
  HMatrix transposed() const;
  HMatrix order(int k) const;  // hbar^k coefficient, as a constant matrix
  bool is_zero() const;
  bool operator==(const HMatrix& o) const { return r_ == o.r_ && c_ == o.c_ && m_ == o.m_; }
  // two-sided inverse; the hbar^0 part must be invertible over Q
  HMatrix inverse() const;
  // blocks
  HMatrix block(int bi, int bj, int bs) const;
  void set_block(int bi, int bj, const HMatrix& b);

 private:
  int r_ = 0, c_ = 0, K_ = 1;
  std::vector<HSeries> m_;
};

// T_sigma on modes z^n, n in [lo, hi]; column n holds the image of z^n.
HMatrix T_operator(const Q& sigma, int K, int lo, int hi);
// block matrix (T_{d_i a_ij})
HMatrix block_T(const CartanData& c, int K, int lo, int hi);

struct CartanReport {
  CartanData cartan;
  int K = 0, max_mode = 0;
  bool T_zero_vanishes = false;
  bool T_mod_hbar_scalar = false;
  bool inverse_two_sided = false;
  bool inverse_leading_matches = false;
  std::vector<std::vector<Q>> inverse_cartan;  // (d_i a_ij)^{-1}
  bool A_log_derivative_zero = false;  // (d_z + d_w) ln q_sigma = 0
  bool alpha_antisymmetric = false;
  bool U_zero = false;
  bool rho_solves = false;
  bool C_solves = false;
  bool rho_zero = false;
  bool C_zero = false;
  bool r_antisymmetry = false;
  bool r_zero = false;
  std::vector<HSeries> T2_on_z1;  // image of z^1 under T_2, coefficients of z^1, z^0, ...
  bool passed() const;
};
CartanReport run_cartan(const CartanData& c, int K, int max_mode);

}  // namespace qc
