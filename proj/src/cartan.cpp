#include "cartan.hpp"

#include "kernels.hpp"

namespace qc {

CartanData make_cartan(const std::string& name) {
  if (name == "A1") return {"A1", {{2}}, {1}};
  if (name == "A2") return {"A2", {{2, -1}, {-1, 2}}, {1, 1}};
  fail(ErrorKind::Config, "unknown Cartan type '" + name + "' (built-ins: A1, A2)");
}

HMatrix::HMatrix(int rows, int cols, int K)
    : r_(rows), c_(cols), K_(K), m_(static_cast<size_t>(rows * cols), HSeries(K)) {}

HMatrix HMatrix::identity(int n, int K) {
  HMatrix m(n, n, K);
  for (int i = 0; i < n; ++i) m.at(i, i) = HSeries::constant(K, 1);
  return m;
}

HMatrix HMatrix::operator*(const HMatrix& o) const {
  require(c_ == o.r_, ErrorKind::InvalidArgument, "matrix product: shape mismatch");
  HMatrix p(r_, o.c_, std::min(K_, o.K_));
  for (int i = 0; i < r_; ++i)
    for (int k = 0; k < c_; ++k) {
      const HSeries& a = at(i, k);
      if (a.is_zero()) continue;
      for (int j = 0; j < o.c_; ++j)
        if (!o.at(k, j).is_zero()) HSeries::fma(p.at(i, j), a, o.at(k, j));
    }
  return p;
}

HMatrix HMatrix::operator+(const HMatrix& o) const {
  require(r_ == o.r_ && c_ == o.c_, ErrorKind::InvalidArgument, "matrix sum: shape mismatch");
  HMatrix s = *this;
  for (size_t i = 0; i < m_.size(); ++i) s.m_[i] += o.m_[i];
  return s;
}

HMatrix HMatrix::operator-(const HMatrix& o) const { return *this + o.scaled(Q(-1)); }

HMatrix HMatrix::scaled(const Q& s) const {
  HMatrix r = *this;
  for (auto& x : r.m_) x *= s;
  return r;
}

HMatrix HMatrix::transposed() const {
  HMatrix t(c_, r_, K_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) t.at(j, i) = at(i, j);
  return t;
}

HMatrix HMatrix::order(int k) const {
  HMatrix t(r_, c_, K_);
  for (size_t i = 0; i < m_.size(); ++i) t.m_[i] = HSeries::constant(K_, m_[i][k]);
  return t;
}

bool HMatrix::is_zero() const {
  for (const auto& x : m_)
    if (!x.is_zero()) return false;
  return true;
}

HMatrix HMatrix::block(int bi, int bj, int bs) const {
  HMatrix b(bs, bs, K_);
  for (int i = 0; i < bs; ++i)
    for (int j = 0; j < bs; ++j) b.at(i, j) = at(bi * bs + i, bj * bs + j);
  return b;
}

void HMatrix::set_block(int bi, int bj, const HMatrix& b) {
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) at(bi * b.rows() + i, bj * b.cols() + j) = b.at(i, j);
}

// Gauss-Jordan over Q on the hbar^0 part
static std::vector<std::vector<Q>> rational_inverse(std::vector<std::vector<Q>> a) {
  const size_t n = a.size();
  std::vector<std::vector<Q>> inv(n, std::vector<Q>(n, Q(0)));
  for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && sgn(a[piv][col]) == 0) ++piv;
    require(piv < n, ErrorKind::Domain, "matrix is singular modulo hbar");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    const Q p = a[col][col];
    for (size_t j = 0; j < n; ++j) {
      a[col][j] /= p;
      inv[col][j] /= p;
    }
    for (size_t r = 0; r < n; ++r) {
      if (r == col || sgn(a[r][col]) == 0) continue;
      const Q f = a[r][col];
      for (size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

HMatrix HMatrix::inverse() const {
  require(r_ == c_, ErrorKind::InvalidArgument, "inverse of a non-square matrix");
  std::vector<std::vector<Q>> a0(static_cast<size_t>(r_), std::vector<Q>(static_cast<size_t>(r_)));
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < r_; ++j) a0[static_cast<size_t>(i)][static_cast<size_t>(j)] = at(i, j)[0];
  const auto inv0 = rational_inverse(a0);
  HMatrix B(r_, r_, K_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < r_; ++j) B.at(i, j) = HSeries::constant(K_, inv0[static_cast<size_t>(i)][static_cast<size_t>(j)]);
  // M = M0 (1 + N), N = B M - 1 = O(hbar); M^{-1} = sum (-N)^k B
  const HMatrix N = B * (*this) - identity(r_, K_);
  HMatrix acc = B, term = B;
  for (int k = 1; k < K_; ++k) {
    term = (N * term).scaled(Q(-1));
    if (term.is_zero()) break;
    acc = acc + term;
  }
  return acc;
}

HMatrix T_operator(const Q& sigma, int K, int lo, int hi) {
  const int n = hi - lo + 1;
  HMatrix T(n, n, K);
  for (int col = 0; col < n; ++col) {
    const int e = lo + col;
    Q falling = 1;  // e (e-1) ... (e-2k+1)
    for (int k = 0; 2 * k < K; ++k) {
      if (k > 0) falling *= Q(e - 2 * k + 2) * Q(e - 2 * k + 1);
      if (sgn(falling) == 0) break;
      const int row = e - 2 * k - lo;
      if (row < 0) break;
      Q s = sigma / 2, sp = 1;
      for (int t = 0; t < 2 * k + 1; ++t) sp *= s;
      T.at(row, col) += HSeries::monomial(K, 2 * k, 2 * sp * falling / factorial(2 * k + 1));
    }
  }
  return T;
}

HMatrix block_T(const CartanData& c, int K, int lo, int hi) {
  const int n = hi - lo + 1, r = c.rank();
  HMatrix T(r * n, r * n, K);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) T.set_block(i, j, T_operator(Q(c.sym(i, j)), K, lo, hi));
  return T;
}

bool CartanReport::passed() const {
  return T_zero_vanishes && T_mod_hbar_scalar && inverse_two_sided && inverse_leading_matches &&
         A_log_derivative_zero && alpha_antisymmetric && U_zero && rho_solves && C_solves && rho_zero &&
         C_zero && r_antisymmetry && r_zero;
}

// A_sigma(lambda_a) = sum_b [z^a w^b] (1/2)(d_z + d_w) ln q_sigma, on R modes [0, M]
static HMatrix A_operator(const Q& sigma, int K, int M, bool* log_derivative_zero) {
  const Frame wz = make_frame({"z", "w"}, {0, 1}, K, default_bound(K, M + 1, 2));
  const KernelFn L = q_sigma(wz, "z", "w", sigma).log_series();
  const KernelFn D = (L.diff("z") + L.diff("w")).scaled(Q(1, 2));
  *log_derivative_zero = deviation_on(D, wz.window(-M - 1, M)).zero();
  HMatrix A(M + 1, M + 1, K);
  for (int a = 0; a <= M; ++a)
    for (int b = 0; b <= M; ++b) A.at(b, a) = D.coeff({a, b});
  return A;
}

CartanReport run_cartan(const CartanData& c, int K, int max_mode) {
  CartanReport rep;
  rep.cartan = c;
  rep.K = K;
  rep.max_mode = max_mode;
  const int M = max_mode, r = c.rank();
  const int lo = -M - 1, hi = M, n = hi - lo + 1;

  rep.T_zero_vanishes = T_operator(0, K, lo, hi).is_zero();
  {
    bool ok = true;
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        const HMatrix t0 = T_operator(Q(c.sym(i, j)), K, lo, hi).order(0);
        if (!(t0 == HMatrix::identity(n, K).scaled(Q(c.sym(i, j))))) ok = false;
      }
    rep.T_mod_hbar_scalar = ok;
  }
  {
    const HMatrix T2 = T_operator(2, K, 0, 1);
    rep.T2_on_z1 = {T2.at(1, 1), T2.at(0, 1)};
  }

  const HMatrix T = block_T(c, K, lo, hi);
  const HMatrix Ti = T.inverse();
  const HMatrix I = HMatrix::identity(r * n, K);
  rep.inverse_two_sided = (T * Ti == I) && (Ti * T == I);
  {
    std::vector<std::vector<Q>> b(static_cast<size_t>(r), std::vector<Q>(static_cast<size_t>(r)));
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) b[static_cast<size_t>(i)][static_cast<size_t>(j)] = c.sym(i, j);
    rep.inverse_cartan = rational_inverse(b);
    bool ok = true;
    const HMatrix lead = Ti.order(0);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        if (!(lead.block(i, j, n) ==
              HMatrix::identity(n, K).scaled(rep.inverse_cartan[static_cast<size_t>(i)][static_cast<size_t>(j)])))
          ok = false;
    rep.inverse_leading_matches = ok;
  }

  // operators Lambda -> R live on R modes [0, M]; T preserves R and its top truncation
  const int m = M + 1;
  const HMatrix TR = block_T(c, K, 0, M);
  const HMatrix TRi = TR.inverse();
  HMatrix Ablk(r * m, r * m, K), Ublk(r * m, r * m, K);
  bool logzero = true, antisym = true;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      bool lz = false;
      const HMatrix A = A_operator(Q(c.sym(i, j)), K, M, &lz);
      logzero = logzero && lz;
      // alpha^{ij} = sum_a A_ij(lambda_a) (x) r^a has matrix A (first leg rows)
      if (!(A == A.transposed().scaled(Q(-1)))) antisym = false;
      Ablk.set_block(i, j, A);
      // U_sigma = -(1/hbar) <tau_sigma, id (x) lambda> = 0 as tau_sigma = 0
    }
  rep.A_log_derivative_zero = logzero;
  rep.alpha_antisymmetric = antisym;
  rep.U_zero = Ublk.is_zero();

  // sum_k T_kj rho_ik = U_ij: column block j of U equals sum_k T_kj rho_ik; with T block
  // symmetric this reads rho_(i,.) = T^{-1} U_(i,.) blockwise
  HMatrix rho(r * m, r * m, K), C(r * m, r * m, K);
  for (int i = 0; i < r; ++i) {
    HMatrix Ucol(r * m, m, K), Acol(r * m, m, K);
    for (int j = 0; j < r; ++j)
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
          Ucol.at(j * m + a, b) = Ublk.at(i * m + a, j * m + b);
          Acol.at(j * m + a, b) = Ablk.at(i * m + a, j * m + b);
        }
    const HMatrix rcol = TRi * Ucol, ccol = TRi * Acol;
    for (int k = 0; k < r; ++k)
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
          rho.at(i * m + a, k * m + b) = rcol.at(k * m + a, b);
          C.at(i * m + a, k * m + b) = ccol.at(k * m + a, b);
        }
  }
  {
    bool rs = true, cs = true;
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        HMatrix su(m, m, K), sc(m, m, K);
        for (int k = 0; k < r; ++k) {
          su = su + TR.block(k, j, m) * rho.block(i, k, m);
          sc = sc + TR.block(k, j, m) * C.block(i, k, m);
        }
        if (!(su == Ublk.block(i, j, m))) rs = false;
        if (!(sc == Ablk.block(i, j, m))) cs = false;
      }
    rep.rho_solves = rs;
    rep.C_solves = cs;
    rep.rho_zero = rho.is_zero();
    rep.C_zero = C.is_zero();
  }

  // c^{ij} has matrix C_ij (first leg rows, second leg the lambda index).  For each j solve
  // sum_l R_{jl} T_li^t = c^{ij} for the row of unknown matrices R_{jl}.
  std::vector<std::vector<HMatrix>> rr(static_cast<size_t>(r), std::vector<HMatrix>(static_cast<size_t>(r)));
  const HMatrix TRt_inv = TR.transposed().inverse();
  for (int j = 0; j < r; ++j) {
    HMatrix crow(m, r * m, K);
    for (int i = 0; i < r; ++i) {
      const HMatrix cij = C.block(i, j, m);
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) crow.at(a, i * m + b) = cij.at(a, b);
    }
    // crow = Rrow * W with W(l,i) = T_li^t, i.e. W = TR^t as a full matrix
    const HMatrix Rrow = crow * TRt_inv;
    for (int l = 0; l < r; ++l) {
      HMatrix R(m, m, K);
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) R.at(a, b) = Rrow.at(a, l * m + b);
      rr[static_cast<size_t>(j)][static_cast<size_t>(l)] = R;
    }
  }
  {
    bool ok = true, zero = true;
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        HMatrix lhs(m, m, K), first(m, m, K);
        for (int l = 0; l < r; ++l) {
          lhs = lhs + TR.block(l, i, m) * rr[static_cast<size_t>(l)][static_cast<size_t>(j)];
          first = first + rr[static_cast<size_t>(j)][static_cast<size_t>(l)] * TR.block(l, i, m).transposed();
        }
        if (!(first == C.block(i, j, m))) ok = false;
        if (!(lhs == C.block(i, j, m).transposed().scaled(Q(-1)))) ok = false;
        if (!rr[static_cast<size_t>(i)][static_cast<size_t>(j)].is_zero()) zero = false;
      }
    rep.r_antisymmetry = ok;
    rep.r_zero = zero;
  }
  return rep;
}

}  // namespace qc
