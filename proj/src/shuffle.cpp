#include "shuffle.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "parallel.hpp"

namespace qc {

namespace {

int total(const std::vector<int>& k) { return std::accumulate(k.begin(), k.end(), 0); }

std::vector<int> offsets(const std::vector<int>& k) {
  std::vector<int> o(k.size(), 0);
  for (size_t c = 1; c < k.size(); ++c) o[c] = o[c - 1] + k[c - 1];
  return o;
}

void check_same_algebra(const FOElement& a, const FOElement& b) {
  require(a.cartan.name == b.cartan.name, ErrorKind::InvalidArgument, "shuffle: Cartan data mismatch");
}

// all size-r subsets of {0..n-1}, increasing order inside each subset
std::vector<std::vector<int>> subsets(int n, int r) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == r) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i <= n - (r - static_cast<int>(cur.size())); ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

int inversions(const std::vector<int>& v) {
  int inv = 0;
  for (size_t i = 0; i < v.size(); ++i)
    for (size_t j = i + 1; j < v.size(); ++j)
      if (v[i] > v[j]) ++inv;
  return inv;
}

Q half_sym(const CartanData& c, int i, int j) { return qfrac(c.sym(i, j), 2); }

}  // namespace

int FOElement::nvars() const { return total(k); }

std::vector<int> FOElement::colors() const {
  std::vector<int> r;
  for (size_t c = 0; c < k.size(); ++c) r.insert(r.end(), static_cast<size_t>(k[c]), static_cast<int>(c));
  return r;
}

FOElement FOElement::operator+(const FOElement& o) const {
  check_same_algebra(*this, o);
  require(k == o.k, ErrorKind::InvalidArgument, "shuffle: adding elements of different degree");
  return {cartan, k, P + o.P};
}

FOElement FOElement::operator-(const FOElement& o) const {
  check_same_algebra(*this, o);
  require(k == o.k, ErrorKind::InvalidArgument, "shuffle: subtracting elements of different degree");
  return {cartan, k, P - o.P};
}

FOElement FOElement::scaled(const HSeries& s) const { return {cartan, k, P.scaled(s)}; }
FOElement FOElement::scaled(const Q& s) const { return {cartan, k, P.scaled(s)}; }

FOElement fo_one(const CartanData& c, int K) {
  return {c, std::vector<int>(static_cast<size_t>(c.rank()), 0), Poly::constant(0, K, HSeries::constant(K, 1))};
}

FOElement embed(const CartanData& c, int i, int mode, int K) {
  require(i >= 0 && i < c.rank(), ErrorKind::InvalidArgument, "embed: colour out of range");
  std::vector<int> k(static_cast<size_t>(c.rank()), 0);
  k[static_cast<size_t>(i)] = 1;
  return {c, k, Poly::monomial(1, K, Exps{mode}, Q(1))};
}

FOElement star(const FOElement& f, const FOElement& g) {
  check_same_algebra(f, g);
  const CartanData& c = f.cartan;
  const int ncol = c.rank();
  const int K = std::min(f.K(), g.K());
  std::vector<int> kk(static_cast<size_t>(ncol));
  for (int col = 0; col < ncol; ++col) kk[col] = f.k[col] + g.k[col];
  const int n = total(kk);
  const auto offs = offsets(kk);
  std::vector<int> cols;
  for (int col = 0; col < ncol; ++col) cols.insert(cols.end(), static_cast<size_t>(kk[col]), col);

  // f's colour-c variables take the first slots of block c, g's the rest
  std::vector<int> fmap, gmap;
  for (int col = 0; col < ncol; ++col)
    for (int j = 0; j < f.k[col]; ++j) fmap.push_back(offs[col] + j);
  for (int col = 0; col < ncol; ++col)
    for (int j = 0; j < g.k[col]; ++j) gmap.push_back(offs[col] + f.k[col] + j);

  Poly X = f.P.truncated(K).permuted(n, fmap) * g.P.truncated(K).permuted(n, gmap);
  for (int x : fmap)
    for (int y : gmap) {
      const int cx = cols[x], cy = cols[y];
      Poly lin = Poly::linear(n, K, x, y, half_sym(c, cx, cy));
      X = X * (cx > cy ? -lin : lin);
    }
  // same-colour Vandermonde inside each factor
  for (int col = 0; col < ncol; ++col) {
    const int b = offs[col];
    for (int p = 0; p < f.k[col]; ++p)
      for (int q = p + 1; q < f.k[col]; ++q) X = X * Poly::linear(n, K, b + p, b + q, 0);
    const int bg = b + f.k[col];
    for (int p = 0; p < g.k[col]; ++p)
      for (int q = p + 1; q < g.k[col]; ++q) X = X * Poly::linear(n, K, bg + p, bg + q, 0);
  }

  // signed sum over the per-colour shuffles
  std::vector<std::vector<std::vector<int>>> choices(static_cast<size_t>(ncol));
  for (int col = 0; col < ncol; ++col) choices[col] = subsets(kk[col], f.k[col]);
  Poly H(n, K);
  std::vector<size_t> pick(static_cast<size_t>(ncol), 0);
  while (true) {
    std::vector<int> mapping(static_cast<size_t>(n));
    int sign = 1;
    for (int col = 0; col < ncol; ++col) {
      const auto& S = choices[col][pick[col]];
      std::vector<int> newpos;
      std::vector<bool> used(static_cast<size_t>(kk[col]), false);
      for (int s : S) {
        newpos.push_back(s);
        used[s] = true;
      }
      for (int j = 0; j < kk[col]; ++j)
        if (!used[j]) newpos.push_back(j);
      for (int j = 0; j < kk[col]; ++j) mapping[offs[col] + j] = offs[col] + newpos[j];
      if (inversions(newpos) % 2) sign = -sign;
    }
    Poly term = X.permuted(n, mapping);
    if (sign > 0)
      H += term;
    else
      H -= term;
    int col = 0;
    for (; col < ncol; ++col) {
      if (++pick[col] < choices[col].size()) break;
      pick[col] = 0;
    }
    if (col == ncol) break;
  }
  for (int col = 0; col < ncol; ++col)
    for (int p = 0; p < kk[col]; ++p)
      for (int q = p + 1; q < kk[col]; ++q) H = H.divide_linear(offs[col] + p, offs[col] + q);
  return {c, kk, H};
}

FOElement star_all(const std::vector<FOElement>& xs) {
  require(!xs.empty(), ErrorKind::InvalidArgument, "star_all: empty product");
  FOElement r = xs[0];
  for (size_t i = 1; i < xs.size(); ++i) r = star(r, xs[i]);
  return r;
}

bool group_symmetric(const FOElement& a) {
  const int n = a.nvars();
  const auto offs = offsets(a.k);
  for (size_t col = 0; col < a.k.size(); ++col)
    for (int j = 0; j + 1 < a.k[col]; ++j) {
      std::vector<int> m(static_cast<size_t>(n));
      std::iota(m.begin(), m.end(), 0);
      std::swap(m[offs[col] + j], m[offs[col] + j + 1]);
      if (!(a.P.permuted(n, m) == a.P)) return false;
    }
  return true;
}

int cross_pairs(const std::vector<int>& k) {
  int n = 0, s = 0;
  for (int x : k) {
    n += s * x;
    s += x;
  }
  return n;
}

int fo_degree(const FOElement& a, bool* homogeneous) {
  const int nc = cross_pairs(a.k);
  bool first = true, homog = true;
  int d = 0;
  for (const auto& [e, h] : a.P.terms()) {
    const int se = std::accumulate(e.begin(), e.end(), 0);
    for (int i = 0; i < h.K(); ++i) {
      if (sgn(h[i]) == 0) continue;
      const int v = se + i - nc;
      if (first) {
        d = v;
        first = false;
      } else if (v != d) {
        homog = false;
      }
    }
  }
  if (homogeneous) *homogeneous = homog;
  return d;
}

FOElement vertex_element(const CartanData& c, int i, int j, int m, int n, int K) {
  const Q s = half_sym(c, i, j);
  auto e = [&](int col, int mode) { return embed(c, col, mode, K); };
  const HSeries sh = HSeries::monomial(K, 1, s);
  return star(e(i, m + 1), e(j, n)) - star(e(i, m), e(j, n + 1)) - star(e(i, m), e(j, n)).scaled(sh) -
         star(e(j, n), e(i, m + 1)) + star(e(j, n + 1), e(i, m)) - star(e(j, n), e(i, m)).scaled(sh);
}

FOElement serre_element(const CartanData& c, int i, int j, int m, int n1, int n2, int K) {
  require(c.a[i][j] == -1, ErrorKind::InvalidArgument, "serre_element: needs a_ij = -1");
  const FOElement ej = embed(c, j, m, K), ei1 = embed(c, i, n1, K), ei2 = embed(c, i, n2, K);
  return star_all({ej, ei1, ei2}) - star_all({ei1, ej, ei2}).scaled(Q(2)) + star_all({ei1, ei2, ej}) +
         star_all({ej, ei2, ei1}) - star_all({ei2, ej, ei1}).scaled(Q(2)) + star_all({ei2, ei1, ej});
}

std::vector<SplitTerm> coproduct_A(const FOElement& P, const std::vector<int>& kx, int ymax) {
  const CartanData& c = P.cartan;
  const int ncol = c.rank();
  const int K = P.K();
  const int n = P.nvars();
  require(static_cast<int>(kx.size()) == ncol, ErrorKind::InvalidArgument, "coproduct_A: split size");
  const auto cols = P.colors();
  const auto offs = offsets(P.k);
  std::vector<int> xs, ys, ky(static_cast<size_t>(ncol));
  for (int col = 0; col < ncol; ++col) {
    require(kx[col] >= 0 && kx[col] <= P.k[col], ErrorKind::InvalidArgument, "coproduct_A: split out of range");
    ky[col] = P.k[col] - kx[col];
    for (int j = 0; j < P.k[col]; ++j) (j < kx[col] ? xs : ys).push_back(offs[col] + j);
  }
  struct Factor {
    int i, j;
    Q s;
  };
  Poly N = P.P;
  std::vector<Factor> factors;
  for (int i : xs)
    for (int j : ys) {
      const Q s = half_sym(c, cols[i], cols[j]);
      if (cols[i] == cols[j])
        N = N * Poly::linear(n, K, i, j, 0);
      else if (cols[i] > cols[j])
        N = -N;
      factors.push_back({i, j, s});
    }
  auto ydeg = [&](const Exps& e) {
    int d = 0;
    for (int j : ys) d += e[j];
    return d;
  };
  // expand each 1/(x - y + s hbar) in x >> y
  Poly cur = N;
  for (const auto& f : factors) {
    Poly next(n, K);
    for (const auto& [e, co] : cur.terms()) {
      Q ms = 1;  // (-s)^a
      for (int a = 0; a < K; ++a) {
        if (a > 0) {
          if (sgn(f.s) == 0) break;
          ms *= -f.s;
        }
        for (int jj = 0;; ++jj) {
          Exps ne = e;
          ne[f.j] += jj;
          ne[f.i] += -1 - a - jj;
          if (ydeg(ne) > ymax) break;
          next.add_term_product(ne, co, HSeries::monomial(K, a, ms * binomial(Q(a + jj), a)));
        }
      }
    }
    cur = std::move(next);
  }
  // group by the right-leg monomial
  std::map<Exps, Poly> grp;
  const int nx = static_cast<int>(xs.size()), ny = static_cast<int>(ys.size());
  for (const auto& [e, v] : cur.terms()) {
    Exps ex(static_cast<size_t>(nx)), ey(static_cast<size_t>(ny));
    for (int t = 0; t < nx; ++t) ex[t] = e[xs[t]];
    for (int t = 0; t < ny; ++t) ey[t] = e[ys[t]];
    grp.try_emplace(ey, nx, K).first->second.add_term(ex, v);
  }
  std::vector<SplitTerm> out;
  for (auto& [ey, X] : grp)
    out.push_back({HSeries::constant(K, 1), FOElement{c, kx, X}, FOElement{c, ky, Poly::monomial(ny, K, ey, Q(1))}});
  return out;
}

namespace {

int draw(std::mt19937& rng, int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<unsigned>(hi - lo + 1)); }

// q1 e(c1)[m1] ... + q2 e(c1)[m1'] ..., len letters of random colours
FOElement random_element(const CartanData& c, int K, int len, std::mt19937& rng) {
  auto draw = [&](int lo, int hi) { return qc::draw(rng, lo, hi); };
  std::vector<int> cols;
  for (int l = 0; l < len; ++l) cols.push_back(draw(0, c.rank() - 1));
  auto term = [&] {
    std::vector<FOElement> fs;
    for (int col : cols) fs.push_back(embed(c, col, draw(-3, 3), K));
    int q = draw(-3, 3);
    if (q == 0) q = 1;
    return star_all(fs).scaled(Q(q));
  };
  const FOElement first = term();
  const FOElement r = first + term();
  return r;
}

}  // namespace

ShuffleReport check_shuffle(int K, int window, int triples, uint32_t seed) {
  ShuffleReport r;
  r.K = K;
  r.window = window;
  r.seed = seed;
  std::mt19937 rng(seed);
  for (const char* name : {"A1", "A2"}) {
    const CartanData c = make_cartan(name);
    for (int t = 0; t < triples; ++t) {
      // at most four letters in total; one factor may have two
      int len[3] = {1, 1, 1};
      len[draw(rng, 0, 3) % 3] += draw(rng, 0, 1);
      const FOElement a = random_element(c, K, len[0], rng), b = random_element(c, K, len[1], rng),
                      d = random_element(c, K, len[2], rng);
      ++r.assoc_checked;
      if (!(star(star(a, b), d) == star(a, star(b, d)))) ++r.assoc_failed;
    }
  }

  struct Job {
    CartanData c;
    int i, j, m, n1, n2;
    bool serre;
  };
  std::vector<Job> jobs;
  for (const char* name : {"A1", "A2"}) {
    const CartanData c = make_cartan(name);
    for (int i = 0; i < c.rank(); ++i)
      for (int j = 0; j < c.rank(); ++j)
        for (int m = -window; m <= window; ++m)
          for (int n = -window; n <= window; ++n) jobs.push_back({c, i, j, m, n, 0, false});
  }
  const CartanData a2 = make_cartan("A2");
  for (int i = 0; i < 2; ++i)
    for (int m = -window; m <= window; ++m)
      for (int n1 = -window; n1 <= window; ++n1)
        for (int n2 = n1; n2 <= window; ++n2) jobs.push_back({a2, i, 1 - i, m, n1, n2, true});
  std::vector<char> zero(jobs.size());
  parallel_for(jobs.size(), [&](size_t k) {
    const Job& jb = jobs[k];
    zero[k] = (jb.serre ? serre_element(jb.c, jb.i, jb.j, jb.m, jb.n1, jb.n2, K)
                        : vertex_element(jb.c, jb.i, jb.j, jb.m, jb.n1, K))
                  .is_zero();
  });
  for (size_t k = 0; k < jobs.size(); ++k) {
    long& checked = jobs[k].serre ? r.serre_checked : r.vertex_checked;
    long& bad = jobs[k].serre ? r.serre_nonzero : r.vertex_nonzero;
    ++checked;
    if (!zero[k]) ++bad;
  }
  return r;
}

}  // namespace qc
