#include "pairing.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

namespace qc {

namespace {

struct Denom {
  int big, small;
  Q c;  // 1/(u_big - u_small + c hbar)
};

long weight_of(const Exps& e) {
  long w = 0;
  for (size_t i = 0; i < e.size(); ++i) w += static_cast<long>(i) * e[i];
  return w;
}

// Coefficient of u^target in numer * prod 1/(u_b - u_s + c hbar), expanded with u_0 >> u_1 >> ...
// Each expansion step lowers the weight sum(i * e_i) by at most big*K, which bounds what can
// still reach the target.
HSeries coeff_extract(int n, const Poly& numer, const std::vector<Denom>& denoms, const Exps& target) {
  const int K = numer.K();
  const long wt = weight_of(target);
  std::vector<long> mins(denoms.size());
  for (size_t i = 0; i < denoms.size(); ++i) mins[i] = -static_cast<long>(denoms[i].big) * K;
  Poly cur = numer;
  for (size_t idx = 0; idx < denoms.size(); ++idx) {
    const auto& d = denoms[idx];
    long rest = 0;
    for (size_t t = idx + 1; t < denoms.size(); ++t) rest += mins[t];
    const long cap = wt - rest;
    Poly next(n, K);
    for (const auto& [e, co] : cur.terms()) {
      const long we = weight_of(e);
      if (we + mins[idx] > cap) continue;
      Q mc = 1;  // (-c)^i
      for (int i = 0; i < K; ++i) {
        if (i > 0) {
          if (sgn(d.c) == 0) break;
          mc *= -d.c;
        }
        for (int j = 0;; ++j) {
          Exps ne = e;
          ne[d.small] += j;
          ne[d.big] += -1 - i - j;
          if (weight_of(ne) > cap) break;
          next.add_term_product(ne, co, HSeries::monomial(K, i, mc * binomial(Q(i + j), i)));
        }
      }
    }
    cur = std::move(next);
  }
  return cur.coeff(target);
}

Q half_sym(const CartanData& c, int i, int j) { return qfrac(c.sym(i, j), 2); }

std::vector<int> colour_counts(const FreeWord& w, int rank) {
  std::vector<int> k(static_cast<size_t>(rank), 0);
  for (const auto& l : w) {
    require(l.col >= 0 && l.col < rank, ErrorKind::InvalidArgument, "word letter colour out of range");
    ++k[l.col];
  }
  return k;
}

}  // namespace

std::string word_label(const FreeWord& w, int rank) {
  if (w.empty()) return "1";
  std::ostringstream os;
  for (const auto& l : w) {
    os << "f";
    if (rank > 1) os << (l.col + 1);
    os << "[" << l.mode << "]";
  }
  return os.str();
}

int word_mode_sum(const FreeWord& w) {
  int s = 0;
  for (const auto& l : w) s += l.mode;
  return s;
}

FreeWord concat(const FreeWord& a, const FreeWord& b) {
  FreeWord r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

HSeries pair(const FOElement& P, const FreeWord& word) {
  const CartanData& c = P.cartan;
  const int K = P.K();
  const int n = static_cast<int>(word.size());
  if (n != P.nvars() || colour_counts(word, c.rank()) != P.k) return HSeries(K);
  if (n == 0) return P.P.coeff(Exps{});
  // FO variable -> word position of the matching occurrence of its colour
  std::vector<int> offs(static_cast<size_t>(c.rank()), 0);
  for (int col = 1; col < c.rank(); ++col) offs[col] = offs[col - 1] + P.k[col - 1];
  std::vector<int> seen(static_cast<size_t>(c.rank()), 0), fomap(static_cast<size_t>(n));
  for (int pos = 0; pos < n; ++pos) {
    const int col = word[pos].col;
    fomap[offs[col] + seen[col]++] = pos;
  }
  Poly numer = P.P.permuted(n, fomap);
  Exps em(static_cast<size_t>(n));
  for (int pos = 0; pos < n; ++pos) em[pos] = word[pos].mode;
  numer = numer * Poly::monomial(n, K, em, Q(1));
  std::vector<Denom> denoms;
  const auto cols = P.colors();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (cols[i] == cols[j]) continue;
      const int a = fomap[i], b = fomap[j];
      if (a < b) {
        denoms.push_back({a, b, 0});
      } else {
        denoms.push_back({b, a, 0});
        numer = -numer;
      }
    }
  for (int l = 0; l < n; ++l)
    for (int lp = l + 1; lp < n; ++lp) {
      numer = numer * Poly::linear(n, K, l, lp, 0);
      denoms.push_back({l, lp, half_sym(c, word[l].col, word[lp].col)});
    }
  return coeff_extract(n, numer, denoms, Exps(static_cast<size_t>(n), -1));
}

HSeries pair(const FOElement& P, const WordComb& b) {
  HSeries r(P.K());
  for (const auto& [q, w] : b.terms) r += pair(P, w) * q;
  return r;
}

std::vector<WordSplit> coproduct_B(const CartanData& c, const FreeWord& word, int K, const std::vector<int>& kx,
                                   int max_left_mode_sum) {
  const int n = static_cast<int>(word.size());
  std::vector<WordSplit> out;
  std::vector<int> I, Ic;
  for (int mask = 0; mask < (1 << n); ++mask) {
    I.clear();
    Ic.clear();
    for (int j = 0; j < n; ++j) (mask >> j & 1 ? I : Ic).push_back(j);
    std::vector<int> k(static_cast<size_t>(c.rank()), 0);
    int msum = 0;
    for (int j : I) {
      ++k[word[j].col];
      msum += word[j].mode;
    }
    if (k != kx) continue;
    const int cap = max_left_mode_sum - msum;
    if (cap < 0) continue;
    // pairs (jp in Ic, j in I, j > jp) carry q^{-1}(u_jp, u_j) = 1 - 2c hbar/(u_jp - u_j + c hbar)
    std::vector<std::pair<int, int>> pairs;
    for (int j : I)
      for (int jp : Ic)
        if (j > jp) pairs.push_back({jp, j});
    std::vector<int> shift(static_cast<size_t>(n), 0);
    auto rec = [&](auto&& self, size_t idx, const HSeries& h, int used) -> void {
      if (h.is_zero()) return;
      if (idx == pairs.size()) {
        WordSplit s{h, {}, {}};
        for (int j : I) s.w1.push_back({word[j].col, word[j].mode + shift[j]});
        for (int j : Ic) s.w2.push_back({word[j].col, word[j].mode + shift[j]});
        out.push_back(std::move(s));
        return;
      }
      const auto [jp, j] = pairs[idx];
      const Q cc = half_sym(c, word[j].col, word[jp].col);
      self(self, idx + 1, h, used);
      if (sgn(cc) == 0) return;
      Q mc = 1;  // (-c)^i
      for (int i = 0; i + 1 < K; ++i) {
        if (i > 0) mc *= -cc;
        for (int jj = 0; used + jj <= cap; ++jj) {
          const HSeries t = HSeries::monomial(K, i + 1, Q(-2) * cc * mc * binomial(Q(i + jj), i));
          shift[jp] += -1 - i - jj;
          shift[j] += jj;
          self(self, idx + 1, h * t, used + jj);
          shift[jp] -= -1 - i - jj;
          shift[j] -= jj;
        }
      }
    };
    rec(rec, 0, HSeries::constant(K, 1), 0);
  }
  return out;
}

RuleValue hopf_rule_product(const FOElement& a, const FOElement& ap, const FreeWord& w) {
  const int K = std::min(a.K(), ap.K());
  RuleValue v{pair(star(a, ap), w), HSeries(K)};
  bool homog = true;
  const int da = fo_degree(a, &homog);
  require(homog, ErrorKind::InvalidArgument, "hopf rule: left factor must be homogeneous");
  // <a, w1'> vanishes once its hbar order d_a - deg(w1') reaches K
  const int max_sum = K - 1 - a.nvars() - da;
  for (const auto& s : coproduct_B(a.cartan, w, K, a.k, max_sum)) {
    const HSeries p1 = pair(a, s.w1);
    if (p1.is_zero()) continue;
    const HSeries p2 = pair(ap, s.w2);
    if (p2.is_zero()) continue;
    v.rhs += s.h * p1 * p2;
  }
  return v;
}

RuleValue hopf_rule_coproduct(const FOElement& a, const FreeWord& b, const FreeWord& bp) {
  const int K = a.K();
  RuleValue v{pair(a, concat(b, bp)), HSeries(K)};
  const auto kx = colour_counts(b, a.cartan.rank());
  std::vector<int> ky(kx.size());
  for (size_t c = 0; c < kx.size(); ++c) ky[c] = a.k[c] - kx[c];
  for (size_t c = 0; c < kx.size(); ++c)
    if (ky[c] < 0) return v;
  const int ymax = K - 1 + cross_pairs(ky) - static_cast<int>(bp.size()) - word_mode_sum(bp);
  for (const auto& s : coproduct_A(a, kx, ymax)) {
    const HSeries p2 = pair(s.y, bp);
    if (p2.is_zero()) continue;
    v.rhs += s.h * pair(s.x, b) * p2;
  }
  return v;
}

bool HopfReport::passed() const {
  if (samples.empty()) return false;
  for (const auto& s : samples)
    if (!s.value.holds()) return false;
  return true;
}

HopfReport check_hopf_rules(int K, int samples_per_rule, uint32_t seed) {
  HopfReport rep;
  rep.K = K;
  rep.seed = seed;
  std::mt19937 rng(seed);
  auto rnd = [&](int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<uint32_t>(hi - lo + 1)); };
  const CartanData A1 = make_cartan("A1"), A2 = make_cartan("A2");
  auto element = [&](const CartanData& c, const std::vector<int>& cols, FreeWord* dual, std::string* desc) {
    FOElement x = fo_one(c, K);
    std::ostringstream os;
    for (int col : cols) {
      const int m = rnd(-2, 2);
      dual->push_back({col, -1 - m});
      x = star(x, embed(c, col, m, K));
      os << "e" << (c.rank() > 1 ? std::to_string(col + 1) : "") << "[" << m << "]";
    }
    *desc = os.str();
    return x;
  };
  // letters dual to the element's modes, shuffled, with a small transfer between two letters
  // and an hbar-order offset on the last one; keeps most samples away from trivial zeros
  auto make_word = [&](std::vector<Letter> dual, int offset) {
    for (size_t i = dual.size(); i > 1; --i) std::swap(dual[i - 1], dual[rng() % i]);
    if (dual.size() > 1) {
      const int t = rnd(-1, 1);
      dual[0].mode += t;
      dual[1].mode -= t;
    }
    dual.back().mode += offset;
    return dual;
  };
  using Split = std::pair<std::vector<int>, std::vector<int>>;
  // redraw a few times so that most samples are not trivially zero
  auto keep = [&](auto draw) {
    HopfSample s = draw();
    for (int attempt = 0; attempt < 24 && s.value.lhs.is_zero(); ++attempt) s = draw();
    if (!s.value.lhs.is_zero()) ++rep.nonzero;
    rep.samples.push_back(std::move(s));
  };
  for (int t = 0; t < samples_per_rule; ++t) {
    const CartanData& c = t % 2 == 0 ? A1 : A2;
    keep([&] {
      const std::vector<Split> opts =
          c.rank() == 1 ? std::vector<Split>{{{0, 0}, {0}}, {{0}, {0, 0}}, {{0}, {0}}}
                        : std::vector<Split>{{{0, 1}, {0}}, {{0}, {1, 0}}, {{1}, {0}}, {{0}, {1}}};
      const Split sp = opts[rng() % opts.size()];
      FreeWord dual;
      std::string d1, d2;
      const FOElement a = element(c, sp.first, &dual, &d1);
      const FOElement ap = element(c, sp.second, &dual, &d2);
      const FreeWord w = make_word(dual, rnd(0, 2));
      return HopfSample{"product", c.name, "<" + d1 + " * " + d2 + ", " + word_label(w, c.rank()) + ">",
                        hopf_rule_product(a, ap, w)};
    });
  }
  for (int t = 0; t < samples_per_rule; ++t) {
    const CartanData& c = t % 2 == 0 ? A1 : A2;
    keep([&] {
      std::vector<int> cols;
      if (c.rank() == 1) {
        cols = t % 4 == 0 ? std::vector<int>{0, 0, 0} : std::vector<int>{0, 0};
      } else {
        const std::vector<std::vector<int>> opts{{0, 1}, {0, 0, 1}, {0, 1, 1}};
        cols = opts[rng() % opts.size()];
      }
      FreeWord dual;
      std::string d;
      const FOElement x = element(c, cols, &dual, &d);
      const int N = static_cast<int>(cols.size());
      const FreeWord w = make_word(dual, rnd(0, 2));
      const int cut = rnd(1, N - 1);
      const FreeWord b(w.begin(), w.begin() + cut), bp(w.begin() + cut, w.end());
      return HopfSample{"coproduct", c.name,
                        "<" + d + ", " + word_label(b, c.rank()) + " . " + word_label(bp, c.rank()) + ">",
                        hopf_rule_coproduct(x, b, bp)};
    });
  }
  return rep;
}

// ---------------------------------------------------------------- linear algebra

HSeries hdet(std::vector<std::vector<HSeries>> m, int K, bool* unit) {
  const size_t n = m.size();
  HSeries det = HSeries::constant(K, 1);
  *unit = true;
  for (size_t col = 0; col < n; ++col) {
    size_t piv = n;
    for (size_t r = col; r < n; ++r)
      if (sgn(m[r][col][0]) != 0) {
        piv = r;
        break;
      }
    if (piv == n) {
      *unit = false;
      return HSeries(K);
    }
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det = det * m[col][col];
    const HSeries inv = m[col][col].inv();
    for (size_t r = col + 1; r < n; ++r) {
      if (m[r][col].is_zero()) continue;
      const HSeries f = m[r][col] * inv;
      for (size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return det;
}

int rank_q(std::vector<std::vector<Q>> m) {
  if (m.empty()) return 0;
  const size_t rows = m.size(), cols = m[0].size();
  int rank = 0;
  size_t r0 = 0;
  for (size_t c = 0; c < cols && r0 < rows; ++c) {
    size_t piv = rows;
    for (size_t r = r0; r < rows; ++r)
      if (sgn(m[r][c]) != 0) {
        piv = r;
        break;
      }
    if (piv == rows) continue;
    std::swap(m[piv], m[r0]);
    for (size_t r = r0 + 1; r < rows; ++r) {
      if (sgn(m[r][c]) == 0) continue;
      const Q f = m[r][c] / m[r0][c];
      for (size_t k = c; k < cols; ++k) m[r][k] -= f * m[r0][k];
    }
    ++r0;
    ++rank;
  }
  return rank;
}

GramReport gram_block(const std::string& bidegree, const std::vector<FOElement>& rows,
                      const std::vector<std::string>& row_labels, const std::vector<WordComb>& cols,
                      const std::vector<std::string>& col_labels, int K, int valuation_offset) {
  GramReport g;
  g.bidegree = bidegree;
  g.K = K;
  g.valuation_offset = valuation_offset;
  g.row_labels = row_labels;
  g.col_labels = col_labels;
  g.square = rows.size() == cols.size();
  g.matrix.assign(rows.size(), std::vector<HSeries>(cols.size(), HSeries(K)));
  std::vector<std::vector<Q>> lead(rows.size(), std::vector<Q>(cols.size()));
  for (size_t p = 0; p < rows.size(); ++p)
    for (size_t q = 0; q < cols.size(); ++q) {
      g.matrix[p][q] = pair(rows[p], cols[q]);
      lead[p][q] = g.matrix[p][q][0];
    }
  g.rank_mod_hbar = rank_q(lead);
  g.kernel_dim = static_cast<int>(rows.size()) - g.rank_mod_hbar;
  if (g.square) {
    bool unit = false;
    g.det = hdet(g.matrix, K, &unit);
    g.det_valuation = unit ? 0 : g.det.valuation();
    g.nondegenerate = unit && sgn(g.det[0]) != 0;
  } else {
    g.det = HSeries(K);
  }
  return g;
}

GramReport gram_alpha1(int K, int M) {
  const CartanData c = make_cartan("A1");
  std::vector<FOElement> rows;
  std::vector<WordComb> cols;
  std::vector<std::string> rl, cl;
  for (int a = -1; a >= -M; --a) {
    rows.push_back(embed(c, 0, a, K));
    rl.push_back("e[" + std::to_string(a) + "]");
  }
  for (int b = 0; b < M; ++b) {
    const FreeWord w{{0, b}};
    cols.push_back(WordComb::word(w));
    cl.push_back(word_label(w, 1));
  }
  return gram_block("(a1,-a1)", rows, rl, cols, cl, K, -1);
}

GramReport gram_2alpha1(int K, int M) {
  const CartanData c = make_cartan("A1");
  std::vector<FOElement> rows;
  std::vector<WordComb> cols;
  std::vector<std::string> rl, cl;
  for (int a = -1; a >= -M; --a)
    for (int b = a; b >= -M; --b) {
      Poly P(2, K);
      P.add_term({a, b}, HSeries::constant(K, 1));
      if (a != b) P.add_term({b, a}, HSeries::constant(K, 1));
      rows.push_back({c, {2}, P});
      rl.push_back("m[" + std::to_string(a) + "," + std::to_string(b) + "]");
    }
  for (int x = 0; x < M; ++x)
    for (int y = x; y < M; ++y) {
      const FreeWord w{{0, x}, {0, y}};
      cols.push_back(WordComb::word(w));
      cl.push_back(word_label(w, 1));
    }
  return gram_block("(2a1,-2a1)", rows, rl, cols, cl, K, -2);
}

AnnihilatorReport check_annihilator(int K, int W) {
  AnnihilatorReport rep;
  rep.K = K;
  rep.window = W;
  const CartanData A1 = make_cartan("A1"), A2 = make_cartan("A2");
  // (a) e_i[r] * x against words with all modes regular
  auto out_words = [&](const std::vector<int>& cols) {
    std::vector<FreeWord> ws;
    std::vector<int> perm = cols;
    std::sort(perm.begin(), perm.end());
    do {
      if (perm.size() == 1) {
        for (int m = 0; m <= W; ++m) ws.push_back({{perm[0], m}});
      } else {
        for (int m1 = 0; m1 <= W; ++m1)
          for (int m2 = 0; m2 <= W; ++m2) ws.push_back({{perm[0], m1}, {perm[1], m2}});
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return ws;
  };
  auto scan = [&](const FOElement& prod, const std::vector<int>& cols) {
    ++rep.products;
    for (const auto& w : out_words(cols)) {
      ++rep.pairings;
      if (!pair(prod, w).is_zero()) ++rep.nonzero;
    }
  };
  for (int r = 0; r <= W; ++r) {
    scan(embed(A1, 0, r, K), {0});
    for (int m = -W; m <= W; ++m) scan(star(embed(A1, 0, r, K), embed(A1, 0, m, K)), {0, 0});
    for (int i = 0; i < 2; ++i)
      for (int m = -W; m <= W; ++m) scan(star(embed(A2, i, r, K), embed(A2, 1 - i, m, K)), {i, 1 - i});
  }
  // (b) products of singular modes against regular words: full rank
  std::vector<std::vector<Q>> lead;
  std::vector<FOElement> rows;
  for (int l1 = -W; l1 <= -1; ++l1)
    for (int l2 = l1; l2 <= -1; ++l2) rows.push_back(star(embed(A1, 0, l1, K), embed(A1, 0, l2, K)));
  std::vector<FreeWord> cols;
  for (int c1 = 0; c1 < W; ++c1)
    for (int c2 = c1; c2 < W; ++c2) cols.push_back({{0, c1}, {0, c2}});
  for (const auto& a : rows) {
    std::vector<Q> row;
    for (const auto& w : cols) row.push_back(pair(a, w)[0]);
    lead.push_back(std::move(row));
  }
  rep.in_rows = static_cast<int>(rows.size());
  rep.out_cols = static_cast<int>(cols.size());
  rep.predicted = rep.in_rows;
  rep.rank = rank_q(lead);
  std::vector<std::vector<Q>> d1;
  for (int l = -W; l <= -1; ++l) {
    std::vector<Q> row;
    for (int m = 0; m < W; ++m) row.push_back(pair(embed(A1, 0, l, K), FreeWord{{0, m}})[0]);
    d1.push_back(std::move(row));
  }
  rep.degree1_full = rank_q(d1) == W;
  return rep;
}

}  // namespace qc
