#pragma once

// Residue pairing between shuffle elements and free words in f-modes, Gram blocks,
// the word coproduct, Hopf-rule samples and the annihilator checks.

#include <cstdint>
#include <string>
#include <vector>

#include "shuffle.hpp"

namespace qc {

struct Letter {
  int col = 0;
  int mode = 0;
  bool operator==(const Letter& o) const { return col == o.col && mode == o.mode; }
  bool operator<(const Letter& o) const { return col != o.col ? col < o.col : mode < o.mode; }
};
using FreeWord = std::vector<Letter>;

// Rational combination of words of one multidegree.
struct WordComb {
  std::vector<std::pair<Q, FreeWord>> terms;
  static WordComb word(const FreeWord& w) { return {{{Q(1), w}}}; }
};

std::string word_label(const FreeWord& w, int rank);
int word_mode_sum(const FreeWord& w);
// Principal degree of a word: -length - sum of modes.
inline int word_degree(const FreeWord& w) { return -static_cast<int>(w.size()) - word_mode_sum(w); }
FreeWord concat(const FreeWord& a, const FreeWord& b);

// Iterated residue: the z^{-1} coefficient in every variable, expanded in u_1 >> u_2 >> ...
// with the kernel prod_{l < l'} (u_l - u_l')/(u_l - u_l' + s hbar), s = d a / 2.  Zero on
// mismatched multidegrees.
HSeries pair(const FOElement& P, const FreeWord& w);
HSeries pair(const FOElement& P, const WordComb& b);

struct WordSplit {
  HSeries h;
  FreeWord w1, w2;
};
// Components of the word coproduct whose left leg has multidegree kx.  Left-leg modes
// move upward; terms whose left leg has mode sum above max_left_mode_sum are dropped.
std::vector<WordSplit> coproduct_B(const CartanData& c, const FreeWord& w, int K, const std::vector<int>& kx,
                                   int max_left_mode_sum);

// <a a', w> against sum <a, w1><a', w2> over the word coproduct.
struct RuleValue {
  HSeries lhs, rhs;
  bool holds() const { return lhs == rhs; }
};
RuleValue hopf_rule_product(const FOElement& a, const FOElement& ap, const FreeWord& w);
// <a, b b'> against sum <x, b><y, b'> over the shuffle coproduct.
RuleValue hopf_rule_coproduct(const FOElement& a, const FreeWord& b, const FreeWord& bp);

struct HopfSample {
  std::string rule;
  std::string cartan;
  std::string description;
  RuleValue value;
};
struct HopfReport {
  int K = 0;
  uint32_t seed = 0;
  std::vector<HopfSample> samples;
  int nonzero = 0;
  bool passed() const;
};
HopfReport check_hopf_rules(int K, int samples_per_rule, uint32_t seed);

struct GramReport {
  std::string bidegree;
  int K = 0;
  int valuation_offset = 0;  // the 1/hbar per letter left out of the pairing
  std::vector<std::string> row_labels, col_labels;
  std::vector<std::vector<HSeries>> matrix;
  HSeries det;
  int det_valuation = 0;
  int rank_mod_hbar = 0;
  int kernel_dim = 0;  // of the matrix mod hbar
  bool square = false;
  bool nondegenerate = false;  // unit leading determinant
};
GramReport gram_block(const std::string& bidegree, const std::vector<FOElement>& rows,
                      const std::vector<std::string>& row_labels, const std::vector<WordComb>& cols,
                      const std::vector<std::string>& col_labels, int K, int valuation_offset);
// A1 blocks with modes bounded by M: e[-1..-M] x f[0..M-1], and the symmetrized
// monomials in [-M,-1] against ordered words with letters in [0, M-1].
GramReport gram_alpha1(int K, int M);
GramReport gram_2alpha1(int K, int M);

// Determinant over Q[[hbar]]/hbar^K by elimination; *unit is false when some pivot
// column has no unit entry (the leading coefficient then vanishes).
HSeries hdet(std::vector<std::vector<HSeries>> m, int K, bool* unit);
int rank_q(std::vector<std::vector<Q>> m);

struct AnnihilatorReport {
  int K = 0, window = 0;
  long products = 0, pairings = 0, nonzero = 0;
  int in_rows = 0, out_cols = 0, rank = 0, predicted = 0;
  bool degree1_full = false;
  bool passed() const { return nonzero == 0 && in_rows == out_cols && rank == predicted && degree1_full; }
};
AnnihilatorReport check_annihilator(int K, int W);

}  // namespace qc
