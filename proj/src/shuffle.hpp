#pragma once

// Functional shuffle algebra: elements, the star product, generator embedding,
// vertex and Serre relation elements, and the variable-splitting coproduct.

#include <cstdint>
#include <vector>

#include "cartan.hpp"
#include "series.hpp"

namespace qc {

// Numerator in t_1..t_N, grouped by colour (group c holds k[c] consecutive variables).
// The cross-colour denominator prod_{col(i) != col(j), i < j} (t_i - t_j) is implicit.
struct FOElement {
  CartanData cartan;
  std::vector<int> k;
  Poly P;

  int K() const { return P.K(); }
  int nvars() const;
  std::vector<int> colors() const;  // colour of each variable
  bool is_zero() const { return P.is_zero(); }
  FOElement operator+(const FOElement& o) const;
  FOElement operator-(const FOElement& o) const;
  FOElement scaled(const HSeries& s) const;
  FOElement scaled(const Q& s) const;
  bool operator==(const FOElement& o) const { return k == o.k && P == o.P; }
};

FOElement fo_one(const CartanData& c, int K);
// e_i[z^mode] -> t_1^mode in degree alpha_i
FOElement embed(const CartanData& c, int i, int mode, int K);
FOElement star(const FOElement& a, const FOElement& b);
FOElement star_all(const std::vector<FOElement>& xs);

// Per-group symmetry of the numerator, checked by adjacent transpositions.
bool group_symmetric(const FOElement& a);
// Principal degree: total exponent + hbar order - number of cross pairs.  Every term of a
// homogeneous element has the same value; `homogeneous` reports whether that holds.
int fo_degree(const FOElement& a, bool* homogeneous = nullptr);
// Number of cross-colour pairs for a multidegree.
int cross_pairs(const std::vector<int>& k);

// e_i[m+1] e_j[n] - e_i[m] e_j[n+1] - s hbar e_i[m] e_j[n] - (i <-> j, m <-> n reversed order),
// s = d_i a_ij / 2; zero in the algebra.
FOElement vertex_element(const CartanData& c, int i, int j, int m, int n, int K);
// Symmetrized cubic Serre element for a_ij = -1: sum over orderings of e_j[m], e_i[n1], e_i[n2].
FOElement serre_element(const CartanData& c, int i, int j, int m, int n1, int n2, int K);

struct SplitTerm {
  HSeries h;
  FOElement x, y;
};
// Component of the coproduct with first leg of multidegree kx: the first kx[c] variables
// of each colour go left.  Terms whose right leg has total exponent above ymax are dropped.
std::vector<SplitTerm> coproduct_A(const FOElement& P, const std::vector<int>& kx, int ymax);

struct ShuffleReport {
  int K = 0, window = 0;
  uint32_t seed = 0;
  long assoc_checked = 0, assoc_failed = 0;
  long vertex_checked = 0, vertex_nonzero = 0;
  long serre_checked = 0, serre_nonzero = 0;
  bool passed() const {
    return assoc_checked > 0 && assoc_failed == 0 && vertex_checked > 0 && vertex_nonzero == 0 && serre_checked > 0 &&
           serre_nonzero == 0;
  }
};
// Associativity on random triples per Cartan type, then every vertex element (A1, A2) and
// every A2 Serre element with modes in [-window, window].
ShuffleReport check_shuffle(int K, int window, int triples, uint32_t seed);

}  // namespace qc
