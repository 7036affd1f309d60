#pragma once

// Degree-truncated canonical element: dual bases of a Gram block, the leading-term law,
// the reproducing property, the in/out factorization and a cocycle spot-check.

#include <string>
#include <vector>

#include "pairing.hpp"

namespace qc {

struct ABasisElem {
  FOElement a;
  int deg = 0;
  std::string label;
  std::vector<std::string> sym;  // root-vector letters, sorted
};
struct BBasisElem {
  WordComb b;
  int deg = 0;    // -length - mode sum
  int align = 0;  // degree used for the triangular ordering
  std::string label;
  std::vector<std::string> sym;
};

// A truncated bidegree block: the degree range [-2N, D] (or [-N, D] in degree alpha_1) with
// shuffle-side modes >= -N and word letters < N.
struct Block {
  CartanData cartan;
  std::string bidegree;
  int letters = 0;  // principal-degree length N of the bidegree
  int ell = 0;      // minimal number of positive roots summing to the degree
  std::vector<ABasisElem> A;
  std::vector<BBasisElem> B;
};
Block block_alpha1(int K, int N, int D);
Block block_2alpha1(int K, int N, int D);
Block block_alpha12(int K, int N, int D);  // A2, degree alpha_1 + alpha_2

// F = sum coef hbar^power a_p (x) b_q; power may be negative.
struct FTerm {
  int power = 0;
  Q coef;
  int p = 0, q = 0;
};

struct CanonicalBlock {
  Block block;
  int K = 0;
  std::vector<FTerm> F;
  bool homogeneous = false;  // every Gram entry is a single hbar power of the predicted order
  bool triangular = false;   // graded-triangular certificate for the scalar Gram
  bool reproducing_b = false;  // <F, b (x) id> = b on every column basis vector
  bool reproducing_a = false;  // <F, id (x) a> = a on every row basis vector
  int valuation = 0;           // of F once the 1/hbar per letter is restored
  bool valuation_ok = false;   // equals ell
  bool leading_ok = false;     // leading coefficient matches (sum e_beta (x) f_beta)^ell / ell!
  int leading_terms = 0;
  bool passed() const {
    return homogeneous && triangular && reproducing_b && reproducing_a && valuation_ok && leading_ok;
  }
};
CanonicalBlock compute_F(const Block& b, int K);

struct FactorizationReport {
  int K = 0, N = 0, D = 0;
  bool degree1 = false;          // F = F_2 + F_1 in degree alpha_1
  bool degree2 = false;          // F = F_2 F_1 in degree 2 alpha_1
  bool f1_second_legs_out = false;
  bool f2_first_legs_out = false;
  long mismatches = 0;
  long checked = 0;
  bool passed() const { return degree1 && degree2 && f1_second_legs_out && f2_first_legs_out; }
};
FactorizationReport check_factorization(int K, int N, int D);

struct CocycleReport {
  int K = 0, N = 0, D = 0;
  bool degree0 = false;
  bool degree1 = false;
  bool coproduct_A_side = false;  // (Delta (x) id) F = F^{13} F^{23}
  bool coproduct_B_side = false;  // (id (x) Delta) F = F^{13} F^{12}
  long checked = 0, mismatches = 0;
  bool passed() const { return degree0 && degree1 && coproduct_A_side && coproduct_B_side; }
};
CocycleReport check_cocycle(int K, int N, int D);

}  // namespace qc
