#include <map>

#include "canonical.hpp"
#include "doctest.h"

using namespace qc;

namespace {

int mode_of(const std::string& label) { return std::stoi(label.substr(label.find('[') + 1)); }

}  // namespace

TEST_CASE("degree alpha_1: F is the sum of e[a] (x) f[-1-a]") {
  const int K = 4;
  const Block b = block_alpha1(K, 3, 2);
  const CanonicalBlock cb = compute_F(b, K);
  CHECK(cb.passed());
  REQUIRE(cb.F.size() == b.A.size());
  for (const FTerm& t : cb.F) {
    CHECK(t.power == 0);
    CHECK(t.coef == 1);
    CHECK(mode_of(b.B[static_cast<size_t>(t.q)].label) == -1 - mode_of(b.A[static_cast<size_t>(t.p)].label));
  }
}

TEST_CASE("degree 2 alpha_1 block") {
  const int K = 4;
  const CanonicalBlock cb = compute_F(block_2alpha1(K, 3, 2), K);
  CHECK(cb.homogeneous);
  CHECK(cb.triangular);
  CHECK(cb.reproducing_a);
  CHECK(cb.reproducing_b);
  CHECK(cb.valuation == 2);
  CHECK(cb.leading_ok);
  CHECK(cb.leading_terms > 0);
}

TEST_CASE("A2 root vectors pair to hbar") {
  const int K = 4;
  const Block b = block_alpha12(K, 2, 2);
  int found = 0;
  for (const auto& a : b.A)
    for (const auto& w : b.B) {
      if (a.label.rfind("e12[", 0) != 0 || w.label.rfind("f12[", 0) != 0) continue;
      const int m = mode_of(a.label), n = mode_of(w.label);
      if (n != -1 - m) continue;
      CHECK(pair(a.a, w.b) == HSeries::monomial(K, 1, Q(1)));
      ++found;
    }
  CHECK(found > 0);
  CHECK(compute_F(b, K).passed());
}

TEST_CASE("factorization and cocycle") {
  const FactorizationReport f = check_factorization(3, 2, 1);
  CHECK(f.checked > 0);
  CHECK(f.mismatches == 0);
  CHECK(f.passed());
  const CocycleReport c = check_cocycle(3, 2, 1);
  CHECK(c.checked > 0);
  CHECK(c.mismatches == 0);
  CHECK(c.passed());
}
