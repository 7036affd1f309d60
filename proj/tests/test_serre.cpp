#include "doctest.h"
#include "serre.hpp"

using namespace qc;

namespace {
bool same(const KernelFn& a, const KernelFn& b) { return (a - b).poly().is_zero(); }
}  // namespace

TEST_CASE("exact composition shifts arguments") {
  const Frame fr = make_frame({"a", "b"}, {0, 1}, 3, KernelFn::kExact);
  const KernelFn f = fr.linear("a", "b", 0);
  // f(a + hbar, b) = a - b + hbar
  CHECK(same(compose(f, fr, {{"a", Q(1)}, {"b", Q(0)}}), fr.linear("a", "b", 1)));
  // f(b, a) = -(a - b)
  CHECK(same(compose(f, fr, {{"b", Q(0)}, {"a", Q(0)}}), -f));
}

TEST_CASE("quantum Serre coefficients on the rational curve") {
  const RationalCurve c(4, 8);
  const SerreReport r = run_serre(c, -6, 6);
  CHECK(r.ratios_leading);
  CHECK(r.ratio_consistency);
  CHECK(r.ratio_conditions);
  CHECK(r.glue_alpha);
  CHECK(r.glue_alphap);
  CHECK(r.wronskian_unit);
  CHECK(r.gammap_polynomial);
  CHECK(r.gammap_regular);
  CHECK(r.main_identity);
  CHECK(r.main_identity_scaled);
  CHECK(r.divisibility);
  CHECK(r.main_dev.zero());
  CHECK(r.passed());
}
