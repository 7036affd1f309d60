#include "report.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "canonical.hpp"
#include "json.hpp"
#include "kernels.hpp"
#include "serre.hpp"

namespace qc {

namespace {

using J = nlohmann::ordered_json;

const std::vector<std::string> kSubcommands = {"kernels", "cartan", "serre", "shuffle", "gram", "canonical", "verify-all"};
const std::vector<std::string> kSuites = {"all", "kernels", "serre", "shuffle", "pairing", "canonical", "cartan"};
const std::vector<std::string> kBidegrees = {"all", "0", "a1", "2a1", "empty"};

bool one_of(const std::string& s, const std::vector<std::string>& xs) {
  return std::find(xs.begin(), xs.end(), s) != xs.end();
}
std::string listed(const std::vector<std::string>& xs) {
  std::string r;
  for (const auto& x : xs) r += (r.empty() ? "" : ", ") + x;
  return r;
}

J jq(const Q& q) { return qstr(q); }
J jh(const HSeries& h) {
  J a = J::array();
  for (const auto& c : h.coeffs()) a.push_back(qstr(c));
  return a;
}
J jpoly(const Poly& p) {
  J a = J::array();
  for (const auto& [e, c] : p.terms()) a.push_back(J{{"exponents", e}, {"hbar_coeffs", jh(c)}});
  return a;
}
J jgpoly(const GPoly& p) {
  J a = J::array();
  for (const auto& [m, c] : p) a.push_back(J{{"gamma_exponents", m}, {"coef", jq(c)}});
  return a;
}

J config_json(const RunConfig& c) {
  return J{{"curve", c.curve}, {"K", c.K},           {"window", {c.lo, c.hi}}, {"max_mode", c.max_mode},
           {"cartan", c.cartan}, {"suite", c.suite}, {"bidegree", c.bidegree}};
}

int mode_bound(const RunConfig& c) { return std::max(1, std::min({-c.lo, c.hi, 10})); }

// ---- kernels -------------------------------------------------------------------------

const std::vector<Q> kSigmas = {Q(-2), Q(-1), Q(1), Q(2), Q(4)};

J sigma_json(const KernelChecks& k) {
  return J{{"sigma", jq(k.sigma)},
           {"q_matches_closed", k.q_matches_closed},
           {"inverse_identity", k.inverse_identity},
           {"i_sigma_is_one", k.i_sigma_is_one},
           {"i_sigma_unit", k.i_sigma_unit},
           {"giov_identity", k.giov_identity},
           {"q_plus_factorization", k.q_plus_factorization},
           {"lemma_alpha_shift", k.lemma_alpha_shift},
           {"lemma_green_regular", k.lemma_green_regular},
           {"tau_constraint", k.tau_constraint},
           {"q_terms", k.q.poly().size()},
           {"i_sigma", jpoly(k.i_sigma.poly())}};
}
bool sigma_ok(const KernelChecks& k) {
  return k.q_matches_closed && k.inverse_identity && k.i_sigma_is_one && k.i_sigma_unit && k.giov_identity &&
         k.q_plus_factorization && k.lemma_alpha_shift && k.lemma_green_regular && k.tau_constraint;
}

struct GammaCheck {
  long negative_nonzero = 0;
  long inspected = 0;
  bool certified = false;
  Poly restriction{1, 1};
  bool passed() const { return negative_nonzero == 0 && certified; }
};
// Coefficients of d_z G - G^2 on exponent pairs with a negative entry, over the window.
GammaCheck check_gamma(int K, int lo, int hi) {
  GammaCheck g;
  const int reach = std::max(hi, -lo);
  const Frame fr = make_frame({"z", "w"}, {1, 0}, K, default_bound(K, reach, 2));
  const KernelFn G = green_kernel(fr, "z", "w");
  const KernelFn raw = G.diff("z") - G * G;
  const Window win = fr.window(lo, hi);
  g.certified = raw.certified_on(win);
  for (const auto& [e, c] : raw.poly().terms()) {
    if (!win.contains(e) || (e[0] >= 0 && e[1] >= 0)) continue;
    ++g.inspected;
    if (!c.is_zero()) ++g.negative_nonzero;
  }
  g.restriction = gamma_underline(K, reach).one_var;
  return g;
}

// Substitution oracle: plug the series back into psi' = D psi - 1 - gamma_0 psi^2 and
// phi' = D phi - gamma_0 psi term by term, with its own polynomial arithmetic.
bool ode_substitution_holds(const PsiPhi& pp) {
  using P = std::map<std::vector<int>, Q>;
  const int K = pp.psi.K, ng = pp.psi.ngam;
  auto add = [](P& a, const P& b, const Q& s) {
    for (const auto& [m, c] : b) a[m] += s * c;
  };
  auto mul = [&](const P& a, const P& b) {
    P r;
    for (const auto& [ma, ca] : a)
      for (const auto& [mb, cb] : b) {
        std::vector<int> m(static_cast<size_t>(ng));
        for (int i = 0; i < ng; ++i) m[i] = ma[i] + mb[i];
        r[m] += ca * cb;
      }
    return r;
  };
  auto D = [&](const P& a) {
    P r;
    for (const auto& [m, c] : a)
      for (int i = 0; i + 1 < ng; ++i) {
        if (m[i] == 0) continue;
        std::vector<int> n = m;
        --n[i];
        ++n[i + 1];
        r[n] += c * m[i];
      }
    return r;
  };
  auto clean = [](P a) {
    std::erase_if(a, [](const auto& kv) { return sgn(kv.second) == 0; });
    return a;
  };
  std::vector<int> z(static_cast<size_t>(ng), 0), g0 = z;
  g0[0] = 1;
  const P one{{z, Q(1)}}, gamma0{{g0, Q(1)}};
  auto series = [](const GammaSeries& s, int n) { return P(s.c[n].begin(), s.c[n].end()); };
  if (!clean(series(pp.psi, 0)).empty() || !clean(series(pp.phi, 0)).empty()) return false;
  for (int n = 0; n + 1 < K; ++n) {
    P sq;
    for (int i = 0; i <= n; ++i) add(sq, mul(series(pp.psi, i), series(pp.psi, n - i)), Q(1));
    P r = series(pp.psi, n + 1);
    for (auto& [m, c] : r) c *= n + 1;
    add(r, D(series(pp.psi, n)), Q(-1));
    if (n == 0) add(r, one, Q(1));
    add(r, mul(gamma0, sq), Q(1));
    if (!clean(r).empty()) return false;
    P rp = series(pp.phi, n + 1);
    for (auto& [m, c] : rp) c *= n + 1;
    add(rp, D(series(pp.phi, n)), Q(-1));
    add(rp, mul(gamma0, series(pp.psi, n)), Q(1));
    if (!clean(rp).empty()) return false;
  }
  return true;
}

struct OdeCheck {
  PsiPhi pp;
  bool psi1 = false, psi2 = false, psi3 = false, phi2 = false, oracle = false;
  bool passed() const { return psi1 && psi2 && psi3 && phi2 && oracle; }
};
OdeCheck check_ode(int K) {
  OdeCheck o;
  o.pp = solve_psi_phi(K);
  const int ng = o.pp.psi.ngam;
  GMono z(static_cast<size_t>(ng), 0), g0 = z;
  g0[0] = 1;
  o.psi1 = o.pp.psi.c[1] == GPoly{{z, Q(-1)}};
  o.psi2 = o.pp.psi.c[2].empty();
  o.psi3 = o.pp.psi.c[3] == GPoly{{g0, Q(-1, 3)}};
  o.phi2 = o.pp.phi.c[2] == GPoly{{g0, Q(1, 2)}};
  o.oracle = ode_substitution_holds(o.pp);
  return o;
}

const char* kOrientation = "q_sigma(z,w) = (z-w+sigma*hbar/2)/(z-w-sigma*hbar/2) expanded in w<<z";

J kernels_report(const RunConfig& c, bool& passed) {
  const auto curve = make_curve(c.curve, c.K, c.max_mode);
  J sig = J::array();
  passed = true;
  for (const Q& s : kSigmas) {
    const KernelChecks k = check_kernels(c.K, c.lo, c.hi, s, *curve);
    passed = passed && sigma_ok(k);
    sig.push_back(sigma_json(k));
  }
  const DeltaCheck d = check_delta(c.K, c.lo, c.hi);
  const GammaCheck g = check_gamma(c.K, c.lo, c.hi);
  const GeometryChecks geo = check_geometry(*curve);
  const OdeCheck o = check_ode(std::max(c.K, 4));
  J psi = J::array(), phi = J::array();
  for (int n = 0; n < o.pp.psi.K; ++n) {
    psi.push_back(jgpoly(o.pp.psi.c[n]));
    phi.push_back(jgpoly(o.pp.phi.c[n]));
  }
  const bool geo_ok = geo.dual_basis && geo.lagrangian && geo.derivation_preserves_R && geo.pairing_invariant;
  passed = passed && d.holds && g.passed() && o.passed() && geo_ok;
  return J{{"orientation", kOrientation},
           {"geometry",
            {{"dual_basis", geo.dual_basis},
             {"lagrangian", geo.lagrangian},
             {"derivation_preserves_R", geo.derivation_preserves_R},
             {"pairing_invariant", geo.pairing_invariant}}},
           {"sigmas", sig},
           {"delta", {{"holds", d.holds}, {"nonzero", d.dev.nonzero}, {"certified", d.dev.certified}}},
           {"gamma_underline",
            {{"negative_entries_inspected", g.inspected},
             {"negative_entries_nonzero", g.negative_nonzero},
             {"certified", g.certified},
             {"diagonal_restriction", jpoly(g.restriction)}}},
           {"ode",
            {{"psi1", o.psi1},
             {"psi2", o.psi2},
             {"psi3", o.psi3},
             {"phi2", o.phi2},
             {"substitution_oracle", o.oracle},
             {"psi", psi},
             {"phi", phi}}}};
}

// ---- cartan --------------------------------------------------------------------------

J cartan_json(const CartanReport& r) {
  J inv = J::array();
  for (const auto& row : r.inverse_cartan) {
    J jr = J::array();
    for (const auto& q : row) jr.push_back(jq(q));
    inv.push_back(jr);
  }
  J t2 = J::array();
  for (const auto& h : r.T2_on_z1) t2.push_back(jh(h));
  return J{{"cartan", r.cartan.name},
           {"K", r.K},
           {"max_mode", r.max_mode},
           {"T_zero_vanishes", r.T_zero_vanishes},
           {"T_mod_hbar_scalar", r.T_mod_hbar_scalar},
           {"inverse_two_sided", r.inverse_two_sided},
           {"inverse_leading_matches", r.inverse_leading_matches},
           {"A_log_derivative_zero", r.A_log_derivative_zero},
           {"alpha_antisymmetric", r.alpha_antisymmetric},
           {"U_zero", r.U_zero},
           {"rho_solves", r.rho_solves},
           {"C_solves", r.C_solves},
           {"rho_zero", r.rho_zero},
           {"C_zero", r.C_zero},
           {"r_antisymmetry", r.r_antisymmetry},
           {"r_zero", r.r_zero},
           {"inverse_cartan", inv},
           {"T2_on_z1", t2},
           {"passed", r.passed()}};
}

// ---- serre ---------------------------------------------------------------------------

J serre_json(const SerreReport& r) {
  return J{{"K", r.K},
           {"window", {r.lo, r.hi}},
           {"ratios_leading", r.ratios_leading},
           {"ratio_consistency", r.ratio_consistency},
           {"ratio_conditions", r.ratio_conditions},
           {"compat2", r.compat2},
           {"compat2_glue", r.compat2_glue},
           {"glue_alpha", r.glue_alpha},
           {"t_diag_one", r.t_diag_one},
           {"glue_alphap", r.glue_alphap},
           {"wronskian_unit", r.wronskian_unit},
           {"gammap_polynomial", r.gammap_polynomial},
           {"gammap_regular", r.gammap_regular},
           {"memberships", r.memberships},
           {"main_identity", r.main_identity},
           {"main_identity_scaled", r.main_identity_scaled},
           {"main_deviation_nonzero", r.main_dev.nonzero},
           {"reindex_identity", r.reindex_identity},
           {"substitution_checks", {{"first", r.kawa}, {"second", r.kita}, {"third", r.shira}}},
           {"divisibility", r.divisibility},
           {"system",
            {{"alpha", jpoly(r.sys.alpha.poly())},
             {"beta", jpoly(r.sys.beta.poly())},
             {"gamma", jpoly(r.sys.gamma.poly())},
             {"alphap", jpoly(r.sys.alphap.poly())},
             {"betap", jpoly(r.sys.betap.poly())},
             {"gammap", jpoly(r.sys.gammap.poly())}}},
           {"passed", r.passed()}};
}

// ---- shuffle / pairing ---------------------------------------------------------------

J shuffle_json(const ShuffleReport& r) {
  return J{{"K", r.K},
           {"window", r.window},
           {"seed", r.seed},
           {"associativity", {{"checked", r.assoc_checked}, {"failed", r.assoc_failed}}},
           {"vertex_elements", {{"checked", r.vertex_checked}, {"nonzero", r.vertex_nonzero}}},
           {"serre_elements", {{"checked", r.serre_checked}, {"nonzero", r.serre_nonzero}}},
           {"passed", r.passed()}};
}

J gram_json(const GramReport& g) {
  J m = J::array();
  for (const auto& row : g.matrix) {
    J jr = J::array();
    for (const auto& h : row) jr.push_back(jh(h));
    m.push_back(jr);
  }
  return J{{"bidegree", g.bidegree},
           {"K", g.K},
           {"valuation_offset", g.valuation_offset},
           {"rows", g.row_labels},
           {"cols", g.col_labels},
           {"matrix", m},
           {"det", jh(g.det)},
           {"det_valuation", g.det_valuation},
           {"rank_mod_hbar", g.rank_mod_hbar},
           {"kernel_dim", g.kernel_dim},
           {"square", g.square},
           {"nondegenerate", g.nondegenerate}};
}

// Degree 0 pairs 1 with the empty word; a mismatched bidegree has no column basis.
J trivial_gram(bool empty, int K) {
  return J{{"bidegree", empty ? "(a1,0)" : "(0,0)"},
           {"K", K},
           {"valuation_offset", 0},
           {"rows", {empty ? "e[-1]" : "1"}},
           {"cols", empty ? J::array() : J::array({"1"})},
           {"matrix", empty ? J::array({J::array()}) : J::array({J::array({jh(HSeries::constant(K, 1))})})},
           {"det", jh(HSeries::constant(K, empty ? 0 : 1))},
           {"det_valuation", empty ? K : 0},
           {"rank_mod_hbar", empty ? 0 : 1},
           {"kernel_dim", empty ? 1 : 0},
           {"square", !empty},
           {"nondegenerate", !empty}};
}

J hopf_json(const HopfReport& h) {
  J s = J::array();
  for (const auto& x : h.samples)
    s.push_back(J{{"rule", x.rule},
                  {"cartan", x.cartan},
                  {"sample", x.description},
                  {"lhs", jh(x.value.lhs)},
                  {"rhs", jh(x.value.rhs)},
                  {"holds", x.value.holds()}});
  return J{{"K", h.K}, {"seed", h.seed}, {"nonzero", h.nonzero}, {"samples", s}, {"passed", h.passed()}};
}

J annihilator_json(const AnnihilatorReport& a) {
  return J{{"K", a.K},
           {"window", a.window},
           {"products", a.products},
           {"pairings", a.pairings},
           {"nonzero", a.nonzero},
           {"in_rows", a.in_rows},
           {"out_cols", a.out_cols},
           {"rank", a.rank},
           {"predicted", a.predicted},
           {"degree1_full", a.degree1_full},
           {"passed", a.passed()}};
}

J gram_report(const RunConfig& c, bool& passed) {
  const int M = std::clamp(c.max_mode, 1, 6);
  J blocks = J::array();
  passed = true;
  const bool all = c.bidegree == "all";
  if (c.bidegree == "0") blocks.push_back(trivial_gram(false, c.K));
  if (c.bidegree == "empty") blocks.push_back(trivial_gram(true, c.K));
  if (all || c.bidegree == "a1") {
    const GramReport g = gram_alpha1(c.K, M);
    passed = passed && g.nondegenerate;
    blocks.push_back(gram_json(g));
  }
  if (all || c.bidegree == "2a1") {
    const GramReport g = gram_2alpha1(c.K, M);
    passed = passed && g.nondegenerate;
    blocks.push_back(gram_json(g));
  }
  J r{{"modes", M}, {"blocks", blocks}};
  if (all) {
    const HopfReport h = check_hopf_rules(c.K, 12, 7);
    const AnnihilatorReport a = check_annihilator(c.K, 3);
    passed = passed && h.passed() && a.passed();
    r["hopf_rules"] = hopf_json(h);
    r["annihilator"] = annihilator_json(a);
  }
  return r;
}

// ---- canonical -----------------------------------------------------------------------

J block_json(const CanonicalBlock& cb) {
  const Block& b = cb.block;
  J rows = J::array(), cols = J::array(), terms = J::array();
  for (const auto& a : b.A) rows.push_back(a.label);
  for (const auto& x : b.B) cols.push_back(x.label);
  for (const auto& f : cb.F)
    terms.push_back(J{{"a", b.A[f.p].label}, {"b", b.B[f.q].label}, {"hbar_power", f.power}, {"coef", jq(f.coef)}});
  return J{{"bidegree", b.bidegree},
           {"cartan", b.cartan.name},
           {"K", cb.K},
           {"letters", b.letters},
           {"ell", b.ell},
           {"valuation_offset", -b.letters},
           {"rows", rows},
           {"cols", cols},
           {"terms", terms},
           {"homogeneous", cb.homogeneous},
           {"triangular", cb.triangular},
           {"reproducing_b", cb.reproducing_b},
           {"reproducing_a", cb.reproducing_a},
           {"valuation", cb.valuation},
           {"valuation_ok", cb.valuation_ok},
           {"leading_terms", cb.leading_terms},
           {"leading_ok", cb.leading_ok},
           {"passed", cb.passed()}};
}

J factorization_json(const FactorizationReport& f) {
  return J{{"K", f.K},
           {"in_modes", f.N},
           {"degree_top", f.D},
           {"degree_a1", f.degree1},
           {"degree_2a1", f.degree2},
           {"f1_second_legs_out", f.f1_second_legs_out},
           {"f2_first_legs_out", f.f2_first_legs_out},
           {"checked", f.checked},
           {"mismatches", f.mismatches},
           {"passed", f.passed()}};
}

J cocycle_json(const CocycleReport& c) {
  return J{{"K", c.K},
           {"in_modes", c.N},
           {"degree_top", c.D},
           {"degree_0", c.degree0},
           {"degree_a1", c.degree1},
           {"coproduct_first_leg", c.coproduct_A_side},
           {"coproduct_second_leg", c.coproduct_B_side},
           {"checked", c.checked},
           {"mismatches", c.mismatches},
           {"passed", c.passed()}};
}

// Block sizes: shuffle-side modes >= -N, degrees up to D.
constexpr int kA1N = 3, kA1D = 2, kA2N = 2, kA2D = 2;

J canonical_report(const RunConfig& c, bool& passed, bool both_types) {
  J blocks = J::array();
  passed = true;
  // degree 0: F = 1 (x) 1
  blocks.push_back(J{{"bidegree", "(0,0)"},
                     {"terms", J::array({J{{"a", "1"}, {"b", "1"}, {"hbar_power", 0}, {"coef", "1/1"}}})},
                     {"passed", true}});
  std::vector<Block> todo;
  if (both_types || c.cartan == "A1") {
    todo.push_back(block_alpha1(c.K, kA1N, kA1D));
    todo.push_back(block_2alpha1(c.K, kA1N, kA1D));
  }
  if (both_types || c.cartan == "A2") todo.push_back(block_alpha12(c.K, kA2N, kA2D));
  for (const auto& b : todo) {
    const CanonicalBlock cb = compute_F(b, c.K);
    passed = passed && cb.passed();
    blocks.push_back(block_json(cb));
  }
  J r{{"blocks", blocks}};
  if (both_types || c.cartan == "A1") {
    const FactorizationReport f = check_factorization(4, 2, 1);
    const CocycleReport k = check_cocycle(3, 2, 1);
    passed = passed && f.passed() && k.passed();
    r["factorization"] = factorization_json(f);
    r["cocycle"] = cocycle_json(k);
  }
  return r;
}

// ---- verify-all ----------------------------------------------------------------------

struct Criterion {
  int id;
  std::string suite, name;
  std::function<J(bool&)> body;
};

std::vector<Criterion> criteria(const RunConfig& c) {
  const auto curve = [c](int K) { return make_curve(c.curve, K, c.max_mode); };
  std::vector<Criterion> v;
  v.push_back({1, "kernels", "kernel closed form", [=](bool& ok) {
                 J s = J::array();
                 ok = true;
                 for (const Q& sg : kSigmas) {
                   const KernelChecks k = check_kernels(c.K, c.lo, c.hi, sg, *curve(c.K));
                   ok = ok && k.q_matches_closed && k.i_sigma_is_one;
                   s.push_back(J{{"sigma", jq(sg)}, {"q_matches_closed", k.q_matches_closed}, {"i_sigma_is_one", k.i_sigma_is_one}});
                 }
                 return J{{"orientation", kOrientation}, {"K", c.K}, {"window", {c.lo, c.hi}}, {"sigmas", s}};
               }});
  v.push_back({2, "kernels", "inverse identity", [=](bool& ok) {
                 J s = J::array();
                 ok = true;
                 for (const Q& sg : {Q(-2), Q(2), Q(4)}) {
                   const KernelChecks k = check_kernels(c.K, c.lo, c.hi, sg, *curve(c.K));
                   ok = ok && k.inverse_identity;
                   s.push_back(J{{"sigma", jq(sg)}, {"inverse_identity", k.inverse_identity}});
                 }
                 return J{{"K", c.K}, {"sigmas", s}};
               }});
  v.push_back({3, "kernels", "gamma underline regular", [=](bool& ok) {
                 const GammaCheck g = check_gamma(c.K, c.lo, c.hi);
                 ok = g.passed();
                 return J{{"inspected", g.inspected}, {"nonzero", g.negative_nonzero}, {"certified", g.certified}};
               }});
  v.push_back({4, "kernels", "ode series", [=](bool& ok) {
                 const OdeCheck o = check_ode(std::max(c.K, 6));
                 ok = o.passed();
                 return J{{"K", o.pp.psi.K},
                          {"psi1", o.psi1},
                          {"psi2", o.psi2},
                          {"psi3", o.psi3},
                          {"phi2", o.phi2},
                          {"substitution_oracle", o.oracle}};
               }});
  v.push_back({5, "kernels", "giov identity", [=](bool& ok) {
                 const KernelChecks k = check_kernels(5, -8, 8, Q(1), *curve(5));
                 ok = k.giov_identity;
                 return J{{"K", 5}, {"window", {-8, 8}}, {"giov_identity", k.giov_identity}};
               }});
  v.push_back({6, "serre", "serre synthesis", [=](bool& ok) {
                 const SerreReport r = run_serre(*curve(5), -8, 8);
                 ok = r.passed();
                 return J{{"K", 5},
                          {"window", {-8, 8}},
                          {"memberships", r.memberships},
                          {"compat2", r.compat2 && r.compat2_glue},
                          {"t_diag_one", r.t_diag_one},
                          {"main_identity", r.main_identity},
                          {"main_deviation_nonzero", r.main_dev.nonzero},
                          {"substitution_checks", r.kawa && r.kita && r.shira},
                          {"all_flags", r.passed()}};
               }});
  v.push_back({7, "shuffle", "shuffle algebra", [=](bool& ok) {
                 const ShuffleReport r = check_shuffle(4, 6, 20, 11);
                 ok = r.passed();
                 return shuffle_json(r);
               }});
  v.push_back({8, "pairing", "gram blocks and hopf rules", [=](bool& ok) {
                 const GramReport g1 = gram_alpha1(4, 4), g2 = gram_2alpha1(4, 4);
                 const HopfReport h = check_hopf_rules(4, 12, 7);
                 const long samples = static_cast<long>(h.samples.size());
                 ok = g1.nondegenerate && g2.nondegenerate && h.passed() && samples >= 10;
                 return J{{"gram_a1", {{"size", g1.row_labels.size()}, {"det", jh(g1.det)}, {"nondegenerate", g1.nondegenerate}}},
                          {"gram_2a1", {{"size", g2.row_labels.size()}, {"det", jh(g2.det)}, {"nondegenerate", g2.nondegenerate}}},
                          {"hopf_samples", samples},
                          {"hopf_nonzero", h.nonzero},
                          {"hopf_passed", h.passed()}};
               }});
  v.push_back({9, "pairing", "annihilator", [=](bool& ok) {
                 const AnnihilatorReport a = check_annihilator(4, 3);
                 ok = a.passed();
                 return annihilator_json(a);
               }});
  v.push_back({10, "canonical", "canonical element", [=](bool& ok) {
                 J b = J::array();
                 ok = true;
                 for (const auto& blk : {block_alpha1(c.K, kA1N, kA1D), block_2alpha1(c.K, kA1N, kA1D),
                                         block_alpha12(c.K, kA2N, kA2D)}) {
                   const CanonicalBlock cb = compute_F(blk, c.K);
                   ok = ok && cb.passed();
                   b.push_back(J{{"bidegree", blk.bidegree},
                                 {"cartan", blk.cartan.name},
                                 {"size", blk.A.size()},
                                 {"reproducing", cb.reproducing_a && cb.reproducing_b},
                                 {"valuation", cb.valuation},
                                 {"ell", blk.ell},
                                 {"leading_ok", cb.leading_ok},
                                 {"passed", cb.passed()}});
                 }
                 const FactorizationReport f = check_factorization(4, 2, 1);
                 const CocycleReport k = check_cocycle(3, 2, 1);
                 ok = ok && f.passed() && k.passed();
                 return J{{"blocks", b}, {"factorization", factorization_json(f)}, {"cocycle", cocycle_json(k)}};
               }});
  v.push_back({11, "cartan", "cartan tower", [=](bool& ok) {
                 J t = J::array();
                 ok = true;
                 for (const char* name : {"A1", "A2"}) {
                   const CartanData cd = make_cartan(name);
                   const CartanReport r = run_cartan(cd, 6, c.max_mode);
                   const CartanReport r4 = run_cartan(cd, 4, c.max_mode);
                   const bool good = r.inverse_two_sided && r.inverse_leading_matches && r.T_mod_hbar_scalar &&
                                     r4.r_antisymmetry && r.passed() && r4.passed();
                   ok = ok && good;
                   t.push_back(J{{"cartan", name},
                                 {"inverse_two_sided", r.inverse_two_sided},
                                 {"mod_hbar_blocks", r.inverse_leading_matches && r.T_mod_hbar_scalar},
                                 {"r_antisymmetry_K4", r4.r_antisymmetry},
                                 {"all_flags", r.passed() && r4.passed()}});
                 }
                 return J{{"types", t}};
               }});
  return v;
}

J verify_report(const RunConfig& c, bool& passed) {
  J list = J::array();
  passed = true;
  for (const auto& cr : criteria(c)) {
    if (c.suite != "all" && c.suite != cr.suite) continue;
    bool ok = false;
    J details;
    try {
      details = cr.body(ok);
    } catch (const Error& e) {
      ok = false;
      details = J{{"error", e.what()}};
    }
    passed = passed && ok;
    list.push_back(J{{"id", cr.id}, {"name", cr.name}, {"passed", ok}, {"details", details}});
  }
  return J{{"criteria", list}};
}

}  // namespace

bool is_subcommand(const std::string& s) { return one_of(s, kSubcommands); }

void RunConfig::validate() const {
  require(curve == "rational", ErrorKind::Config, "unsupported curve '" + curve + "' (only rational)");
  require(K >= 2, ErrorKind::Config, "K must be at least 2");
  require(lo < hi, ErrorKind::Config, "window must satisfy lo < hi");
  require(static_cast<long>(hi) - lo >= 2L * K, ErrorKind::Config, "window must span at least 2K");
  require(max_mode >= 1, ErrorKind::Config, "max_mode must be at least 1");
  require(cartan == "A1" || cartan == "A2", ErrorKind::Config, "unknown cartan '" + cartan + "' (A1 or A2)");
  require(one_of(suite, kSuites), ErrorKind::Config, "unknown suite '" + suite + "' (" + listed(kSuites) + ")");
  require(one_of(bidegree, kBidegrees), ErrorKind::Config,
          "unknown bidegree '" + bidegree + "' (" + listed(kBidegrees) + ")");
}

RunConfig config_from_json(const std::string& text, RunConfig c) {
  J j;
  try {
    j = J::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Config, std::string("config is not valid JSON: ") + e.what());
  }
  require(j.is_object(), ErrorKind::Config, "config must be a JSON object");
  auto int_of = [](const J& v, const std::string& key) {
    require(v.is_number_integer(), ErrorKind::Config, "config key '" + key + "' must be an integer");
    return v.get<int>();
  };
  auto str_of = [](const J& v, const std::string& key) {
    require(v.is_string(), ErrorKind::Config, "config key '" + key + "' must be a string");
    return v.get<std::string>();
  };
  for (const auto& [key, v] : j.items()) {
    if (key == "curve") {
      c.curve = str_of(v, key);
    } else if (key == "K") {
      c.K = int_of(v, key);
    } else if (key == "window") {
      require(v.is_array() && v.size() == 2, ErrorKind::Config, "config key 'window' must be [lo, hi]");
      c.lo = int_of(v[0], key);
      c.hi = int_of(v[1], key);
    } else if (key == "max_mode") {
      c.max_mode = int_of(v, key);
    } else if (key == "cartan") {
      c.cartan = str_of(v, key);
    } else if (key == "suite") {
      c.suite = str_of(v, key);
    } else if (key == "bidegree") {
      c.bidegree = str_of(v, key);
    } else {
      fail(ErrorKind::Config, "unknown config key '" + key + "'");
    }
  }
  return c;
}

RunResult run(const std::string& sub, const RunConfig& cfg) {
  cfg.validate();
  require(is_subcommand(sub), ErrorKind::Config, "unknown subcommand '" + sub + "' (" + listed(kSubcommands) + ")");
  J body;
  bool passed = false;
  if (sub == "kernels") {
    body = kernels_report(cfg, passed);
  } else if (sub == "cartan") {
    const CartanReport r = run_cartan(make_cartan(cfg.cartan), cfg.K, cfg.max_mode);
    body = cartan_json(r);
    passed = r.passed();
  } else if (sub == "serre") {
    const auto curve = make_curve(cfg.curve, cfg.K, cfg.max_mode);
    const SerreReport r = run_serre(*curve, cfg.lo, cfg.hi);
    body = serre_json(r);
    passed = r.passed();
  } else if (sub == "shuffle") {
    const ShuffleReport r = check_shuffle(cfg.K, std::min(mode_bound(cfg), 6), 20, 11);
    body = shuffle_json(r);
    passed = r.passed();
  } else if (sub == "gram") {
    body = gram_report(cfg, passed);
  } else if (sub == "canonical") {
    body = canonical_report(cfg, passed, false);
  } else {
    body = verify_report(cfg, passed);
  }
  J out{{"schema", kSchema}, {"command", sub}, {"config", config_json(cfg)}};
  for (auto& [k, v] : body.items()) out[k] = v;
  out["passed"] = passed;
  return {out.dump(2) + "\n", passed};
}

}  // namespace qc
