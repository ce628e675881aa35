// Prints one PASS/FAIL line per acceptance criterion; exits nonzero on any FAIL.

#include "coulomb/descent.hpp"
#include "coulomb/golden.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>

using namespace coulomb;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string format(const char* fmt, double x) {
  char buf[128];
  std::snprintf(buf, sizeof buf, fmt, x);
  return buf;
}

std::vector<golden::Case> extended_corpus() {
  auto all = golden::corpus();
  all.push_back(golden::su2_so6());
  all.push_back(golden::sp1_so3());
  return all;
}

bool identities_hold(const PolarizationSplit& split, const WeylGroup& w) {
  for (std::size_t u = 0; u < w.size(); ++u)
    for (std::size_t v = 0; v < w.size(); ++v) {
      const Vec c = cocycle_c(split, w, u, v);
      if (delta_chi(split, w, u, v) != c) return false;
      const SignAndMonomial k = delta_kappa(split, w, u, v);
      if (k.sign != c || k.monomial != cocycle_d(split, w, u, v)) return false;
    }
  return true;
}

bool verifiers_zero(const PolarizationSplit& split, const WeylGroup& w) {
  for (std::size_t u = 0; u < w.size(); ++u) {
    if (!verify_vepchikappa(split, w, u).coboundary.is_identity()) return false;
    if (!verify_vepchikappa_character(split, w, u).coboundary.is_identity()) return false;
    if (!verify_regweyl(split, w, u).is_identity() || !verify_regweyl_character(split, w, u).is_identity())
      return false;
  }
  const auto cl = charge_conjugation_linear(split);
  const auto ck = charge_conjugation_character(split);
  return compose(cl, cl, w).shift == c_squared_linear(split) && compose(ck, ck, w).shift == c_squared_character(split);
}

Outcome criterion_1() {
  const auto t0 = Clock::now();
  std::size_t pairs = 0;
  bool ok = true;
  for (const auto& c : golden::corpus()) {
    const WeylGroup w = enumerate_weyl(*c.datum);
    ok = ok && identities_hold(polarize(c.rep, c.xi0, c.invariant_half), w);
    pairs += w.size() * w.size();
  }
  const double t = seconds_since(t0);
  return {ok && t < 10.0, std::to_string(pairs) + " Weyl pairs over the corpus" + format(", %.2f s (limit 10 s)", t)};
}

Outcome criterion_2() {
  const auto c = golden::su2_cubed();
  const WeylGroup w = enumerate_weyl(*c.datum);
  const PolarizationSplit split = polarize(c.rep, c.xi0, c.invariant_half);
  const auto s2 = cochain_s2(split, w);
  const bool crossed = verify_crossed_hom(s2, w).ok;
  const bool exact = solve_coboundary_s2(s2, w).solvable();
  return {crossed && !exact, std::string("s(x)2 crossed hom ") + (crossed ? "ok" : "broken") + ", exact " +
                                 (exact ? "yes" : "no")};
}

Outcome criterion_3() {
  const auto c = golden::sp2_complement();
  const WeylGroup w = enumerate_weyl(*c.datum);
  const PolarizationSplit split = polarize(c.rep, c.xi0, c.invariant_half);
  const auto minus = w.longest_negation();
  if (!minus) return {false, "-1 is not in the Weyl group"};
  const FormalLinearSection chi = chi_w(split, w, *minus);
  const FormalLinearSection shown = invert(chi);
  // displayed in coordinates ξ' = Mξ: rows ν13, ν31, ν1-3, ν3-1, each the weight itself
  IntMatrix m(2, 2);
  m(0, 0) = m(0, 1) = m(1, 0) = 1;
  m(1, 1) = -1;
  const std::vector<Vec> display{{1, 3}, {3, 1}, {1, -3}, {3, -1}};
  bool matrix = is_zero(shown.sign()) && shown.scalars().empty() && shown.factors().size() == display.size();
  for (const auto& [k, l] : shown.factors()) {
    const Vec pk = m * k;
    matrix = matrix && std::find(display.begin(), display.end(), pk) != display.end() && m * l == pk;
  }
  const bool nontrivial = !torsor_parity(chi).coboundary_possible;
  return {matrix && nontrivial, std::string("chi matrix ") + (matrix ? "matches" : "differs") + ", parity " +
                                    (nontrivial ? "nontrivial" : "trivial")};
}

Outcome criterion_4() {
  const auto c = golden::su2_u1();
  const WeylGroup w = enumerate_weyl(*c.datum);
  const PolarizationSplit split = polarize(c.rep, c.xi0, c.invariant_half);
  const std::size_t s = w.index_of(root_reflection(c.datum->roots[0], c.datum->coroots[0]));
  const Vec alpha = orientation(c.datum->roots[0], Vec(2, 0)) > 0 ? c.datum->roots[0] : neg(c.datum->roots[0]);
  HyperplaneRestriction r = restrict_to_hyperplane(invert(chi_w(split, w, s)), *c.datum, alpha);
  // [-ξ2², -1]: one key (0,1) with exponents (2,0), both signs set, no scalars
  const bool residual = r.residual.factors().size() == 1 && r.residual.factors().count({0, 1}) &&
                        r.residual.factors().at({0, 1}) == Vec{2, 0} && r.residual.sign() == Vec{1, 1} &&
                        r.residual.scalars().empty();
  const bool before = hyperplane_class(r).trivial();
  r.residual.add_sign({0, 1});
  const bool after = hyperplane_class(r).trivial();
  return {residual && !before && after, std::string("residual ") + (residual ? "[-xi2^2, -1]" : "differs") +
                                            ", class before/after flip " + (before ? "trivial" : "nontrivial") + "/" +
                                            (after ? "trivial" : "nontrivial")};
}

Outcome criterion_5() {
  const auto t0 = Clock::now();
  const auto so6 = golden::su2_so6();
  const ClassificationCase k6 = classify_irreducible(so6.rep, *so6.factorization);
  const PrimaryStatus s6 = primary_status(w4_square_root_search(so6.rep));
  auto sp1 = std::make_shared<RootDatum>(build_simple(Family::Sp, 1));
  const WeightMultiset h = standard_rep(sp1, 0);
  const ClassificationCase kh = classify_irreducible(h, TensorFactorization{0, trivial_rep(sp1, 1), h});
  const PrimaryStatus sh = primary_status(w4_square_root_search(h));
  // the square-root search against exactness of c, case by case
  bool agree = true;
  for (const auto& c : extended_corpus()) {
    const WeylGroup w = enumerate_weyl(*c.datum);
    const bool exact = solve_coboundary_c(cochain_c(polarize(c.rep, c.xi0, c.invariant_half), w), w).solvable();
    agree = agree && w4_square_root_search(c.rep)[0].in_group == exact;
    if (c.factorization) agree = agree && expected_status(classify_irreducible(c.rep, *c.factorization)) ==
                                              primary_status(w4_square_root_search(c.rep));
  }
  const double t = seconds_since(t0);
  const bool ok = k6 == ClassificationCase::case_ii && s6 == PrimaryStatus::mod2_only &&
                  kh == ClassificationCase::case_i && sh == PrimaryStatus::obstructed && agree && t < 5.0;
  return {ok, "su2_so6 " + case_name(k6) + "/" + status_name(s6) + ", Sp(1) on H " + case_name(kh) + "/" +
                  status_name(sh) + (agree ? ", corpus agrees" : ", corpus disagrees") +
                  format(", %.2f s (limit 5 s)", t)};
}

Outcome criterion_6() {
  const auto c = golden::so4_sp1();
  const SigmaResult sigma = secondary_sigma(c.rep, c.factorization);
  const WeylGroup w = enumerate_weyl(*c.datum);
  const bool exact = solve_coboundary_s2(cochain_s2(polarize(c.rep, c.xi0, c.invariant_half), w), w).solvable();
  return {sigma.status == SigmaStatus::nonzero && !exact,
          "sigma " + sigma_name(sigma.status) + ", s(x)2 exact " + (exact ? "yes" : "no")};
}

Rational frac(Rational q) {
  const Int n = q.numerator(), m = q.denominator();
  return Rational(((n % m) + m) % m, m);
}

Rational half_sum_squares(const std::vector<Rational>& x, Int divisor) {
  Rational s(0);
  for (const auto& v : x) s += v * v;
  return s / divisor;
}

// the characteristic class evaluated on the central coweight that generates
// the kernel: ±q(x) mod 1
Outcome criterion_7() {
  std::size_t rows = 0;
  bool ok = true;
  auto check = [&](TransgressionCase k, Int n, Rational expected) {
    ok = ok && d5_transgression(k, n) == frac(expected);
    ++rows;
  };
  for (Int m = 1; m <= 4; ++m) check(TransgressionCase::PSp_c2, m, -half_sum_squares(std::vector<Rational>(m, Rational(1, 2)), 1));
  for (Int n = 2; n <= 5; ++n) {
    std::vector<Rational> x(n, Rational(-1, n));
    x[0] += 1;
    check(TransgressionCase::PSU_c2, n, -half_sum_squares(x, 2));
  }
  for (Int l = 2; l <= 5; ++l) {
    std::vector<Rational> b(l, Rational(1, 2)), a(l, Rational(0));
    a[0] = 1;
    check(TransgressionCase::Spin_b_p1half, l, half_sum_squares(b, 2));
    check(TransgressionCase::Spin_a_p1half, l, half_sum_squares(a, 2));
    check(TransgressionCase::SO_p1, l, half_sum_squares(a, 1));
    check(TransgressionCase::PSO_p1, l, half_sum_squares(b, 1));
  }
  for (Int k = 1; k <= 2; ++k) {
    std::vector<Rational> bm(2 * k, Rational(1, 2));
    bm.back() = Rational(-1, 2);
    check(TransgressionCase::Spin4k_bplus_p1half, k, half_sum_squares(bm, 2));
  }
  return {ok, std::to_string(rows) + " table entries"};
}

Outcome criterion_8() {
  std::mt19937 rng(20240611);
  const auto groups = golden::corpus();
  std::size_t passed = 0;
  std::string failure;
  for (int trial = 0; trial < 20; ++trial) {
    const auto& g = groups[std::uniform_int_distribution<std::size_t>(0, groups.size() - 1)(rng)];
    const WeylGroup w = enumerate_weyl(*g.datum);
    const std::size_t r = g.datum->rank();
    // V is a sum of W-orbits of random nonzero weights, E = V + V*
    WeightMap e;
    const int orbits = std::uniform_int_distribution<int>(1, 2)(rng);
    for (int o = 0; o < orbits; ++o) {
      Vec nu(r, 0);
      while (is_zero(nu))
        for (auto& x : nu) x = std::uniform_int_distribution<Int>(-2, 2)(rng);
      const Int mult = std::uniform_int_distribution<Int>(1, 2)(rng);
      std::set<Vec> orbit;
      for (std::size_t u = 0; u < w.size(); ++u) orbit.insert(w.act(u, nu));
      for (const Vec& x : orbit) {
        e[x] += mult;
        e[neg(x)] += mult;
      }
    }
    const WeightMultiset rep = WeightMultiset::from_intrinsic(g.datum, e);
    const PolarizationSplit split = polarize(rep, default_xi0(*g.datum, e));
    const auto v = weyl_polarization(rep, w);
    const bool ok = identities_hold(split, w) && verifiers_zero(split, w) &&
                    solve_coboundary_c(cochain_c(split, w), w).solvable() &&
                    solve_coboundary_s2(cochain_s2(split, w), w).solvable() && v &&
                    trivializes(split, w, polarized_trivialization(split, *v));
    if (ok) {
      ++passed;
    } else if (failure.empty()) {
      failure = ", first failure on " + g.name + " trial " + std::to_string(trial);
    }
  }
  return {passed == 20, std::to_string(passed) + "/20 random polarized inputs" + failure};
}

Outcome criterion_9() {
  // S = Σ_{n>0} (n/2)·mult over SU(2) weights n; the affine count keeps even n
  auto d = golden::su2();
  struct Row {
    std::string name;
    WeightMultiset rep;
  };
  const std::vector<Row> rows{{"0", golden::su2_zero().rep},
                              {"H", golden::su2_h().rep},
                              {"2H", golden::su2_2h().rep},
                              {"spin3/2", golden::su2_spin3_2().rep},
                              {"g_H", quaternionify(adjoint_rep(d))}};
  std::string pattern;
  bool ok = true;
  for (const auto& row : rows) {
    Rational s(0), s_int(0);
    for (const auto& [nu, m] : row.rep.intrinsic())
      if (nu[0] > 0) {
        s += Rational(nu[0] * m, 2);
        if (nu[0] % 2 == 0) s_int += Rational(nu[0] * m, 2);
      }
    const bool c3 = s >= Rational(2), c4 = c3 && s_int >= Rational(2);
    const AbelianizedModel model = abelianizable(row.rep);
    ok = ok && model.eligible_c3() == c3 && model.eligible_c4() == c4;
    pattern += (pattern.empty() ? "" : ", ") + row.name + ":" + (c4 ? "both" : c3 ? "c3 only" : "neither");
  }
  // the three outcomes all occur
  ok = ok && pattern.find("neither") != std::string::npos && pattern.find("c3 only") != std::string::npos &&
       pattern.find("both") != std::string::npos;
  return {ok, pattern};
}

Outcome criterion_10() {
  std::size_t members = 0;
  bool ok = true;
  for (const auto& c : extended_corpus()) {
    const auto roots = w4_square_root_search(c.rep);
    if (primary_status(roots) != PrimaryStatus::unobstructed) continue;
    ++members;
    if (!roots[0].lift) {
      ok = false;
      continue;
    }
    const EvenChoice dim_s = even_choice(*roots[0].lift);
    const PolarizationSplit split = polarize(c.rep, c.xi0, c.invariant_half);
    for (std::size_t i = 0; i < c.datum->rank(); ++i) {
      const Vec g = detail::unit(c.datum->rank(), i);
      ok = ok && fiber_dimension(split, g, dim_s(g)) % 2 == 0;
    }
  }
  return {ok, std::to_string(members) + " unobstructed inputs"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"delta_chi = c and delta_kappa = (c,d) on the corpus", criterion_1},
      {"su2_cubed: s(x)2 is not exact", criterion_2},
      {"sp2_complement: chi matrix and nontrivial torsor parity", criterion_3},
      {"su2_u1: residual [-xi2^2, -1], trivial after the bottom-sign flip", criterion_4},
      {"obstruction cross-validation", criterion_5},
      {"SO(4)x_mu2 Sp(1): sigma nonzero and s(x)2 not exact", criterion_6},
      {"d5 transgression table", criterion_7},
      {"random W-invariant polarizations", criterion_8},
      {"SU(2) abelianization trichotomy", criterion_9},
      {"even_choice gives even fiber dimensions", criterion_10},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o{false, ""};
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.ok) ++failures;
    std::printf("criterion %2zu %s  %s (%s)\n", i + 1, o.ok ? "PASS" : "FAIL", criteria[i].first.c_str(),
                o.detail.c_str());
  }
  return failures == 0 ? 0 : 1;
}
