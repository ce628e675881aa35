#include "coulomb/golden.hpp"
#include "coulomb/obstructions.hpp"
#include "coulomb/weyl_cohomology.hpp"

#include <gtest/gtest.h>

using namespace coulomb;

namespace {

std::vector<golden::Case> extended_corpus() {
  auto all = golden::corpus();
  all.push_back(golden::su2_so6());
  all.push_back(golden::sp1_so3());
  return all;
}

// Σ_{ν>0} ν mod 2 read off directly from a polarization.
Vec positive_sum_mod2(const golden::Case& c) {
  const PolarizationSplit split = polarize(c.rep, c.xi0, c.invariant_half);
  Vec s(c.datum->rank(), 0);
  for (const auto& [v, m] : split.positive)
    for (std::size_t i = 0; i < s.size(); ++i) s[i] += m * v[i];
  for (const auto& [v, m] : split.invariant_half)
    for (std::size_t i = 0; i < s.size(); ++i) s[i] += m * v[i];
  for (auto& x : s) x = ((x % 2) + 2) % 2;
  return s;
}

Rational frac(Rational q) {
  const Int n = q.numerator(), m = q.denominator();
  return Rational(((n % m) + m) % m, m);
}

Rational sum_squares(const std::vector<Rational>& x) {
  Rational s(0);
  for (const auto& v : x) s += v * v;
  return s;
}

}  // namespace

TEST(SquareRoots, CandidateIsSumOfPositiveWeights) {
  for (const auto& c : extended_corpus()) {
    const auto roots = w4_square_root_search(c.rep);
    ASSERT_EQ(roots.size(), 1u) << c.name;
    EXPECT_EQ(roots[0].r, positive_sum_mod2(c)) << c.name;
  }
}

TEST(SquareRoots, InGroupMatchesExactnessOfC) {
  for (const auto& c : extended_corpus()) {
    const WeylGroup w = enumerate_weyl(*c.datum);
    const PolarizationSplit split = polarize(c.rep, c.xi0, c.invariant_half);
    const bool exact = solve_coboundary_c(cochain_c(split, w), w).solvable();
    const auto roots = w4_square_root_search(c.rep);
    EXPECT_EQ(roots[0].in_group, exact) << c.name;
  }
}

TEST(SquareRoots, LiftsAreIntegralAndInvariant) {
  for (const auto& c : extended_corpus()) {
    const auto roots = w4_square_root_search(c.rep);
    if (!roots[0].lift) continue;
    const Vec& r = *roots[0].lift;
    for (std::size_t i = 0; i < r.size(); ++i) EXPECT_EQ(((r[i] - roots[0].r[i]) % 2 + 2) % 2, 0) << c.name;
    for (const auto& h : c.datum->coroots) EXPECT_EQ(dot(r, h), 0) << c.name;
  }
}

TEST(SquareRoots, ExpectedStatuses) {
  const std::map<std::string, PrimaryStatus> expected = {
      {"su2_E0", PrimaryStatus::unobstructed},  {"su2_H", PrimaryStatus::obstructed},
      {"su2_2H", PrimaryStatus::unobstructed},  {"su2_spin3/2", PrimaryStatus::unobstructed},
      {"su2_u1", PrimaryStatus::unobstructed},      {"sp2_complement", PrimaryStatus::unobstructed},
      {"su2_cubed", PrimaryStatus::unobstructed},      {"so4_sp1", PrimaryStatus::unobstructed},
      {"su2_so6", PrimaryStatus::mod2_only},    {"sp1_so3", PrimaryStatus::unobstructed},
  };
  for (const auto& c : extended_corpus()) {
    EXPECT_EQ(primary_status(w4_square_root_search(c.rep)), expected.at(c.name)) << c.name;
  }
  const auto so6 = w4_square_root_search(golden::su2_so6().rep)[0];
  EXPECT_TRUE(so6.mod4_lift);
  EXPECT_FALSE(so6.integral_lift);
}

TEST(SquareRoots, RejectsNonSelfDual) {
  auto d = std::make_shared<RootDatum>(build_simple(Family::SU, 3));
  EXPECT_THROW(w4_square_root_search(standard_rep(d, 0)), std::invalid_argument);
}

TEST(Classification, AgreesWithPrimaryStatus) {
  for (const auto& c : extended_corpus()) {
    if (!c.factorization) continue;
    const ClassificationCase k = classify_irreducible(c.rep, *c.factorization);
    EXPECT_EQ(expected_status(k), primary_status(w4_square_root_search(c.rep))) << c.name;
  }
  EXPECT_EQ(classify_irreducible(golden::su2_h().rep, *golden::su2_h().factorization), ClassificationCase::case_i);
  EXPECT_EQ(classify_irreducible(golden::su2_so6().rep, *golden::su2_so6().factorization), ClassificationCase::case_ii);
}

TEST(Classification, Sp2StandardIsCaseI) {
  auto d = std::make_shared<RootDatum>(build_simple(Family::Sp, 2));
  const WeightMultiset e = standard_rep(d, 0);
  const TensorFactorization t{0, trivial_rep(d, 1), e};
  EXPECT_EQ(classify_irreducible(e, t), ClassificationCase::case_i);
  EXPECT_EQ(primary_status(w4_square_root_search(e)), PrimaryStatus::obstructed);
}

TEST(Classification, GluingDetection) {
  EXPECT_TRUE(glued_mu2(*golden::so4_sp1().datum, 1));
  EXPECT_TRUE(glued_mu2(*golden::su2_cubed().datum, 2));
  EXPECT_TRUE(glued_mu2(*golden::su2_so6().datum, 0));
  EXPECT_FALSE(glued_mu2(*golden::sp1_so3().datum, 0));
  EXPECT_FALSE(glued_mu2(*golden::su2_u1().datum, 0));
}

TEST(Classification, RejectsWrongFactorization) {
  const auto c = golden::so4_sp1();
  TensorFactorization bad = *c.factorization;
  bad.r = direct_sum(bad.r, trivial_rep(c.datum, 1));
  EXPECT_THROW(classify_irreducible(c.rep, bad), std::invalid_argument);
}

TEST(Sigma, NonzeroOnGluedStandardCases) {
  for (const auto& c : {golden::so4_sp1(), golden::su2_cubed()}) {
    EXPECT_EQ(secondary_sigma(c.rep, c.factorization).status, SigmaStatus::nonzero) << c.name;
    const WeylGroup w = enumerate_weyl(*c.datum);
    const PolarizationSplit split = polarize(c.rep, c.xi0, c.invariant_half);
    EXPECT_FALSE(solve_coboundary_s2(cochain_s2(split, w), w).solvable()) << c.name;
  }
}

TEST(Sigma, ZeroOrConditionalElsewhere) {
  EXPECT_EQ(secondary_sigma(golden::su2_so6().rep, golden::su2_so6().factorization).status, SigmaStatus::zero);
  EXPECT_EQ(secondary_sigma(golden::sp1_so3().rep, golden::sp1_so3().factorization).status, SigmaStatus::zero);
  EXPECT_EQ(secondary_sigma(golden::so4_sp1().rep, std::nullopt).status, SigmaStatus::conditional);
  EXPECT_THROW(secondary_sigma(golden::su2_h().rep, golden::su2_h().factorization), std::invalid_argument);
}

TEST(Transgression, MatchesCentralCoweightOracle) {
  for (Int m = 1; m <= 4; ++m) {
    std::vector<Rational> x(m, Rational(1, 2));
    EXPECT_EQ(d5_transgression(TransgressionCase::PSp_c2, m), frac(-sum_squares(x))) << m;
  }
  for (Int n = 2; n <= 5; ++n) {
    std::vector<Rational> x(n, Rational(-1, n));
    x[0] += 1;
    EXPECT_EQ(d5_transgression(TransgressionCase::PSU_c2, n), frac(-sum_squares(x) / 2)) << n;
  }
  for (Int l = 2; l <= 5; ++l) {
    std::vector<Rational> b(l, Rational(1, 2)), a(l, Rational(0));
    a[0] = 1;
    EXPECT_EQ(d5_transgression(TransgressionCase::Spin_b_p1half, l), frac(sum_squares(b) / 2)) << l;
    EXPECT_EQ(d5_transgression(TransgressionCase::Spin_a_p1half, l), frac(sum_squares(a) / 2)) << l;
    EXPECT_EQ(d5_transgression(TransgressionCase::SO_p1, l), frac(sum_squares(a))) << l;
    EXPECT_EQ(d5_transgression(TransgressionCase::PSO_p1, l), frac(sum_squares(b))) << l;
  }
  for (Int k = 1; k <= 2; ++k) {
    std::vector<Rational> bm(2 * k, Rational(1, 2));
    bm.back() = Rational(-1, 2);
    EXPECT_EQ(d5_transgression(TransgressionCase::Spin4k_bplus_p1half, k), frac(sum_squares(bm) / 2)) << k;
  }
  EXPECT_THROW(d5_transgression(TransgressionCase::PSO4k, 1), std::invalid_argument);
  EXPECT_THROW(d5_transgression(TransgressionCase::PSU_c2, 1), std::invalid_argument);
}

TEST(Dimensions, DimC2ModFour) {
  auto sp1 = std::make_shared<RootDatum>(build_simple(Family::Sp, 1));
  EXPECT_TRUE(dim_c2_mod4_check(standard_rep(sp1, 0), 0));
  EXPECT_TRUE(dim_c2_mod4_check(scale(standard_rep(sp1, 0), 2), 0));
  auto sp2 = std::make_shared<RootDatum>(build_simple(Family::Sp, 2));
  EXPECT_TRUE(dim_c2_mod4_check(standard_rep(sp2, 0), 0));
  EXPECT_TRUE(dim_c2_mod4_check(golden::sp2_complement().rep, 0));
  EXPECT_TRUE(dim_c2_mod4_check(golden::su2_spin3_2().rep, 0));
  auto su3 = std::make_shared<RootDatum>(build_simple(Family::SU, 3));
  EXPECT_THROW(dim_c2_mod4_check(adjoint_rep(su3), 0), std::invalid_argument);
}

TEST(Dimensions, FiberDimensionExamples) {
  const auto h = golden::su2_h();
  const PolarizationSplit split = polarize(h.rep, h.xi0);
  EXPECT_EQ(fiber_dimension(split, Vec{1}, 0), -1);
  EXPECT_EQ(fiber_dimension(split, Vec{2}, 0), -2);
  const auto h2 = golden::su2_2h();
  EXPECT_EQ(fiber_dimension(polarize(h2.rep, h2.xi0), Vec{1}, 0), -2);
}

TEST(Dimensions, EvenChoiceMakesFibersEven) {
  for (const auto& c : extended_corpus()) {
    const auto roots = w4_square_root_search(c.rep);
    if (!roots[0].lift) continue;
    const EvenChoice dim_s = even_choice(*roots[0].lift);
    const PolarizationSplit split = polarize(c.rep, c.xi0, c.invariant_half);
    const std::size_t r = c.datum->rank();
    for (std::size_t i = 0; i < r; ++i) {
      const Vec g = detail::unit(r, i);
      EXPECT_EQ(fiber_dimension(split, g, dim_s(g)) % 2, 0) << c.name << " " << i;
      for (std::size_t j = 0; j < r; ++j) {
        const Vec g2 = add(g, detail::unit(r, j));
        EXPECT_EQ(dim_s(g2), dim_s(g) + dim_s(detail::unit(r, j)));
      }
    }
    for (const auto& h : c.datum->coroots) EXPECT_EQ(fiber_dimension(split, h, dim_s(h)) % 2, 0) << c.name;
  }
}
