#pragma once

// The worked examples: groups, representations, reference coweights and
// invariant halves.

#include "coulomb/obstructions.hpp"

namespace coulomb::golden {

struct Case {
  std::string name;
  DatumPtr datum;
  WeightMultiset rep;
  Vec xi0;                   // intrinsic coweight
  WeightMap invariant_half;  // intrinsic weights, removed before polarizing
  std::optional<TensorFactorization> factorization = std::nullopt;
};

inline RatVec half_vec(std::initializer_list<Rational> xs) { return RatVec(xs); }

inline Vec xi_from_cover(const RootDatum& d, const RatVec& g) {
  auto y = d.integral_coweight_from_cover(g);
  if (!y) throw std::logic_error("reference coweight is not a cocharacter of the group");
  return *y;
}

inline DatumPtr su2() { return std::make_shared<RootDatum>(build_simple(Family::SU, 2)); }

inline Case su2_case(const std::string& label, int copies_of_h, int spin3_2 = 0) {
  DatumPtr d = su2();
  WeightMultiset e(d);
  for (int i = 0; i < copies_of_h; ++i) e = direct_sum(e, standard_rep(d, 0));
  for (int i = 0; i < spin3_2; ++i) e = direct_sum(e, su2_irrep(d, 0, 3));
  std::optional<TensorFactorization> t;
  if (copies_of_h > 0 && spin3_2 == 0) t = TensorFactorization{0, trivial_rep(d, copies_of_h), standard_rep(d, 0)};
  if (copies_of_h == 0 && spin3_2 > 0) t = TensorFactorization{0, trivial_rep(d, spin3_2), su2_irrep(d, 0, 3)};
  return {label, d, e, {1}, {}, t};
}

inline Case su2_zero() { return su2_case("su2_E0", 0); }
inline Case su2_h() { return su2_case("su2_H", 1); }
inline Case su2_2h() { return su2_case("su2_2H", 2); }
inline Case su2_spin3_2() { return su2_case("su2_spin3/2", 0, 1); }

/// SU(2) x U(1) with C^2 ⊗ (C + conj C), weights ±w±t.
inline Case su2_u1() {
  DatumPtr d = std::make_shared<RootDatum>(product(build_simple(Family::SU, 2), build_torus(1)));
  WeightMultiset r = quaternionify(standard_rep(d, 1));
  WeightMultiset e = tensor(standard_rep(d, 0), r);
  return {"su2_u1", d, e, {2, 1}, {}, TensorFactorization{0, r, standard_rep(d, 0)}};
}

/// Sp(2) with the complement of H^2 in R^5 ⊗ H^2, polarized by one copy of H^2.
inline Case sp2_complement() {
  DatumPtr d = std::make_shared<RootDatum>(build_simple(Family::Sp, 2));
  WeightMultiset e(d);
  for (Vec v : std::vector<Vec>{{2, 1}, {1, 2}, {2, -1}, {-1, 2}}) {
    e.add(v);
    e.add(neg(v));
  }
  e = direct_sum(e, scale(standard_rep(d, 0), 2));
  // one copy of H^2 (self-dual, so V and its dual together use both copies)
  WeightMap half;
  half[{1, 0}] = 1;
  half[{0, 1}] = 1;
  half[{-1, 0}] = 1;
  half[{0, -1}] = 1;
  return {"sp2_complement", d, e, {3, 2}, half, TensorFactorization{0, trivial_rep(d, 1), e}};
}

/// SU(2)^3 / S(μ2^3) with H ⊗ H ⊗ H.
inline Case su2_cubed() {
  RootDatum cover = product(product(build_simple(Family::SU, 2), build_simple(Family::SU, 2)),
                            build_simple(Family::SU, 2));
  const Rational h(1, 2), z(0);
  DatumPtr d = std::make_shared<RootDatum>(central_quotient(cover, {half_vec({h, h, z}), half_vec({z, h, h})}));
  WeightMultiset r = tensor(standard_rep(d, 0), standard_rep(d, 1));
  WeightMultiset e = tensor(r, standard_rep(d, 2));
  Vec xi = xi_from_cover(*d, half_vec({Rational(4), Rational(2), Rational(1)}));
  return {"su2_cubed", d, e, xi, {}, TensorFactorization{2, r, standard_rep(d, 2)}};
}

/// SO(4) x_{μ2} Sp(1) = (Spin(4) x Sp(1)) / <(a,1), (b+,-1)> with the tensor
/// product of standard representations.
inline Case so4_sp1() {
  RootDatum cover = product(build_simple(Family::Spin, 4), build_simple(Family::Sp, 1));
  const Rational h(1, 2), z(0), one(1);
  DatumPtr d = std::make_shared<RootDatum>(central_quotient(cover, {half_vec({one, z, z}), half_vec({h, h, h})}));
  WeightMultiset e = tensor(standard_rep(d, 0), standard_rep(d, 1));
  Vec xi = xi_from_cover(*d, half_vec({Rational(4), Rational(2), Rational(1)}));
  return {"so4_sp1", d, e, xi, {}, TensorFactorization{1, standard_rep(d, 0), standard_rep(d, 1)}};
}

/// SU(2) x_{μ2} SO(6) = (SU(2) x Spin(6)) / <(-1, b+)> with H ⊗ R^6.
inline Case su2_so6() {
  RootDatum cover = product(build_simple(Family::SU, 2), build_simple(Family::Spin, 6));
  const Rational h(1, 2);
  DatumPtr d = std::make_shared<RootDatum>(central_quotient(cover, {half_vec({h, h, h, h})}));
  WeightMultiset e = tensor(standard_rep(d, 0), standard_rep(d, 1));
  Vec xi = xi_from_cover(*d, half_vec({Rational(8), Rational(3), Rational(2), Rational(1)}));
  return {"su2_so6", d, e, xi, {}, TensorFactorization{0, standard_rep(d, 1), standard_rep(d, 0)}};
}

/// Sp(1) x SO(3) with (H + H) ⊗ R^3.
inline Case sp1_so3() {
  DatumPtr d = std::make_shared<RootDatum>(product(build_simple(Family::Sp, 1), build_simple(Family::SO, 3)));
  WeightMultiset s = scale(standard_rep(d, 0), 2);
  WeightMultiset e = tensor(s, standard_rep(d, 1));
  Vec xi = xi_from_cover(*d, half_vec({Rational(3), Rational(1)}));
  return {"sp1_so3", d, e, xi, {}, TensorFactorization{0, standard_rep(d, 1), s}};
}

/// The cocycle identity corpus.
inline std::vector<Case> corpus() {
  return {su2_zero(), su2_h(), su2_2h(), su2_spin3_2(), su2_u1(), sp2_complement(), su2_cubed(), so4_sp1()};
}

}  // namespace coulomb::golden
