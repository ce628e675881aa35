#pragma once

// Abelianization eligibility, Fourier modes of the N(H) chiral rings and the
// per-root evaluation conditions that cut out the G-level rings.

#include "coulomb/formal_sections.hpp"
#include "coulomb/obstructions.hpp"

#include <string>

namespace coulomb {

// ---------------------------------------------------------------------------
// Abelianization

/// One root α with its multiples kα among the weights. Multiplicities are
/// recorded as n = ⟨ν|h_α⟩ = 2k, so half-integer k are odd n.
struct RootLedger {
  Vec root;
  Vec coroot;
  std::map<Int, Int> multiples;  // n -> multiplicity, over positive multiples
  Rational total;                // S = Σ k
  Rational integral_total;       // Σ k over integral k
  bool eligible = false;         // S ≥ 2, the value for 𝔤_H
  bool affine_relevant = false;  // α/2 is a character: a central point x^{α/2} = -1 exists
  bool affine_eligible = false;  // integral multiples alone reach 2, or no affine point

  bool eligible_c4() const { return eligible && affine_eligible; }
};

struct AbelianizedModel {
  std::vector<RootLedger> roots;
  std::optional<WeightMultiset> torus_weights;  // E ⊖ 𝔤_H when 𝔤_H ⊂ E
  std::optional<Vec> missing_weight;            // a weight of 𝔤_H not in E otherwise

  bool eligible_c3() const {
    return std::all_of(roots.begin(), roots.end(), [](const RootLedger& r) { return r.eligible; });
  }
  bool eligible_c4() const {
    return std::all_of(roots.begin(), roots.end(), [](const RootLedger& r) { return r.eligible_c4(); });
  }
};

namespace detail {

/// One representative of each pair ±α: first nonzero coordinate positive.
inline std::vector<std::size_t> root_representatives(const RootDatum& d) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < d.roots.size(); ++i)
    if (orientation(d.roots[i], Vec(d.rank(), 0)) > 0) out.push_back(i);
  return out;
}

/// n = ⟨ν|h_α⟩ when ν is a positive multiple of α, else 0.
inline Int multiple_of_root(const Vec& nu, const Vec& alpha, const Vec& h) {
  const Int n = dot(nu, h);
  if (n <= 0) return 0;
  return scale(nu, 2) == scale(alpha, n) ? n : 0;
}

inline bool divisible_by_two(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](Int x) { return x % 2 == 0; });
}

}  // namespace detail

/// E ⊖ 𝔤_H, or the first weight of 𝔤_H that E lacks.
inline DifferenceResult subtract_adjoint(const WeightMultiset& e) {
  return difference(e, quaternionify(adjoint_rep(e.datum())));
}

inline AbelianizedModel abelianizable(const WeightMultiset& e) {
  const RootDatum& d = *e.datum();
  const WeightMap w = e.intrinsic();
  AbelianizedModel model;
  for (std::size_t i : detail::root_representatives(d)) {
    RootLedger l;
    l.root = d.roots[i];
    l.coroot = d.coroots[i];
    for (const auto& [nu, m] : w) {
      const Int n = detail::multiple_of_root(nu, l.root, l.coroot);
      if (n == 0) continue;
      l.multiples[n] += m;
      l.total += Rational(n * m, 2);
      if (n % 2 == 0) l.integral_total += Rational(n * m, 2);
    }
    l.eligible = l.total >= Rational(2);
    l.affine_relevant = detail::divisible_by_two(l.root);
    l.affine_eligible = !l.affine_relevant || l.integral_total >= Rational(2);
    model.roots.push_back(std::move(l));
  }
  DifferenceResult diff = subtract_adjoint(e);
  model.torus_weights = diff.value;
  model.missing_weight = diff.witness;
  return model;
}

// ---------------------------------------------------------------------------
// Fourier modes

template <class S>
struct FourierMode {
  Vec gamma;
  S section;  // value rank 1: plain integer exponents
};

namespace detail {

/// ν ∈ E₋ with ⟨ν|γ⟩ > 0, together with that pairing times the multiplicity.
inline std::vector<std::pair<Vec, Int>> mode_factors(const PolarizationSplit& split, const Vec& gamma) {
  split.require_strict();
  if (gamma.size() != split.xi0.size()) throw std::invalid_argument("coweight has wrong length");
  WeightMap minus = split.negative;
  for (const auto& [v, m] : negate(split.invariant_half)) minus[v] += m;
  std::vector<std::pair<Vec, Int>> out;
  for (const auto& [v, m] : minus) {
    const Int p = dot(v, gamma);
    if (p > 0) out.emplace_back(v, p * m);
  }
  return out;
}

}  // namespace detail

/// h^γ · Π_{ν<0, ⟨ν|γ⟩>0} ⟨ν|ξ⟩^{⟨ν|γ⟩}.
inline FourierMode<FormalLinearSection> fourier_mode_linear(const PolarizationSplit& split, const Vec& gamma) {
  FourierMode<FormalLinearSection> f{gamma, FormalLinearSection(split.xi0, 1)};
  for (const auto& [v, p] : detail::mode_factors(split, gamma)) f.section.add_factor(v, Vec{p});
  return f;
}

/// h^γ · Π_{ν<0, ⟨ν|γ⟩>0} (1 - x^{-ν})^{⟨ν|γ⟩}.
inline FourierMode<FormalCharacterSection> fourier_mode_character(const PolarizationSplit& split,
                                                                  const Vec& gamma) {
  FourierMode<FormalCharacterSection> f{gamma, FormalCharacterSection(split.xi0, 1)};
  for (const auto& [v, p] : detail::mode_factors(split, gamma)) f.section.add_factor(v, Vec{p});
  return f;
}

// ---------------------------------------------------------------------------
// Evaluation conditions

enum class LeviCase { su2, so3, glued_su2 };

inline std::string levi_name(LeviCase c) {
  switch (c) {
    case LeviCase::su2:
      return "Z x SU(2)";
    case LeviCase::so3:
      return "Z x SO(3)";
    case LeviCase::glued_su2:
      return "Z x_mu2 SU(2)";
  }
  return "";
}

/// α ∈ 2Λ gives a direct SU(2) factor, h_α ∈ 2Λ∨ an SO(3) factor, and
/// otherwise the root SU(2) meets the complement in μ2.
inline LeviCase levi_case(const Vec& root, const Vec& coroot) {
  if (detail::divisible_by_two(root)) return LeviCase::su2;
  if (detail::divisible_by_two(coroot)) return LeviCase::so3;
  return LeviCase::glued_su2;
}

struct RootCondition {
  Vec root;
  Vec coroot;
  LeviCase levi = LeviCase::su2;
  Int odd_spin_sum = 0;  // Σ n over positive weights with odd n = ⟨ν|h_α⟩
  std::optional<FormalLinearSection> r_alpha;
  std::optional<FormalCharacterSection> q_alpha;
  std::string note;
  std::string condition_linear;
  std::string condition_character;

  bool polarizable() const { return levi != LeviCase::su2; }
  bool correction_expected() const { return polarizable() || odd_spin_sum % 2 == 0; }
};

struct EvaluationConditionReport {
  std::vector<RootCondition> roots;
};

namespace detail {

/// Total exponent carried by keys proportional to α: the order of the
/// section along the hyperplane α = 0 (or the component x^α = 1).
template <class S>
Vec order_along(const S& s, const Vec& alpha) {
  Vec total(s.value_rank(), 0);
  for (const auto& [key, lambda] : s.factors()) {
    if (scale(key, dot(alpha, alpha)) == scale(alpha, dot(key, alpha))) total = add(total, lambda);
  }
  return total;
}

inline Vec primitive(Vec v) {
  const Int g = content(v);
  for (Int& x : v) x /= g;
  return v;
}

}  // namespace detail

/// r(ξ)·s_α[r⁻¹](ξ) · χ_{s_α}⁻¹ has no zero or pole along α = 0.
template <class S>
bool locally_trivializes(const S& r, const S& chi, const WeylGroup& w, std::size_t s_alpha, const Vec& alpha) {
  const S residual = multiply(multiply(r, invert(weyl_act(w, s_alpha, r))), invert(chi));
  return is_zero(detail::order_along(residual, alpha));
}

inline EvaluationConditionReport evaluation_conditions(const PolarizationSplit& split, const WeylGroup& w,
                                                       const WeightMultiset& e) {
  if (primary_status(w4_square_root_search(e)) == PrimaryStatus::obstructed)
    throw std::invalid_argument("w4 is obstructed; evaluation conditions need the obstruction cancelled");
  split.require_strict();
  const RootDatum& d = *split.datum;
  const WeightMap weights = e.intrinsic();
  const bool pure = std::all_of(weights.begin(), weights.end(), [](const auto& p) { return is_zero(p.first); });
  EvaluationConditionReport report;
  for (std::size_t i : detail::root_representatives(d)) {
    RootCondition c;
    c.root = d.roots[i];
    c.coroot = d.coroots[i];
    c.levi = levi_case(c.root, c.coroot);
    for (const auto& [nu, m] : weights) {
      const Int n = dot(nu, c.coroot);
      if (n > 0 && n % 2 != 0) c.odd_spin_sum += n * m;
    }
    if (pure) {
      c.condition_linear = "exp(h_a) o s = 1 on a = 0";
      c.condition_character = "exp(h_a) o s = 1 on e^a = 1";
    } else {
      c.condition_linear = "exp(h_a) o (s * r_a) = O(a)";
      c.condition_character = "exp(h_a) o (s * q_a) = O(e^a - 1)";
    }
    // r·s_α[r]⁻¹ doubles the order of r along α, so r = ⟨α|ξ⟩^{o/2} where o is
    // the order of χ_{s_α}; likewise for q and κ.
    const std::size_t s = w.index_of(root_reflection(c.root, c.coroot));
    const FormalLinearSection chi = chi_w(split, w, s);
    const FormalCharacterSection kappa = kappa_w(split, w, s);
    const Vec o = detail::order_along(chi, c.root);
    if (o == detail::order_along(kappa, c.root) && detail::divisible_by_two(o)) {
      Vec half = o;
      for (Int& x : half) x /= 2;
      const Vec key = detail::primitive(c.root);
      FormalLinearSection r(split.xi0, d.rank());
      FormalCharacterSection q(split.xi0, d.rank());
      r.add_factor(key, half);
      q.add_factor(key, half);
      if (!locally_trivializes(r, chi, w, s, c.root) || !locally_trivializes(q, kappa, w, s, c.root))
        throw std::logic_error("halved Euler factor does not trivialize the cocycle near the hyperplane");
      c.r_alpha = std::move(r);
      c.q_alpha = std::move(q);
      c.note = c.polarizable() ? "polarizable Levi; halved Euler factor"
                               : "odd-spin weight sum even; halved Euler factor";
    } else {
      c.note = c.correction_expected() ? "exists, not constructed" : "odd-spin weight sum odd";
    }
    report.roots.push_back(std::move(c));
  }
  return report;
}

}  // namespace coulomb
