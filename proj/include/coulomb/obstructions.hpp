#pragma once

// The primary obstruction (w4 modulo integral squares) read off from
// weights, the classification of irreducible quaternionic representations,
// the secondary obstruction σ and the d5 transgressions.

#include "coulomb/f2_linalg.hpp"
#include "coulomb/representation.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace coulomb {

// ---------------------------------------------------------------------------
// Square roots of w4

/// A candidate r̄ ∈ Λ/2 with q_E(γ) ≡ ⟨r̄|γ⟩ mod 2 on all coweights.
struct SquareRoot {
  Vec r;                      // entries in {0,1}
  bool in_group = false;      // vanishes mod 2 on every coroot: a class in H²(BG;Z/2)
  bool integral_lift = false;  // lifts to a character of G
  bool mod4_lift = false;      // lifts to H²(BG;Z/4)
  std::optional<Vec> lift;     // an integral lift r ∈ Λ^W when one exists
};

namespace detail {

/// Columns spanning Λ^W = {λ : ⟨λ|h_α⟩ = 0 for all coroots}.
inline IntMatrix invariant_characters(const RootDatum& d) {
  const std::size_t r = d.rank();
  if (d.coroots.empty()) return IntMatrix::identity(r);
  IntMatrix h(d.coroots.size(), r);
  for (std::size_t i = 0; i < d.coroots.size(); ++i)
    for (std::size_t j = 0; j < r; ++j) h(i, j) = d.coroots[i][j];
  return integer_kernel(h);
}

inline std::optional<Vec> integral_lift(const RootDatum& d, const Vec& rbar) {
  const std::size_t r = d.rank();
  const IntMatrix k = invariant_characters(d);
  IntMatrix g(r, k.cols() + r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < k.cols(); ++j) g(i, j) = k(i, j);
    g(i, k.cols() + i) = 2;
  }
  auto x = solve_integer(to_big(g), std::vector<BigInt>(rbar.begin(), rbar.end()));
  if (!x) return std::nullopt;
  Vec lift(r, 0);
  for (std::size_t j = 0; j < k.cols(); ++j)
    for (std::size_t i = 0; i < r; ++i) lift[i] += k(i, j) * to_int((*x)[j]);
  return lift;
}

/// Some r̄ + 2y pairs to 0 mod 4 with every coroot.
inline bool mod4_lift(const RootDatum& d, const Vec& rbar) {
  const std::size_t r = d.rank();
  F2System sys(r);
  for (const auto& h : d.coroots) {
    const Int p = dot(rbar, h);
    if (p % 2 != 0) return false;
    BitVec row(r);
    for (std::size_t j = 0; j < r; ++j)
      if (h[j] % 2 != 0) row.set(j);
    sys.add(std::move(row), ((p / 2) % 2) != 0);
  }
  return sys.solve().particular.has_value();
}

}  // namespace detail

/// q_E mod 2 is linear (its polar form is even), so the only candidate is
/// r̄ = Σ_{ν>0} ν mod 2. It is always W-invariant in Λ/2; it defines a class in
/// H²(BG;Z/2) = Hom(π1 G, Z/2) iff it is even on every coroot.
inline std::vector<SquareRoot> w4_square_root_search(const WeightMultiset& e) {
  if (!e.is_self_dual()) throw std::invalid_argument("representation is not self-dual");
  const RootDatum& d = *e.datum();
  const QuadraticForm q = c2_form(e);
  const std::size_t r = d.rank();
  Vec rbar(r, 0);
  for (std::size_t i = 0; i < r; ++i) rbar[i] = ((q.value(detail::unit(r, i)) % 2) + 2) % 2;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j)
      if (q.polar(detail::unit(r, i), detail::unit(r, j)) % 2 != 0) throw std::logic_error("c2 form has odd polar form");
  SquareRoot s;
  s.r = rbar;
  s.in_group = true;
  for (const auto& h : d.coroots)
    if (dot(rbar, h) % 2 != 0) s.in_group = false;
  if (s.in_group) {
    s.lift = detail::integral_lift(d, rbar);
    s.integral_lift = s.lift.has_value();
    s.mod4_lift = detail::mod4_lift(d, rbar);
  }
  return {s};
}

enum class PrimaryStatus { unobstructed, mod2_only, obstructed };

inline std::string status_name(PrimaryStatus s) {
  switch (s) {
    case PrimaryStatus::unobstructed:
      return "unobstructed";
    case PrimaryStatus::mod2_only:
      return "mod2_only";
    case PrimaryStatus::obstructed:
      return "obstructed";
  }
  return "";
}

inline PrimaryStatus primary_status(const std::vector<SquareRoot>& roots) {
  PrimaryStatus best = PrimaryStatus::obstructed;
  for (const auto& s : roots) {
    if (s.in_group && s.integral_lift) return PrimaryStatus::unobstructed;
    if (s.in_group) best = PrimaryStatus::mod2_only;
  }
  return best;
}

// ---------------------------------------------------------------------------
// Classification of structured irreducibles E = R ⊗ S

/// E = R ⊗ S with S a representation of one symplectic factor (Sp(m), or
/// SU(2) read as Sp(1)) and R a representation of the remaining factors. Both
/// are given in cover coordinates of the full datum.
struct TensorFactorization {
  std::size_t sp_factor = 0;
  WeightMultiset r;
  WeightMultiset s;
};

enum class ClassificationCase { unobstructed, case_i, case_ii, not_applicable };

inline std::string case_name(ClassificationCase c) {
  switch (c) {
    case ClassificationCase::unobstructed:
      return "unobstructed";
    case ClassificationCase::case_i:
      return "case_i";
    case ClassificationCase::case_ii:
      return "case_ii";
    case ClassificationCase::not_applicable:
      return "not_applicable";
  }
  return "";
}

namespace detail {

inline bool is_symplectic_factor(const FactorInfo& f) {
  return f.family == Family::Sp || (f.family == Family::SU && f.n == 2);
}

inline bool supported_on(const WeightMultiset& e, const FactorInfo& f, bool inside) {
  for (const auto& [v, m] : e.entries())
    for (std::size_t i = 0; i < v.size(); ++i) {
      const bool in_block = i >= f.cover_offset && i < f.cover_offset + f.cover_rank;
      if (v[i] != 0 && in_block != inside) return false;
    }
  return true;
}

inline Rational cover_pairing(const RootDatum& d, const Vec& v, const RatVec& g) {
  Rational s(0);
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) s += Rational(v[i]) * d.cover_pairing(i, j) * g[j];
  return s;
}

/// ½ Σ ⟨ν|g⟩² over the weights of e, for a cover coweight g.
inline Rational cover_c2(const WeightMultiset& e, const RatVec& g) {
  Rational s(0);
  for (const auto& [v, m] : e.entries()) {
    const Rational p = cover_pairing(*e.datum(), v, g);
    s += Rational(m) * p * p;
  }
  return s / Rational(2);
}

/// Coroots (cover coordinates) of the roots in a factor.
inline std::vector<RatVec> factor_coroots(const RootDatum& d, std::size_t factor) {
  const FactorInfo& f = d.factor(factor);
  std::vector<RatVec> out;
  for (std::size_t i = f.root_begin; i < f.root_end; ++i) out.push_back(d.coweight_to_cover(d.coroots[i]));
  return out;
}

}  // namespace detail

/// c2(S) as an integer: q_S on a long-root coroot of the symplectic factor.
inline Int symplectic_c2(const WeightMultiset& s, std::size_t factor) {
  const RootDatum& d = *s.datum();
  std::optional<Rational> best;
  for (const auto& h : detail::factor_coroots(d, factor)) {
    const Rational v = detail::cover_c2(s, h);
    if (!best || v < *best) best = v;
  }
  if (!best) throw std::invalid_argument("factor has no roots");
  return to_int(*best);
}

namespace detail {

/// Whether a cover coweight lies in the cochar lattice of the simply
/// connected cover (coroots plus torus directions), restricted to the
/// coordinates selected by `keep`.
inline bool in_cover_lattice(const RootDatum& d, const RatVec& g, const std::vector<bool>& keep) {
  const std::size_t n = d.cover_rank();
  Vec v(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (!keep[i]) continue;
    if (g[i].denominator() != 1) return false;
    v[i] = g[i].numerator();
  }
  std::vector<Vec> gens;
  for (const auto& h : d.coroots) {
    const RatVec c = d.coweight_to_cover(h);
    Vec hv(n, 0);
    for (std::size_t i = 0; i < n; ++i)
      if (keep[i]) hv[i] = to_int(c[i]);
    gens.push_back(hv);
  }
  for (const auto& f : d.structure.factors)
    if (f.family == Family::Torus)
      for (std::size_t i = 0; i < f.cover_rank; ++i) gens.push_back(unit(n, f.cover_offset + i));
  if (gens.empty()) return is_zero(v);
  return lattice_contains(IntMatrix::from_columns(gens, n), v);
}

}  // namespace detail

/// The μ2 of the symplectic factor is glued to the rest: some kernel element
/// is nontrivial both on Sp and on the other factors.
inline bool glued_mu2(const RootDatum& d, std::size_t factor) {
  const FactorInfo& f = d.factor(factor);
  std::vector<bool> in_sp(d.cover_rank(), false), off_sp(d.cover_rank(), true);
  for (std::size_t i = f.cover_offset; i < f.cover_offset + f.cover_rank; ++i) {
    in_sp[i] = true;
    off_sp[i] = false;
  }
  for (const RatVec& k : d.structure.kernel)
    if (!detail::in_cover_lattice(d, k, in_sp) && !detail::in_cover_lattice(d, k, off_sp)) return true;
  return false;
}

namespace detail {

inline void require_factorization(const WeightMultiset& e, const TensorFactorization& t) {
  const RootDatum& d = *e.datum();
  if (t.sp_factor >= d.structure.factors.size()) throw std::invalid_argument("no such factor");
  const FactorInfo& f = d.factor(t.sp_factor);
  if (!is_symplectic_factor(f)) throw std::invalid_argument("factor " + f.name() + " is not symplectic");
  if (!supported_on(t.s, f, true) || !supported_on(t.r, f, false))
    throw std::invalid_argument("R and S are not supported on complementary factors");
  if (!(tensor(t.r, t.s) == e)) throw std::invalid_argument("representation is not structured as R ⊗ S");
}

}  // namespace detail

inline ClassificationCase classify_irreducible(const WeightMultiset& e, const TensorFactorization& t) {
  detail::require_factorization(e, t);
  const RootDatum& d = *e.datum();
  const Int dim_r = t.r.dimension();
  const Int dim_h_s = t.s.dimension() / 2;
  if (glued_mu2(d, t.sp_factor)) {
    if (dim_r % 4 == 2 && dim_h_s % 2 == 1) return ClassificationCase::case_ii;
    return ClassificationCase::unobstructed;
  }
  if (dim_r % 2 == 1 && symplectic_c2(t.s, t.sp_factor) % 2 != 0) return ClassificationCase::case_i;
  return ClassificationCase::unobstructed;
}

/// Expected primary status for each classification case.
inline PrimaryStatus expected_status(ClassificationCase c) {
  switch (c) {
    case ClassificationCase::case_i:
      return PrimaryStatus::obstructed;
    case ClassificationCase::case_ii:
      return PrimaryStatus::mod2_only;
    default:
      return PrimaryStatus::unobstructed;
  }
}

// ---------------------------------------------------------------------------
// Secondary obstruction σ

enum class SigmaStatus { zero, nonzero, conditional };

inline std::string sigma_name(SigmaStatus s) {
  switch (s) {
    case SigmaStatus::zero:
      return "zero";
    case SigmaStatus::nonzero:
      return "nonzero";
    case SigmaStatus::conditional:
      return "conditional";
  }
  return "";
}

/// R is the vector representation of a D_{2k} root system formed by the
/// remaining roots: its weights are ±ε_1..±ε_{2k}, independent, and the roots
/// off the symplectic factor are exactly ±ε_i ± ε_j.
inline bool is_so4k_standard(const WeightMultiset& r, std::size_t sp_factor) {
  const RootDatum& d = *r.datum();
  const Int n = r.dimension();
  if (n % 4 != 0 || n == 0) return false;
  std::vector<Vec> eps;
  for (const auto& [v, m] : r.entries()) {
    if (m != 1 || is_zero(v)) return false;
    if (r.multiplicity(neg(v)) != 1) return false;
    if (std::find(eps.begin(), eps.end(), neg(v)) == eps.end()) eps.push_back(v);
  }
  const std::size_t l = eps.size();
  if (smith_invariant_factors(IntMatrix::from_columns(eps, d.cover_rank())).size() != l) return false;
  std::set<Vec> expected;
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = i + 1; j < l; ++j)
      for (Int a : {1, -1})
        for (Int b : {1, -1}) expected.insert(add(scale(eps[i], a), scale(eps[j], b)));
  std::set<Vec> actual;
  const FactorInfo& f = d.factor(sp_factor);
  for (std::size_t i = 0; i < d.roots.size(); ++i)
    if (i < f.root_begin || i >= f.root_end) actual.insert(d.weight_to_cover(d.roots[i]));
  return actual == expected;
}

struct SigmaResult {
  SigmaStatus status = SigmaStatus::zero;
  std::string reason;
};

/// The decision tree of the secondary obstruction for an irreducible E whose
/// w4 has a mod-2 square root. Without a factorization the answer is zero
/// only when G has no symplectic factor.
inline SigmaResult secondary_sigma(const WeightMultiset& e, const std::optional<TensorFactorization>& t) {
  const RootDatum& d = *e.datum();
  if (primary_status(w4_square_root_search(e)) == PrimaryStatus::obstructed)
    throw std::invalid_argument("w4 has no mod-2 square root");
  bool has_sp = false;
  for (const auto& f : d.structure.factors) has_sp = has_sp || detail::is_symplectic_factor(f);
  if (!has_sp) return {SigmaStatus::zero, "no symplectic factor"};
  if (!t) return {SigmaStatus::conditional, "no R ⊗ S structure supplied"};
  detail::require_factorization(e, *t);
  const Int dim_r = t->r.dimension();
  const Int dim_h_s = t->s.dimension() / 2;
  if (glued_mu2(d, t->sp_factor) && dim_r % 4 == 0 && dim_h_s % 2 == 1) {
    if (is_so4k_standard(t->r, t->sp_factor)) return {SigmaStatus::nonzero, "σ = w3(R) ∪ x with R = SO(4k) standard"};
    return {SigmaStatus::conditional, "σ = w3(R) ∪ x; w3(R) not decided"};
  }
  if (classify_irreducible(e, *t) == ClassificationCase::case_ii)
    return {SigmaStatus::zero, "home group H5/Sq2H3 vanishes"};
  return {SigmaStatus::zero, "outside the exceptional family"};
}

// ---------------------------------------------------------------------------
// d5 transgressions

enum class TransgressionCase { PSp_c2, PSU_c2, Spin_b_p1half, Spin_a_p1half, SO_p1, PSO_p1, Spin4k_bplus_p1half, PSO4k };

/// Reduces q to [0, 1).
inline Rational mod_one(Rational q) {
  const Int n = q.numerator(), m = q.denominator();
  Int r = n % m;
  if (r < 0) r += m;
  return Rational(r, m);
}

/// d5 of the generating class, as an element of Q/Z. The parameter is m, n,
/// l or k according to the case.
inline Rational d5_transgression(TransgressionCase c, Int p) {
  if (p < 1) throw std::invalid_argument("parameter must be positive");
  switch (c) {
    case TransgressionCase::PSp_c2:
      return mod_one(Rational(-p, 4));
    case TransgressionCase::PSU_c2:
      if (p < 2) throw std::invalid_argument("PSU(n) needs n >= 2");
      return mod_one(Rational(1 - p, 2 * p));
    case TransgressionCase::Spin_b_p1half:
      return mod_one(Rational(p, 8));
    case TransgressionCase::Spin_a_p1half:
      return Rational(1, 2);
    case TransgressionCase::SO_p1:
      return Rational(0);
    case TransgressionCase::PSO_p1:
      return mod_one(Rational(p, 4));
    case TransgressionCase::Spin4k_bplus_p1half:
      return mod_one(Rational(p, 4));
    case TransgressionCase::PSO4k:
      break;
  }
  throw std::invalid_argument("d5 for PSO(4k) lives in Z/4 + Z/4 + Z/2 and is not a single value");
}

// ---------------------------------------------------------------------------
// Dimension checks

/// dim_H S ≡ m·c2(S) mod 4 for a representation of the factor Sp(m).
inline bool dim_c2_mod4_check(const WeightMultiset& s, std::size_t factor) {
  const FactorInfo& f = s.datum()->factor(factor);
  if (!detail::is_symplectic_factor(f)) throw std::invalid_argument("factor is not symplectic");
  const Int m = f.family == Family::SU ? 1 : f.n;
  const Int dim_h = s.dimension() / 2;
  const Int lhs = ((dim_h % 4) + 4) % 4;
  const Int rhs = (((m * symplectic_c2(s, factor)) % 4) + 4) % 4;
  return lhs == rhs;
}

/// Real dimension of the fiber at z^γ: -Σ_{⟨ν|γ⟩>0} ⟨ν|γ⟩ - dim S.
inline Int fiber_dimension(const WeightMap& weights, const Vec& gamma, Int dim_s) {
  Int sum = 0;
  for (const auto& [v, m] : weights) {
    const Int p = dot(v, gamma);
    if (p > 0) sum += m * p;
  }
  return -sum - dim_s;
}

inline Int fiber_dimension(const PolarizationSplit& split, const Vec& gamma, Int dim_s) {
  WeightMap all = split.positive;
  for (const auto* part : {&split.negative, &split.zero, &split.invariant_half})
    for (const auto& [v, m] : *part) all[v] += m;
  for (const auto& [v, m] : negate(split.invariant_half)) all[v] += m;
  return fiber_dimension(all, gamma, dim_s);
}

/// dim S(γ) = ⟨r|γ⟩ for an integral square root r.
struct EvenChoice {
  Vec r;
  Int operator()(const Vec& gamma) const { return dot(r, gamma); }
};

inline EvenChoice even_choice(const Vec& r) { return {r}; }

}  // namespace coulomb
