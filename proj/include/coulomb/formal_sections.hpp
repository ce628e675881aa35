#pragma once

// Normal forms for the rational sections of the Toda spaces: maps h -> H∨
// built from linear forms ⟨ν|ξ⟩ (linear flavor) and from 1 - x^{-ν}
// (character flavor), with exponents in Λ.

#include "coulomb/weyl_cohomology.hpp"

#include <numeric>
#include <sstream>
#include <string>

namespace coulomb {

/// Prime factorization of |n| for n != 0, as (prime, power) pairs.
inline std::vector<std::pair<Int, Int>> factorize(Int n) {
  if (n == 0) throw std::invalid_argument("cannot factor zero");
  n = n < 0 ? -n : n;
  std::vector<std::pair<Int, Int>> out;
  for (Int p = 2; p * p <= n; ++p) {
    Int k = 0;
    while (n % p == 0) {
      n /= p;
      ++k;
    }
    if (k) out.emplace_back(p, k);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

/// gcd of the absolute values of the entries.
inline Int content(const Vec& v) {
  Int g = 0;
  for (Int x : v) g = std::gcd(g, x < 0 ? -x : x);
  return g;
}

namespace detail {

inline void accumulate(std::map<Vec, Vec>& m, const Vec& key, const Vec& value) {
  auto [it, inserted] = m.emplace(key, value);
  if (!inserted) it->second = add(it->second, value);
  if (is_zero(it->second)) m.erase(it);
}

inline void accumulate(std::map<Int, Vec>& m, Int key, const Vec& value) {
  auto [it, inserted] = m.emplace(key, value);
  if (!inserted) it->second = add(it->second, value);
  if (is_zero(it->second)) m.erase(it);
}

inline void require_tag(const Vec& a, const Vec& b) {
  if (a != b) throw std::invalid_argument("sections use different positivity conventions");
}

inline std::string vec_string(const Vec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

}  // namespace detail

/// (-1)^sign · Π p^{scalar_p} · Π ⟨ν|ξ⟩^{λ_ν}, with every key ν primitive and
/// positive for the tag ξ0. This form is unique: ⟨kν|ξ⟩ = k⟨ν|ξ⟩ moves the
/// integer k into the scalars and ⟨-ν|ξ⟩^λ = (-1)^λ⟨ν|ξ⟩^λ moves the sign.
class FormalLinearSection {
 public:
  FormalLinearSection() = default;
  FormalLinearSection(Vec tag, std::size_t value_rank)
      : tag_(std::move(tag)), rank_(value_rank), sign_(value_rank, 0) {}

  const Vec& tag() const { return tag_; }
  std::size_t domain_rank() const { return tag_.size(); }
  std::size_t value_rank() const { return rank_; }
  const std::map<Vec, Vec>& factors() const { return factors_; }
  const Vec& sign() const { return sign_; }
  const std::map<Int, Vec>& scalars() const { return scalars_; }

  bool is_constant() const { return factors_.empty(); }
  bool is_identity() const { return factors_.empty() && scalars_.empty() && is_zero(sign_); }

  /// Multiplies by ⟨ν|ξ⟩^λ.
  void add_factor(const Vec& nu, const Vec& lambda) {
    check_value(lambda);
    if (nu.size() != tag_.size()) throw std::invalid_argument("factor key has wrong length");
    if (is_zero(nu)) throw std::invalid_argument("zero linear form in a section");
    if (is_zero(lambda)) return;
    const int o = orientation(nu, tag_);
    if (o < 0) add_sign(lambda);
    Vec key = o < 0 ? neg(nu) : nu;
    const Int g = content(key);
    if (g > 1) {
      for (Int& x : key) x /= g;
      add_scalar(g, lambda);
    }
    detail::accumulate(factors_, key, lambda);
  }

  void add_sign(const Vec& s) {
    check_value(s);
    sign_ = mod2(add(sign_, s));
  }

  /// Multiplies by the constant n^λ for a nonzero integer n.
  void add_scalar(Int n, const Vec& lambda) {
    check_value(lambda);
    if (n < 0) add_sign(lambda);
    for (auto [p, k] : factorize(n)) detail::accumulate(scalars_, p, scale(lambda, k));
  }

  /// Multiplies by the constant q^λ for a nonzero rational q.
  void add_scalar(const Rational& q, const Vec& lambda) {
    add_scalar(q.numerator(), lambda);
    for (auto [p, k] : factorize(q.denominator())) detail::accumulate(scalars_, p, scale(lambda, -k));
  }

  friend bool operator==(const FormalLinearSection& a, const FormalLinearSection& b) {
    return a.tag_ == b.tag_ && a.rank_ == b.rank_ && a.factors_ == b.factors_ && a.sign_ == b.sign_ &&
           a.scalars_ == b.scalars_;
  }

 private:
  void check_value(const Vec& v) const {
    if (v.size() != rank_) throw std::invalid_argument("exponent has wrong length");
  }

  Vec tag_;
  std::size_t rank_ = 0;
  std::map<Vec, Vec> factors_;
  Vec sign_;
  std::map<Int, Vec> scalars_;
};

/// (-1)^sign · x^{T} · Π (1 - x^{-ν})^{λ_ν} with positive keys; x^{T} is the
/// map x -> Π (x^μ)^λ for T = Σ μ⊗λ (rows: character leg, columns: value leg).
class FormalCharacterSection {
 public:
  FormalCharacterSection() = default;
  FormalCharacterSection(Vec tag, std::size_t value_rank)
      : tag_(std::move(tag)), rank_(value_rank), monomial_(tag_.size(), value_rank), sign_(value_rank, 0) {}

  const Vec& tag() const { return tag_; }
  std::size_t domain_rank() const { return tag_.size(); }
  std::size_t value_rank() const { return rank_; }
  const std::map<Vec, Vec>& factors() const { return factors_; }
  const IntMatrix& monomial() const { return monomial_; }
  const Vec& sign() const { return sign_; }

  bool is_constant() const { return factors_.empty(); }
  bool is_identity() const { return factors_.empty() && is_zero(sign_) && is_zero(monomial_); }

  /// Multiplies by (1 - x^{-ν})^λ, using
  /// (1 - x^{ν})^λ = (-1)^λ x^{ν⊗λ} (1 - x^{-ν})^λ for negative ν.
  void add_factor(const Vec& nu, const Vec& lambda) {
    check_value(lambda);
    if (nu.size() != tag_.size()) throw std::invalid_argument("factor key has wrong length");
    if (is_zero(nu)) throw std::invalid_argument("constant character in a section");
    if (is_zero(lambda)) return;
    if (orientation(nu, tag_) < 0) {
      const Vec mu = neg(nu);
      add_sign(lambda);
      add_monomial(outer(mu, lambda));
      detail::accumulate(factors_, mu, lambda);
    } else {
      detail::accumulate(factors_, nu, lambda);
    }
  }

  void add_sign(const Vec& s) {
    check_value(s);
    sign_ = mod2(add(sign_, s));
  }

  void add_monomial(const IntMatrix& t) {
    if (t.rows() != monomial_.rows() || t.cols() != monomial_.cols())
      throw std::invalid_argument("monomial has wrong shape");
    for (std::size_t i = 0; i < t.rows(); ++i)
      for (std::size_t j = 0; j < t.cols(); ++j) monomial_(i, j) += t(i, j);
  }

  friend bool operator==(const FormalCharacterSection& a, const FormalCharacterSection& b) {
    return a.tag_ == b.tag_ && a.rank_ == b.rank_ && a.factors_ == b.factors_ && a.sign_ == b.sign_ &&
           a.monomial_ == b.monomial_;
  }

 private:
  void check_value(const Vec& v) const {
    if (v.size() != rank_) throw std::invalid_argument("exponent has wrong length");
  }

  Vec tag_;
  std::size_t rank_ = 0;
  std::map<Vec, Vec> factors_;
  IntMatrix monomial_;
  Vec sign_;
};

// ---------------------------------------------------------------------------
// Products

inline FormalLinearSection multiply(const FormalLinearSection& a, const FormalLinearSection& b) {
  detail::require_tag(a.tag(), b.tag());
  if (a.value_rank() != b.value_rank()) throw std::invalid_argument("sections have different value ranks");
  FormalLinearSection out = a;
  for (const auto& [k, l] : b.factors()) out.add_factor(k, l);
  for (const auto& [p, l] : b.scalars()) out.add_scalar(p, l);
  out.add_sign(b.sign());
  return out;
}

inline FormalCharacterSection multiply(const FormalCharacterSection& a, const FormalCharacterSection& b) {
  detail::require_tag(a.tag(), b.tag());
  if (a.value_rank() != b.value_rank()) throw std::invalid_argument("sections have different value ranks");
  FormalCharacterSection out = a;
  for (const auto& [k, l] : b.factors()) out.add_factor(k, l);
  out.add_monomial(b.monomial());
  out.add_sign(b.sign());
  return out;
}

inline FormalLinearSection invert(const FormalLinearSection& s) {
  FormalLinearSection out(s.tag(), s.value_rank());
  for (const auto& [k, l] : s.factors()) out.add_factor(k, neg(l));
  for (const auto& [p, l] : s.scalars()) out.add_scalar(p, neg(l));
  out.add_sign(s.sign());
  return out;
}

inline FormalCharacterSection invert(const FormalCharacterSection& s) {
  FormalCharacterSection out(s.tag(), s.value_rank());
  for (const auto& [k, l] : s.factors()) out.add_factor(k, neg(l));
  out.add_monomial(-s.monomial());
  out.add_sign(s.sign());
  return out;
}

template <class S>
S power(const S& s, int k) {
  if (k == 1) return s;
  if (k == -1) return invert(s);
  throw std::invalid_argument("only exponents ±1 occur on Toda fibers");
}

// ---------------------------------------------------------------------------
// Changes of variable. map_keys(s, A) is s(A^{-1}·) for A acting on weights,
// map_values(s, B) is B·s(·).

inline FormalLinearSection map_keys(const FormalLinearSection& s, const IntMatrix& a) {
  FormalLinearSection out(s.tag(), s.value_rank());
  for (const auto& [k, l] : s.factors()) out.add_factor(a * k, l);
  for (const auto& [p, l] : s.scalars()) out.add_scalar(p, l);
  out.add_sign(s.sign());
  return out;
}

inline FormalCharacterSection map_keys(const FormalCharacterSection& s, const IntMatrix& a) {
  FormalCharacterSection out(s.tag(), s.value_rank());
  for (const auto& [k, l] : s.factors()) out.add_factor(a * k, l);
  out.add_monomial(a * s.monomial());
  out.add_sign(s.sign());
  return out;
}

inline FormalLinearSection map_values(const FormalLinearSection& s, const IntMatrix& b) {
  FormalLinearSection out(s.tag(), s.value_rank());
  for (const auto& [k, l] : s.factors()) out.add_factor(k, b * l);
  for (const auto& [p, l] : s.scalars()) out.add_scalar(p, b * l);
  out.add_sign(b * s.sign());
  return out;
}

inline FormalCharacterSection map_values(const FormalCharacterSection& s, const IntMatrix& b) {
  FormalCharacterSection out(s.tag(), s.value_rank());
  for (const auto& [k, l] : s.factors()) out.add_factor(k, b * l);
  out.add_monomial(s.monomial() * b.transpose());
  out.add_sign(b * s.sign());
  return out;
}

/// w[s](p) = w·s(w^{-1}p).
template <class S>
S weyl_act(const WeylGroup& w, std::size_t u, const S& s) {
  return map_values(map_keys(s, w[u]), w[u]);
}

/// p -> s(w p).
template <class S>
S precompose(const S& s, const WeylGroup& w, std::size_t u) {
  return map_keys(s, w[w.inverse(u)]);
}

/// p -> w·s(p).
template <class S>
S post_act(const WeylGroup& w, std::size_t u, const S& s) {
  return map_values(s, w[u]);
}

/// ξ -> -ξ.
inline FormalLinearSection substitute_neg(const FormalLinearSection& s) {
  FormalLinearSection out = s;
  for (const auto& [k, l] : s.factors()) out.add_sign(l);
  return out;
}

/// x -> x^{-1}.
inline FormalCharacterSection substitute_neg(const FormalCharacterSection& s) {
  FormalCharacterSection out(s.tag(), s.value_rank());
  for (const auto& [k, l] : s.factors()) out.add_factor(neg(k), l);
  out.add_monomial(-s.monomial());
  out.add_sign(s.sign());
  return out;
}

// ---------------------------------------------------------------------------
// The sections attached to a polarization

inline FormalLinearSection chi_w(const PolarizationSplit& split, const WeylGroup& w, std::size_t u) {
  split.require_strict();
  FormalLinearSection out(split.xi0, split.xi0.size());
  for (const auto& [nu, m] : split.positive) {
    Vec wnu = w.act(u, nu);
    if (dot(wnu, split.xi0) < 0) out.add_factor(wnu, scale(wnu, m));
  }
  return out;
}

inline FormalCharacterSection kappa_w(const PolarizationSplit& split, const WeylGroup& w, std::size_t u) {
  split.require_strict();
  FormalCharacterSection out(split.xi0, split.xi0.size());
  for (const auto& [nu, m] : split.positive) {
    Vec wnu = w.act(u, nu);
    if (dot(wnu, split.xi0) < 0) out.add_factor(wnu, scale(wnu, m));
  }
  return out;
}

inline FormalLinearSection epsilon_plus(const PolarizationSplit& split) {
  split.require_strict();
  FormalLinearSection out(split.xi0, split.xi0.size());
  for (const auto& [nu, m] : split.positive) out.add_factor(nu, scale(nu, m));
  return out;
}

inline FormalCharacterSection lambda_plus(const PolarizationSplit& split) {
  split.require_strict();
  FormalCharacterSection out(split.xi0, split.xi0.size());
  for (const auto& [nu, m] : split.positive) out.add_factor(nu, scale(nu, m));
  return out;
}

namespace detail {

/// Extended tag (ξ0, M) with M large enough that every (ν, 1) is positive.
inline Vec mass_tag(const WeightMap& v, const Vec& xi0) {
  Int big = 1;
  for (const auto& [nu, m] : v) big += std::abs(dot(nu, xi0));
  Vec t = xi0;
  t.push_back(big);
  return t;
}

inline Vec extend(Vec v, Int last) {
  v.push_back(last);
  return v;
}

}  // namespace detail

/// Π ⟨ν|ξ⟩^ν over the weights of V; with a mass coordinate the factors are
/// (⟨ν|ξ⟩ + μ)^ν on h ⊕ C, valued in H∨ × C^×.
inline FormalLinearSection epsilon_V(const WeightMap& v, const Vec& xi0, bool mass = false) {
  if (!mass) {
    FormalLinearSection out(xi0, xi0.size());
    for (const auto& [nu, m] : v) out.add_factor(nu, scale(nu, m));
    return out;
  }
  FormalLinearSection out(detail::mass_tag(v, xi0), xi0.size() + 1);
  for (const auto& [nu, m] : v) out.add_factor(detail::extend(nu, 1), detail::extend(scale(nu, m), 0));
  return out;
}

/// Π (1 - x^{-ν})^ν, or Π (1 - m^{-1}x^{-ν})^ν with a mass coordinate.
inline FormalCharacterSection lambda_V(const WeightMap& v, const Vec& xi0, bool mass = false) {
  if (!mass) {
    FormalCharacterSection out(xi0, xi0.size());
    for (const auto& [nu, m] : v) out.add_factor(nu, scale(nu, m));
    return out;
  }
  FormalCharacterSection out(detail::mass_tag(v, xi0), xi0.size() + 1);
  for (const auto& [nu, m] : v) out.add_factor(detail::extend(nu, 1), detail::extend(scale(nu, m), 0));
  return out;
}

/// Π (-1)^ν over E+.
inline FormalLinearSection c_squared_linear(const PolarizationSplit& split) {
  FormalLinearSection out(split.xi0, split.xi0.size());
  for (const auto& [nu, m] : split.positive) out.add_sign(scale(nu, m));
  return out;
}

/// Π (-x^ν)^{-ν} over E+.
inline FormalCharacterSection c_squared_character(const PolarizationSplit& split) {
  FormalCharacterSection out(split.xi0, split.xi0.size());
  for (const auto& [nu, m] : split.positive) {
    out.add_sign(scale(nu, m));
    out.add_monomial(outer(nu, scale(nu, -m)));
  }
  return out;
}

/// Π (x^{ν/2} - x^{-ν/2})^ν written on the doubled lattice (y = x^{1/2}),

/// ψ = Π ⟨ν|ξ⟩^ν over ν ∈ E₊ with -ν ∈ V. For a W-stable half V of E,
/// χ_w = w[ψ]·ψ⁻¹ up to a constant sign.
inline FormalLinearSection polarized_trivialization(const PolarizationSplit& split, const WeightMap& v) {
  split.require_strict();
  FormalLinearSection out(split.xi0, split.xi0.size());
  for (const auto& [nu, m] : split.positive) {
    auto it = v.find(neg(nu));
    if (it != v.end()) out.add_factor(nu, scale(nu, std::min(m, it->second)));
  }
  return out;
}

/// χ_w·(w[ψ]·ψ⁻¹)⁻¹ is constant for every w.
inline bool trivializes(const PolarizationSplit& split, const WeylGroup& w, const FormalLinearSection& psi) {
  for (std::size_t u = 0; u < w.size(); ++u) {
    const FormalLinearSection r =
        multiply(chi_w(split, w, u), invert(multiply(weyl_act(w, u, psi), invert(psi))));
    if (!r.is_constant() || !r.scalars().empty()) return false;
  }
  return true;
}
/// together with the form Σ ν⊗ν mod 2 defining the order-2 torsor it lives on.
struct KOEulerClass {
  FormalCharacterSection section;
  TensorSquare form_mod2;
  bool torsor_flag() const { return !is_zero(form_mod2); }
};

inline KOEulerClass lambda_ko(const PolarizationSplit& split) {
  split.require_strict();
  const std::size_t r = split.xi0.size();
  KOEulerClass out{FormalCharacterSection(split.xi0, r), TensorSquare(r, r)};
  for (const auto& [nu, m] : split.positive) {
    const Vec l = scale(nu, m);
    out.section.add_factor(scale(nu, 2), l);
    out.section.add_monomial(outer(nu, l));
    out.form_mod2 += outer(nu, l);
  }
  out.form_mod2 = mod2(out.form_mod2);
  return out;
}

// ---------------------------------------------------------------------------
// Cocycle identities

namespace detail {

template <class S>
S delta_section(const WeylGroup& w, std::size_t u, const S& su, const S& sv, const S& suv) {
  S r = multiply(invert(multiply(su, weyl_act(w, u, sv))), suv);
  if (!r.is_constant()) throw std::logic_error("factor part of a coboundary did not cancel");
  return r;
}

}  // namespace detail

/// Residual sign of (χ_u · u[χ_v])^{-1} · χ_{uv}.
inline ModTwoVector delta_chi(const PolarizationSplit& split, const WeylGroup& w, std::size_t u, std::size_t v) {
  FormalLinearSection r =
      detail::delta_section(w, u, chi_w(split, w, u), chi_w(split, w, v), chi_w(split, w, w.mul(u, v)));
  if (!r.scalars().empty()) throw std::logic_error("scalar part of a coboundary did not cancel");
  return r.sign();
}

struct SignAndMonomial {
  ModTwoVector sign;
  TensorSquare monomial;
};

/// Residual (sign, monomial) of (κ_u · u[κ_v])^{-1} · κ_{uv}.
inline SignAndMonomial delta_kappa(const PolarizationSplit& split, const WeylGroup& w, std::size_t u, std::size_t v) {
  FormalCharacterSection r =
      detail::delta_section(w, u, kappa_w(split, w, u), kappa_w(split, w, v), kappa_w(split, w, w.mul(u, v)));
  return {r.sign(), r.monomial()};
}

/// Two readings of χ_w(ξ)χ_w(-ξ) = w[ε+(ξ)]·ε+^{-1}(wξ):
///   literal:    χ_w(ξ)χ_w(-ξ) · (w[ε+] · ε+^{-1}∘w)^{-1}, all at the same ξ;
///   coboundary: χ_w(ξ)χ_w(-ξ) · (w[ε+] · ε+^{-1})^{-1}, the form obtained by
///               comparing M_w∘C+ with C+∘M_w.
/// The coboundary discrepancy is always constant; the literal one is constant
/// for w = ±1 and need not be otherwise.
template <class S>
struct VepchikappaCheck {
  S literal;
  S coboundary;
  bool literal_constant() const { return literal.is_constant(); }
};

namespace detail {

template <class S>
VepchikappaCheck<S> vepchikappa(const WeylGroup& w, std::size_t u, const S& chi, const S& eps) {
  const S lhs = multiply(chi, substitute_neg(chi));
  const S weps = weyl_act(w, u, eps);
  VepchikappaCheck<S> out{multiply(lhs, invert(multiply(weps, precompose(invert(eps), w, u)))),
                          multiply(lhs, invert(multiply(weps, invert(eps))))};
  if (!out.coboundary.is_constant()) throw std::logic_error("vepchikappa discrepancy is not constant");
  return out;
}

}  // namespace detail

inline VepchikappaCheck<FormalLinearSection> verify_vepchikappa(const PolarizationSplit& split, const WeylGroup& w,
                                                                std::size_t u) {
  return detail::vepchikappa(w, u, chi_w(split, w, u), epsilon_plus(split));
}

inline VepchikappaCheck<FormalCharacterSection> verify_vepchikappa_character(const PolarizationSplit& split,
                                                                             const WeylGroup& w, std::size_t u) {
  return detail::vepchikappa(w, u, kappa_w(split, w, u), lambda_plus(split));
}

// ---------------------------------------------------------------------------
// Automorphisms of the Toda space: (p, h) -> (±w p, shift(p) · (w h)^fiber).

template <class S>
struct TodaAutomorphism {
  std::size_t weyl_part = 0;
  bool negate = false;
  int fiber_exponent = 1;
  S shift;
};

/// p -> s(±w p).
template <class S>
S precompose_base(const S& s, const WeylGroup& w, std::size_t u, bool negate) {
  S out = precompose(s, w, u);
  return negate ? substitute_neg(out) : out;
}

/// g2 ∘ g1.
template <class S>
TodaAutomorphism<S> compose(const TodaAutomorphism<S>& g2, const TodaAutomorphism<S>& g1, const WeylGroup& w) {
  TodaAutomorphism<S> out;
  out.weyl_part = w.mul(g2.weyl_part, g1.weyl_part);
  out.negate = g2.negate != g1.negate;
  out.fiber_exponent = g1.fiber_exponent * g2.fiber_exponent;
  out.shift = multiply(precompose_base(g2.shift, w, g1.weyl_part, g1.negate),
                       power(post_act(w, g2.weyl_part, g1.shift), g2.fiber_exponent));
  return out;
}

/// Vertical difference g·h^{-1} of two automorphisms with the same base and
/// fiber action.
template <class S>
S vertical_discrepancy(const TodaAutomorphism<S>& g, const TodaAutomorphism<S>& h) {
  if (g.weyl_part != h.weyl_part || g.negate != h.negate || g.fiber_exponent != h.fiber_exponent)
    throw std::logic_error("automorphisms differ on the base");
  return multiply(g.shift, invert(h.shift));
}

/// (ξ, h) -> (-ξ, ε+^{-1}(ξ) h^{-1}).
inline TodaAutomorphism<FormalLinearSection> charge_conjugation_linear(const PolarizationSplit& split) {
  return {0, true, -1, invert(epsilon_plus(split))};
}

/// (x, h) -> (x^{-1}, λ+^{-1}(x) h^{-1}).
inline TodaAutomorphism<FormalCharacterSection> charge_conjugation_character(const PolarizationSplit& split) {
  return {0, true, -1, invert(lambda_plus(split))};
}

/// (ξ, h) -> (wξ, χ_w(wξ) (-1)^{φ(w)} wh), with φ an optional correcting
/// cochain.
inline TodaAutomorphism<FormalLinearSection> modified_weyl_linear(const PolarizationSplit& split, const WeylGroup& w,
                                                                  std::size_t u,
                                                                  const Cochain1<ModTwoVector>* correction = nullptr) {
  FormalLinearSection shift = precompose(chi_w(split, w, u), w, u);
  if (correction) shift.add_sign(correction->values.at(u));
  return {u, false, 1, shift};
}

inline TodaAutomorphism<FormalCharacterSection> modified_weyl_character(
    const PolarizationSplit& split, const WeylGroup& w, std::size_t u,
    const Cochain1<ModTwoVector>* sign_correction = nullptr, const Cochain1<TensorSquare>* monomial_correction = nullptr) {
  FormalCharacterSection shift = precompose(kappa_w(split, w, u), w, u);
  if (sign_correction) shift.add_sign(sign_correction->values.at(u));
  if (monomial_correction) shift.add_monomial(monomial_correction->values.at(u));
  return {u, false, 1, shift};
}

/// (M_w ∘ C+) · (C+ ∘ M_w)^{-1}; constant when the two commute up to a
/// vertical translation.
inline FormalLinearSection verify_regweyl(const PolarizationSplit& split, const WeylGroup& w, std::size_t u,
                                          const Cochain1<ModTwoVector>* correction = nullptr) {
  const auto c = charge_conjugation_linear(split);
  const auto m = modified_weyl_linear(split, w, u, correction);
  FormalLinearSection r = vertical_discrepancy(compose(m, c, w), compose(c, m, w));
  if (!r.is_constant()) throw std::logic_error("regweyl discrepancy is not constant");
  return r;
}

inline FormalCharacterSection verify_regweyl_character(const PolarizationSplit& split, const WeylGroup& w,
                                                       std::size_t u,
                                                       const Cochain1<ModTwoVector>* sign_correction = nullptr,
                                                       const Cochain1<TensorSquare>* monomial_correction = nullptr) {
  const auto c = charge_conjugation_character(split);
  const auto m = modified_weyl_character(split, w, u, sign_correction, monomial_correction);
  FormalCharacterSection r = vertical_discrepancy(compose(m, c, w), compose(c, m, w));
  if (!r.is_constant()) throw std::logic_error("regweyl discrepancy is not constant");
  return r;
}

// ---------------------------------------------------------------------------
// Cocharacters, hyperplanes and parity

/// Exponents λ -> ⟨λ|γ⟩; the result has value rank 1.
inline FormalLinearSection pair_with_cocharacter(const FormalLinearSection& s, const Vec& gamma) {
  FormalLinearSection out(s.tag(), 1);
  for (const auto& [k, l] : s.factors()) out.add_factor(k, {dot(l, gamma)});
  for (const auto& [p, l] : s.scalars()) out.add_scalar(p, Vec{dot(l, gamma)});
  out.add_sign({dot(s.sign(), gamma)});
  return out;
}

inline FormalCharacterSection pair_with_cocharacter(const FormalCharacterSection& s, const Vec& gamma) {
  FormalCharacterSection out(s.tag(), 1);
  for (const auto& [k, l] : s.factors()) out.add_factor(k, {dot(l, gamma)});
  IntMatrix g(gamma.size(), 1);
  for (std::size_t i = 0; i < gamma.size(); ++i) g(i, 0) = gamma[i];
  out.add_monomial(s.monomial() * g);
  out.add_sign({dot(s.sign(), gamma)});
  return out;
}

/// Reflection in a root on weights: v -> v - ⟨v|h⟩α.
inline IntMatrix root_reflection(const Vec& alpha, const Vec& coroot) {
  IntMatrix s = IntMatrix::identity(alpha.size());
  for (std::size_t i = 0; i < alpha.size(); ++i)
    for (std::size_t j = 0; j < alpha.size(); ++j) s(i, j) -= alpha[i] * coroot[j];
  return s;
}

struct HyperplaneRestriction {
  Vec root;
  Vec coroot;
  Vec vanishing_exponent;
  FormalLinearSection residual;  // keys are s_α-invariant weights
};

/// Restriction to ⟨α|ξ⟩ = 0. On the hyperplane ⟨ν|ξ⟩ = ½⟨ν + s_αν|ξ⟩; factors
/// with ν + s_αν = 0 are proportional to α and vanish identically.
inline HyperplaneRestriction restrict_to_hyperplane(const FormalLinearSection& s, const RootDatum& d,
                                                    const Vec& alpha) {
  auto idx = d.root_index(alpha);
  if (!idx) throw std::invalid_argument("not a root: " + detail::vec_string(alpha));
  const Vec& h = d.coroots[*idx];
  const IntMatrix refl = root_reflection(alpha, h);
  // ξ0 + s_α ξ0 lies on the hyperplane
  const Vec tag = sub(scale(s.tag(), 2), scale(h, dot(alpha, s.tag())));
  HyperplaneRestriction out{alpha, h, Vec(s.value_rank(), 0), FormalLinearSection(tag, s.value_rank())};
  for (const auto& [k, l] : s.factors()) {
    const Vec u = add(k, refl * k);
    if (is_zero(u)) {
      out.vanishing_exponent = add(out.vanishing_exponent, l);
      continue;
    }
    out.residual.add_factor(u, l);
    out.residual.add_scalar(Rational(1, 2), l);
  }
  for (const auto& [p, l] : s.scalars()) out.residual.add_scalar(p, l);
  out.residual.add_sign(s.sign());
  return out;
}

/// Whether a restricted section f is φ^{s-1} = s[φ]/φ for a rational φ on the
/// hyperplane, s = s_α acting on the values.
struct HyperplaneClass {
  bool keys_ok = true;     // every key exponent lies in (1 - s)Λ
  bool scalars_ok = true;  // positive constants are killed by 1 + s
  bool sign_ok = true;     // (1 + s)σ ∈ 2(1 + s)Λ
  std::optional<Vec> witness_key;
  bool trivial() const { return keys_ok && scalars_ok && sign_ok; }
};

inline HyperplaneClass hyperplane_class(const HyperplaneRestriction& r) {
  const std::size_t n = r.root.size();
  const IntMatrix s = root_reflection(r.root, r.coroot);
  IntMatrix one_minus(n, n), one_plus(n, n), two_one_plus(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Int id = i == j ? 1 : 0;
      one_minus(i, j) = id - s(i, j);
      one_plus(i, j) = id + s(i, j);
      two_one_plus(i, j) = 2 * (id + s(i, j));
    }
  HyperplaneClass c;
  for (const auto& [k, l] : r.residual.factors())
    if (!lattice_contains(one_minus, l)) {
      c.keys_ok = false;
      if (!c.witness_key) c.witness_key = k;
    }
  for (const auto& [p, l] : r.residual.scalars())
    if (!is_zero(one_plus * l)) c.scalars_ok = false;
  c.sign_ok = lattice_contains(two_one_plus, one_plus * r.residual.sign());
  return c;
}

struct TorsorParityEntry {
  Vec key;
  Vec exponent;
  bool odd = false;
};

struct TorsorParityReport {
  std::vector<TorsorParityEntry> entries;
  bool coboundary_possible = true;
};

/// δφ = φ(-ξ)^{-1}/φ(ξ) has even valuation along every line ν = 0, so an odd
/// exponent rules out a rational trivialization.
inline TorsorParityReport torsor_parity(const FormalLinearSection& s) {
  TorsorParityReport rep;
  for (const auto& [k, l] : s.factors()) {
    const bool odd = !is_zero(mod2(l));
    rep.entries.push_back({k, l, odd});
    if (odd) rep.coboundary_possible = false;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Printing: one bracketed row per coordinate of the value lattice.

inline std::string to_string(const FormalLinearSection& s) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < s.value_rank(); ++i) {
    os << (i ? "; " : " ");
    bool any = false;
    for (const auto& [p, l] : s.scalars())
      if (l[i]) {
        os << (any ? " " : "") << p << "^" << l[i];
        any = true;
      }
    for (const auto& [k, l] : s.factors())
      if (l[i]) {
        os << (any ? " " : "") << "<" << detail::vec_string(k) << ">^" << l[i];
        any = true;
      }
    if (!any) os << "1";
  }
  os << " ]";
  if (!is_zero(s.sign())) os << " (-1)^" << detail::vec_string(s.sign());
  return os.str();
}

inline std::string to_string(const FormalCharacterSection& s) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < s.value_rank(); ++i) {
    os << (i ? "; " : " ");
    bool any = false;
    Vec mono(s.domain_rank());
    for (std::size_t j = 0; j < s.domain_rank(); ++j) mono[j] = s.monomial()(j, i);
    if (!is_zero(mono)) {
      os << "x^" << detail::vec_string(mono);
      any = true;
    }
    for (const auto& [k, l] : s.factors())
      if (l[i]) {
        os << (any ? " " : "") << "(1-x^-" << detail::vec_string(k) << ")^" << l[i];
        any = true;
      }
    if (!any) os << "1";
  }
  os << " ]";
  if (!is_zero(s.sign())) os << " (-1)^" << detail::vec_string(s.sign());
  return os.str();
}

}  // namespace coulomb
