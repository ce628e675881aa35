#pragma once

// Quaternionic representations seen through the maximal torus.

#include "coulomb/weyl_group.hpp"

#include <memory>
#include <set>

namespace coulomb {

using DatumPtr = std::shared_ptr<const RootDatum>;
using WeightMap = std::map<Vec, Int>;

/// Weights with multiplicities, in cover coordinates of the datum (spin
/// blocks doubled). Partial tensor factors of a quotient need not lie in the
/// weight lattice of the group; intrinsic() checks membership.
class WeightMultiset {
 public:
  WeightMultiset() = default;
  explicit WeightMultiset(DatumPtr d) : datum_(std::move(d)) {}
  WeightMultiset(DatumPtr d, WeightMap cover_entries) : datum_(std::move(d)) {
    for (auto& [v, m] : cover_entries) add(v, m);
  }

  /// Builds from intrinsic coordinates.
  static WeightMultiset from_intrinsic(DatumPtr d, const WeightMap& w) {
    WeightMultiset e(d);
    for (const auto& [v, m] : w) e.add(d->weight_to_cover(v), m);
    return e;
  }

  const DatumPtr& datum() const { return datum_; }
  const WeightMap& entries() const { return entries_; }

  void add(const Vec& cover_weight, Int mult = 1) {
    if (cover_weight.size() != datum_->cover_rank()) throw std::invalid_argument("weight has wrong length");
    if (mult < 0) throw std::invalid_argument("negative multiplicity");
    if (mult == 0) return;
    entries_[cover_weight] += mult;
  }

  Int dimension() const {
    Int n = 0;
    for (const auto& [v, m] : entries_) n += m;
    return n;
  }

  Int multiplicity(const Vec& cover_weight) const {
    auto it = entries_.find(cover_weight);
    return it == entries_.end() ? 0 : it->second;
  }

  bool is_self_dual() const {
    for (const auto& [v, m] : entries_)
      if (multiplicity(neg(v)) != m) return false;
    return dimension() % 2 == 0;
  }

  /// First cover weight outside the weight lattice, if any.
  std::optional<Vec> lattice_violation() const {
    for (const auto& [v, m] : entries_)
      if (!datum_->weight_from_cover(v)) return v;
    return std::nullopt;
  }

  /// Weights in intrinsic coordinates; throws if some weight is not a weight
  /// of the group.
  WeightMap intrinsic() const {
    WeightMap out;
    for (const auto& [v, m] : entries_) {
      auto x = datum_->weight_from_cover(v);
      if (!x) throw std::invalid_argument("weight is not in the weight lattice of the group");
      out[*x] += m;
    }
    return out;
  }

  friend bool operator==(const WeightMultiset& a, const WeightMultiset& b) { return a.entries_ == b.entries_; }

 private:
  DatumPtr datum_;
  WeightMap entries_;
};

namespace detail {

inline void require_same(const WeightMultiset& a, const WeightMultiset& b) {
  if (a.datum() != b.datum() && a.datum()->cover_rank() != b.datum()->cover_rank())
    throw std::invalid_argument("representations live on different root data");
}

inline Vec factor_unit(const RootDatum& d, const FactorInfo& f, std::size_t i, Int value) {
  Vec v(d.cover_rank(), 0);
  v[f.cover_offset + i] = value;
  return v;
}

}  // namespace detail

/// Defining representation of one factor (complex weights; self-dual for Sp,
/// Spin and SO, and for SU(2)).
inline WeightMultiset standard_rep(const DatumPtr& d, std::size_t factor) {
  const FactorInfo& f = d->factor(factor);
  WeightMultiset e(d);
  switch (f.family) {
    case Family::SU:
      for (int i = 0; i < f.n; ++i) e.add(detail::pad(detail::su_epsilon(f.n, i), f.cover_offset,
                                                       d->cover_rank() - f.cover_offset - f.cover_rank));
      break;
    case Family::Sp:
      for (std::size_t i = 0; i < f.cover_rank; ++i)
        for (Int s : {1, -1}) e.add(detail::factor_unit(*d, f, i, s));
      break;
    case Family::Spin:
    case Family::SO:
      for (std::size_t i = 0; i < f.cover_rank; ++i)
        for (Int s : {2, -2}) e.add(detail::factor_unit(*d, f, i, s));
      if (f.n % 2 == 1) e.add(Vec(d->cover_rank(), 0));
      break;
    case Family::Torus:
      for (std::size_t i = 0; i < f.cover_rank; ++i) e.add(detail::factor_unit(*d, f, i, 1));
      break;
  }
  return e;
}

/// Spin representation of a Spin factor: all sign vectors (1/2)(+-1,...,+-1),
/// restricted by chirality (+1 even number of minus signs, -1 odd, 0 all).
inline WeightMultiset spinor_rep(const DatumPtr& d, std::size_t factor, int chirality = 0) {
  const FactorInfo& f = d->factor(factor);
  if (f.family != Family::Spin) throw std::invalid_argument("spinor_rep needs a Spin factor");
  WeightMultiset e(d);
  const std::size_t l = f.cover_rank;
  for (std::size_t mask = 0; mask < (std::size_t{1} << l); ++mask) {
    const int minus = __builtin_popcountll(mask);
    if (chirality == 1 && minus % 2 != 0) continue;
    if (chirality == -1 && minus % 2 == 0) continue;
    Vec v(d->cover_rank(), 0);
    for (std::size_t i = 0; i < l; ++i) v[f.cover_offset + i] = (mask >> i) & 1 ? -1 : 1;
    e.add(v);
  }
  return e;
}

/// Irreducible representation of highest weight k*w on an SU(2) or Sp(1)
/// factor.
inline WeightMultiset su2_irrep(const DatumPtr& d, std::size_t factor, int k) {
  const FactorInfo& f = d->factor(factor);
  const bool rank_one = (f.family == Family::SU && f.n == 2) || (f.family == Family::Sp && f.n == 1);
  if (!rank_one || k < 0) throw std::invalid_argument("su2_irrep needs an SU(2)/Sp(1) factor and k >= 0");
  WeightMultiset e(d);
  for (int j = k; j >= -k; j -= 2) e.add(detail::factor_unit(*d, f, 0, j));
  return e;
}

inline WeightMultiset adjoint_rep(const DatumPtr& d) {
  WeightMultiset e(d);
  for (const auto& r : d->roots) e.add(d->weight_to_cover(r));
  e.add(Vec(d->cover_rank(), 0), static_cast<Int>(d->rank()));
  return e;
}

inline WeightMultiset trivial_rep(const DatumPtr& d, Int dim) {
  WeightMultiset e(d);
  e.add(Vec(d->cover_rank(), 0), dim);
  return e;
}

inline WeightMultiset tensor(const WeightMultiset& a, const WeightMultiset& b) {
  detail::require_same(a, b);
  WeightMultiset e(a.datum());
  for (const auto& [u, m] : a.entries())
    for (const auto& [v, n] : b.entries()) e.add(add(u, v), m * n);
  return e;
}

inline WeightMultiset direct_sum(const WeightMultiset& a, const WeightMultiset& b) {
  detail::require_same(a, b);
  WeightMultiset e = a;
  for (const auto& [v, m] : b.entries()) e.add(v, m);
  return e;
}

inline WeightMultiset dual(const WeightMultiset& a) {
  WeightMultiset e(a.datum());
  for (const auto& [v, m] : a.entries()) e.add(neg(v), m);
  return e;
}

/// a + a^dual, the quaternionic double.
inline WeightMultiset quaternionify(const WeightMultiset& a) { return direct_sum(a, dual(a)); }

inline WeightMultiset scale(const WeightMultiset& a, Int k) {
  WeightMultiset e(a.datum());
  for (const auto& [v, m] : a.entries()) e.add(v, m * k);
  return e;
}

/// Multiset difference a - b; on failure returns the first weight of b that
/// a does not contain often enough.
struct DifferenceResult {
  std::optional<WeightMultiset> value;
  std::optional<Vec> witness;
};

inline DifferenceResult difference(const WeightMultiset& a, const WeightMultiset& b) {
  detail::require_same(a, b);
  WeightMap left = a.entries();
  for (const auto& [v, m] : b.entries()) {
    auto it = left.find(v);
    if (it == left.end() || it->second < m) return {std::nullopt, v};
    it->second -= m;
    if (it->second == 0) left.erase(it);
  }
  return {WeightMultiset(a.datum(), left), std::nullopt};
}

/// Sign convention for "positive" weights: pairing with xi0 first, then the
/// first nonzero coordinate as a tie-break.
inline int orientation(const Vec& v, const Vec& xi0) {
  const Int p = dot(v, xi0);
  if (p != 0) return p > 0 ? 1 : -1;
  for (Int x : v)
    if (x != 0) return x > 0 ? 1 : -1;
  return 0;
}

inline bool is_positive(const Vec& v, const Vec& xi0) { return orientation(v, xi0) > 0; }

/// Representative of {v, -v} that is positive in the orientation above.
inline Vec positive_rep(const Vec& v, const Vec& xi0) { return orientation(v, xi0) < 0 ? neg(v) : v; }

/// Intrinsic weights split by the sign of their pairing with xi0. The
/// invariant half V, if given, is removed (together with its dual) before the
/// split; it plays no role in the cocycles.
struct PolarizationSplit {
  DatumPtr datum;
  Vec xi0;
  WeightMap positive;
  WeightMap zero;
  WeightMap negative;
  WeightMap invariant_half;

  /// True when no nonzero weight pairs to zero with xi0.
  bool strict() const {
    for (const auto& [v, m] : zero)
      if (!is_zero(v)) return false;
    return true;
  }

  void require_strict() const {
    if (!strict()) throw std::invalid_argument("xi0 is not regular for this representation");
  }
};

inline WeightMap negate(const WeightMap& w) {
  WeightMap out;
  for (const auto& [v, m] : w) out[neg(v)] += m;
  return out;
}

inline PolarizationSplit polarize(const WeightMultiset& e, const Vec& xi0, const WeightMap& invariant_half = {}) {
  const DatumPtr& d = e.datum();
  if (xi0.size() != d->rank()) throw std::invalid_argument("xi0 has wrong length");
  PolarizationSplit s{d, xi0, {}, {}, {}, invariant_half};
  WeightMap rest = e.intrinsic();
  auto take = [&](const WeightMap& part) {
    for (const auto& [v, m] : part) {
      auto it = rest.find(v);
      if (it == rest.end() || it->second < m)
        throw std::invalid_argument("invariant half is not contained in the representation");
      it->second -= m;
      if (it->second == 0) rest.erase(it);
    }
  };
  take(invariant_half);
  take(negate(invariant_half));
  for (const auto& [v, m] : rest) {
    const Int p = dot(v, xi0);
    (p > 0 ? s.positive : p < 0 ? s.negative : s.zero)[v] += m;
  }
  return s;
}

/// True when the Weyl group maps the multiset to itself.
inline bool is_weyl_stable(const WeightMap& w, const WeylGroup& weyl) {
  for (std::size_t g : weyl.generators()) {
    WeightMap moved;
    for (const auto& [v, m] : w) moved[weyl.act(g, v)] += m;
    if (moved != w) return false;
  }
  return true;
}

/// A W-stable half V of the intrinsic weights (E = V + V∨ at torus level),
/// built orbit by orbit: a self-dual orbit needs even multiplicity.
inline std::optional<WeightMap> weyl_polarization(const WeightMultiset& e, const WeylGroup& weyl) {
  WeightMap rest = e.intrinsic();
  WeightMap v;
  while (!rest.empty()) {
    const Vec nu = rest.begin()->first;
    const Int m = rest.begin()->second;
    std::set<Vec> orbit;
    for (std::size_t u = 0; u < weyl.size(); ++u) orbit.insert(weyl.act(u, nu));
    const bool self_dual = orbit.count(neg(nu)) > 0;
    auto take = [&](const Vec& x, Int k) {
      auto it = rest.find(x);
      if (it == rest.end() || it->second < k) return false;
      if ((it->second -= k) == 0) rest.erase(it);
      return true;
    };
    if (self_dual && m % 2 != 0) return std::nullopt;
    for (const Vec& x : orbit) {
      if (!take(x, m)) return std::nullopt;
      v[x] += self_dual ? m / 2 : m;
      if (!self_dual && !take(neg(x), m)) return std::nullopt;
    }
  }
  return v;
}

/// A lexicographically small regular coweight: pairs nonzero with every
/// nonzero weight of e and every root.
inline Vec default_xi0(const RootDatum& d, const WeightMap& weights) {
  const std::size_t r = d.rank();
  std::vector<Vec> test;
  for (const auto& [v, m] : weights)
    if (!is_zero(v)) test.push_back(v);
  for (const auto& root : d.roots) test.push_back(root);
  // coordinates 1, B, B^2, ... with B larger than any weight coordinate sum
  Int bound = 2;
  for (const auto& v : test) {
    Int s = 0;
    for (Int x : v) s += x < 0 ? -x : x;
    bound = std::max(bound, s + 1);
  }
  Vec xi(r, 0);
  Int p = 1;
  for (std::size_t i = r; i-- > 0;) {
    xi[i] = p;
    p *= bound;
  }
  for (const auto& v : test)
    if (dot(v, xi) == 0) throw std::logic_error("default_xi0 failed to find a regular coweight");
  return xi;
}

/// Integer-valued quadratic form on coweights, q(g) = g^T Q g.
struct QuadraticForm {
  RatMatrix gram;

  Rational operator()(const Vec& g) const {
    Rational s(0);
    for (std::size_t i = 0; i < g.size(); ++i)
      for (std::size_t j = 0; j < g.size(); ++j) s += Rational(g[i] * g[j]) * gram(i, j);
    return s;
  }

  Int value(const Vec& g) const { return to_int((*this)(g)); }

  /// Integral symmetric bilinear form b(g,h) = q(g+h) - q(g) - q(h).
  Int polar(const Vec& g, const Vec& h) const { return value(add(g, h)) - value(g) - value(h); }
};

/// The c2 form q(g) = sum over positive weights of <v|g>^2, sign convention
/// positive.
inline QuadraticForm c2_form(const WeightMultiset& e) {
  const std::size_t r = e.datum()->rank();
  QuadraticForm q{RatMatrix(r, r)};
  for (const auto& [v, m] : e.intrinsic())
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) q.gram(i, j) += Rational(m * v[i] * v[j], 2);
  return q;
}

}  // namespace coulomb
