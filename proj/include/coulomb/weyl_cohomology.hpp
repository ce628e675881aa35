#pragma once

// Weyl group cochains with values in Λ/2, Λ⊗Λ and Λ⊗Λ/2, the cocycles
// c, s⊗² and d built from a polarized representation, and exactness tests by
// explicit cochain linear algebra.

#include "coulomb/f2_linalg.hpp"
#include "coulomb/representation.hpp"

#include <array>
#include <set>

namespace coulomb {

using ModTwoVector = Vec;   // entries in {0,1}
using TensorSquare = IntMatrix;  // sum of mu lambda^T, an element of Λ⊗Λ

inline TensorSquare outer(const Vec& a, const Vec& b) {
  TensorSquare t(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) t(i, j) = a[i] * b[j];
  return t;
}

inline TensorSquare& operator+=(TensorSquare& a, const TensorSquare& b) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) += b(i, j);
  return a;
}
inline TensorSquare operator+(TensorSquare a, const TensorSquare& b) { return a += b; }
inline TensorSquare operator-(TensorSquare a, const TensorSquare& b) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) -= b(i, j);
  return a;
}
inline TensorSquare operator-(TensorSquare a) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = -a(i, j);
  return a;
}

inline TensorSquare mod2(TensorSquare t) {
  for (std::size_t i = 0; i < t.rows(); ++i)
    for (std::size_t j = 0; j < t.cols(); ++j) t(i, j) = ((t(i, j) % 2) + 2) % 2;
  return t;
}

inline bool is_zero(const TensorSquare& t) {
  for (auto x : t.data())
    if (x != 0) return false;
  return true;
}

/// Diagonal action w.(a⊗b) = wa⊗wb, i.e. M T M^T.
inline TensorSquare tensor_act(const IntMatrix& m, const TensorSquare& t) { return m * t * m.transpose(); }

template <class M>
struct Cochain1 {
  std::vector<M> values;  // indexed by Weyl element
  const M& operator()(std::size_t w) const { return values[w]; }
};

template <class M>
struct Cochain2 {
  std::size_t order = 0;
  std::vector<M> values;  // index u * order + v
  const M& operator()(std::size_t u, std::size_t v) const { return values[u * order + v]; }
};

// ---------------------------------------------------------------------------
// The cocycles

/// c(u,v) = sum of uvν over {ν>0, vν<0, uvν>0}, mod 2.
inline ModTwoVector cocycle_c(const PolarizationSplit& split, const WeylGroup& w, std::size_t u, std::size_t v) {
  split.require_strict();
  Vec acc(split.xi0.size(), 0);
  const std::size_t uv = w.mul(u, v);
  for (const auto& [nu, m] : split.positive) {
    if (dot(w.act(v, nu), split.xi0) >= 0) continue;
    Vec uvnu = w.act(uv, nu);
    if (dot(uvnu, split.xi0) <= 0) continue;
    acc = add(acc, scale(uvnu, m));
  }
  return mod2(acc);
}

/// Integral lift of s⊗²(w): sum of wν⊗wν over {ν>0, wν<0}.
inline TensorSquare cocycle_s2_integral(const PolarizationSplit& split, const WeylGroup& w, std::size_t g) {
  split.require_strict();
  const std::size_t r = split.xi0.size();
  TensorSquare acc(r, r);
  for (const auto& [nu, m] : split.positive) {
    Vec wnu = w.act(g, nu);
    if (dot(wnu, split.xi0) >= 0) continue;
    TensorSquare o = outer(wnu, wnu);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) acc(i, j) += m * o(i, j);
  }
  return acc;
}

inline TensorSquare cocycle_s2(const PolarizationSplit& split, const WeylGroup& w, std::size_t g) {
  return mod2(cocycle_s2_integral(split, w, g));
}

/// d(u,v) = sum of uvν⊗uvν over {ν<0, vν>0, uvν<0}.
inline TensorSquare cocycle_d(const PolarizationSplit& split, const WeylGroup& w, std::size_t u, std::size_t v) {
  split.require_strict();
  const std::size_t r = split.xi0.size();
  TensorSquare acc(r, r);
  const std::size_t uv = w.mul(u, v);
  for (const auto& [nu, m] : split.negative) {
    if (dot(w.act(v, nu), split.xi0) <= 0) continue;
    Vec uvnu = w.act(uv, nu);
    if (dot(uvnu, split.xi0) >= 0) continue;
    TensorSquare o = outer(uvnu, uvnu);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) acc(i, j) += m * o(i, j);
  }
  return acc;
}

inline Cochain2<ModTwoVector> cochain_c(const PolarizationSplit& split, const WeylGroup& w) {
  Cochain2<ModTwoVector> c{w.size(), {}};
  c.values.reserve(w.size() * w.size());
  for (std::size_t u = 0; u < w.size(); ++u)
    for (std::size_t v = 0; v < w.size(); ++v) c.values.push_back(cocycle_c(split, w, u, v));
  return c;
}

inline Cochain1<TensorSquare> cochain_s2(const PolarizationSplit& split, const WeylGroup& w) {
  Cochain1<TensorSquare> s;
  for (std::size_t g = 0; g < w.size(); ++g) s.values.push_back(cocycle_s2(split, w, g));
  return s;
}

inline Cochain1<TensorSquare> cochain_s2_integral(const PolarizationSplit& split, const WeylGroup& w) {
  Cochain1<TensorSquare> s;
  for (std::size_t g = 0; g < w.size(); ++g) s.values.push_back(cocycle_s2_integral(split, w, g));
  return s;
}

inline Cochain2<TensorSquare> cochain_d(const PolarizationSplit& split, const WeylGroup& w) {
  Cochain2<TensorSquare> d{w.size(), {}};
  for (std::size_t u = 0; u < w.size(); ++u)
    for (std::size_t v = 0; v < w.size(); ++v) d.values.push_back(cocycle_d(split, w, u, v));
  return d;
}

// ---------------------------------------------------------------------------
// Verifiers

struct CocycleCheck {
  bool ok = true;
  std::vector<std::size_t> witness;  // failing tuple of Weyl indices
};

/// u.c(v,t) - c(uv,t) + c(u,vt) - c(u,v) = 0 over F2, plus normalization
/// c(e,v) = c(u,e) = 0.
inline CocycleCheck verify_2cocycle(const Cochain2<ModTwoVector>& c, const WeylGroup& w) {
  const std::size_t n = w.size();
  for (std::size_t u = 0; u < n; ++u)
    if (!is_zero(c(0, u)) || !is_zero(c(u, 0))) return {false, {0, u}};
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t t = 0; t < n; ++t) {
        Vec s = add(add(w.act(u, c(v, t)), c(w.mul(u, v), t)), add(c(u, w.mul(v, t)), c(u, v)));
        if (!is_zero(mod2(s))) return {false, {u, v, t}};
      }
  return {};
}

/// s(uv) = s(u) + u.s(v) mod 2.
inline CocycleCheck verify_crossed_hom(const Cochain1<TensorSquare>& s, const WeylGroup& w) {
  for (std::size_t u = 0; u < w.size(); ++u)
    for (std::size_t v = 0; v < w.size(); ++v) {
      TensorSquare rhs = s(u) + tensor_act(w[u], s(v));
      if (!(mod2(rhs) == mod2(s(w.mul(u, v))))) return {false, {u, v}};
    }
  return {};
}

// ---------------------------------------------------------------------------
// Coboundary solvers

/// Affine solution set: particular solution plus a basis of the kernel
/// (cocycles of the homogeneous problem).
template <class Sol>
struct CoboundarySolution {
  std::optional<Sol> particular;
  std::vector<Sol> kernel;
  bool solvable() const { return particular.has_value(); }
};

/// Finds φ: W -> Λ/2 with φ(e) = 0 and u.φ(v) - φ(uv) + φ(u) = c(u,v).
inline CoboundarySolution<Cochain1<ModTwoVector>> solve_coboundary_c(const Cochain2<ModTwoVector>& c,
                                                                     const WeylGroup& w) {
  const std::size_t n = w.size();
  const std::size_t r = n ? w[0].rows() : 0;
  auto idx = [r](std::size_t g, std::size_t k) { return (g - 1) * r + k; };
  F2System sys((n - 1) * r);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) {
      const std::size_t uv = w.mul(u, v);
      const Vec cv = mod2(c(u, v));
      for (std::size_t k = 0; k < r; ++k) {
        BitVec row(sys.unknowns());
        if (v != 0)
          for (std::size_t j = 0; j < r; ++j)
            if (w[u](k, j) % 2 != 0) row.flip(idx(v, j));
        if (uv != 0) row.flip(idx(uv, k));
        if (u != 0) row.flip(idx(u, k));
        sys.add(std::move(row), cv[k] != 0);
      }
    }
  const F2Solution f = sys.solve();
  auto unpack = [&](const BitVec& x) {
    Cochain1<ModTwoVector> phi;
    phi.values.assign(n, Vec(r, 0));
    for (std::size_t g = 1; g < n; ++g)
      for (std::size_t k = 0; k < r; ++k) phi.values[g][k] = x.get(idx(g, k)) ? 1 : 0;
    return phi;
  };
  CoboundarySolution<Cochain1<ModTwoVector>> out;
  if (f.particular) out.particular = unpack(*f.particular);
  for (const auto& k : f.kernel) out.kernel.push_back(unpack(k));
  return out;
}

/// Finds t in Λ⊗²/2 with s(w) = t - w.t for every w.
inline CoboundarySolution<TensorSquare> solve_coboundary_s2(const Cochain1<TensorSquare>& s, const WeylGroup& w) {
  const std::size_t r = w.size() ? w[0].rows() : 0;
  F2System sys(r * r);
  for (std::size_t g = 0; g < w.size(); ++g) {
    const IntMatrix& m = w[g];
    const TensorSquare sv = mod2(s(g));
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < r; ++b) {
        BitVec row(r * r);
        row.flip(a * r + b);
        for (std::size_t c = 0; c < r; ++c)
          for (std::size_t d = 0; d < r; ++d)
            if ((m(a, c) * m(b, d)) % 2 != 0) row.flip(c * r + d);
        sys.add(std::move(row), sv(a, b) != 0);
      }
  }
  const F2Solution f = sys.solve();
  auto unpack = [r](const BitVec& x) {
    TensorSquare t(r, r);
    for (std::size_t i = 0; i < r * r; ++i) t(i / r, i % r) = x.get(i) ? 1 : 0;
    return t;
  };
  CoboundarySolution<TensorSquare> out;
  if (f.particular) out.particular = unpack(*f.particular);
  for (const auto& k : f.kernel) out.kernel.push_back(unpack(k));
  return out;
}

/// Integral coboundary of a 1-cochain with values in Λ⊗Λ.
inline Cochain2<TensorSquare> coboundary(const Cochain1<TensorSquare>& s, const WeylGroup& w) {
  Cochain2<TensorSquare> d{w.size(), {}};
  for (std::size_t u = 0; u < w.size(); ++u)
    for (std::size_t v = 0; v < w.size(); ++v) d.values.push_back(tensor_act(w[u], s(v)) - s(w.mul(u, v)) + s(u));
  return d;
}

/// Solves δΨ = target over Z for Ψ: W -> Λ⊗Λ with Ψ(e) = 0.
inline std::optional<Cochain1<TensorSquare>> solve_integral_coboundary(const Cochain2<TensorSquare>& target,
                                                                       const WeylGroup& w) {
  const std::size_t n = w.size();
  const std::size_t r = n ? w[0].rows() : 0;
  const std::size_t r2 = r * r;
  auto idx = [r2](std::size_t g, std::size_t k) { return (g - 1) * r2 + k; };
  const std::size_t unknowns = (n - 1) * r2;
  std::vector<std::vector<BigInt>> rows;
  std::vector<BigInt> rhs;
  std::set<std::pair<std::vector<BigInt>, BigInt>> seen;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) {
      const std::size_t uv = w.mul(u, v);
      const IntMatrix& m = w[u];
      for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b) {
          std::vector<BigInt> row(unknowns, 0);
          if (v != 0)
            for (std::size_t c = 0; c < r; ++c)
              for (std::size_t d = 0; d < r; ++d) row[idx(v, c * r + d)] += m(a, c) * m(b, d);
          if (uv != 0) row[idx(uv, a * r + b)] -= 1;
          if (u != 0) row[idx(u, a * r + b)] += 1;
          BigInt t = target(u, v)(a, b);
          bool zero_row = std::all_of(row.begin(), row.end(), [](const BigInt& x) { return x == 0; });
          if (zero_row) {
            if (t != 0) return std::nullopt;
            continue;
          }
          if (!seen.insert({row, t}).second) continue;
          rows.push_back(std::move(row));
          rhs.push_back(t);
        }
    }
  if (unknowns == 0) return Cochain1<TensorSquare>{std::vector<TensorSquare>(n, TensorSquare(r, r))};
  if (rows.empty()) return Cochain1<TensorSquare>{std::vector<TensorSquare>(n, TensorSquare(r, r))};
  BigMatrix a(rows.size(), unknowns);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < unknowns; ++j) a(i, j) = rows[i][j];
  auto x = solve_integer(a, rhs);
  if (!x) return std::nullopt;
  Cochain1<TensorSquare> psi;
  psi.values.assign(n, TensorSquare(r, r));
  for (std::size_t g = 1; g < n; ++g)
    for (std::size_t k = 0; k < r2; ++k) psi.values[g](k / r, k % r) = to_int((*x)[idx(g, k)]);
  return psi;
}

/// Bockstein relation between the integral lift S of s⊗² and d: δS is even,
/// and δS/2 - d is an integral coboundary.
struct BocksteinCheck {
  bool delta_even = false;
  bool cohomologous = false;
  std::optional<Cochain1<TensorSquare>> witness;  // Ψ with δΨ = δS/2 - d
  bool holds() const { return delta_even && cohomologous; }
};

inline BocksteinCheck bockstein_relation(const PolarizationSplit& split, const WeylGroup& w) {
  BocksteinCheck out;
  const Cochain2<TensorSquare> ds = coboundary(cochain_s2_integral(split, w), w);
  const Cochain2<TensorSquare> d = cochain_d(split, w);
  Cochain2<TensorSquare> diff{w.size(), {}};
  for (std::size_t i = 0; i < ds.values.size(); ++i) {
    if (!is_zero(mod2(ds.values[i]))) return out;
    TensorSquare half = ds.values[i];
    for (std::size_t a = 0; a < half.rows(); ++a)
      for (std::size_t b = 0; b < half.cols(); ++b) half(a, b) /= 2;
    diff.values.push_back(half - d.values[i]);
  }
  out.delta_even = true;
  out.witness = solve_integral_coboundary(diff, w);
  out.cohomologous = out.witness.has_value();
  return out;
}

}  // namespace coulomb
