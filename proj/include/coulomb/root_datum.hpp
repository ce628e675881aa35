#pragma once

// Root data of products of classical groups and tori, and their central
// quotients.
//
// Every datum carries two coordinate systems. "Cover" coordinates are the
// ambient ones of the simply connected cover (fundamental weights for SU,
// epsilon coordinates for Sp, doubled epsilon coordinates for Spin). All
// computation happens in "intrinsic" coordinates: weights are integer vectors
// in a basis of the weight lattice of the group itself, coweights are integer
// vectors in the dual basis, and the pairing is the dot product.

#include "coulomb/integer_linalg.hpp"

#include <numeric>
#include <sstream>
#include <string>

namespace coulomb {

enum class Family { SU, Sp, Spin, SO, Torus };

inline std::string family_name(Family f) {
  switch (f) {
    case Family::SU: return "SU";
    case Family::Sp: return "Sp";
    case Family::Spin: return "Spin";
    case Family::SO: return "SO";
    case Family::Torus: return "U1";
  }
  return "?";
}

inline Family parse_family(const std::string& s) {
  if (s == "SU") return Family::SU;
  if (s == "Sp") return Family::Sp;
  if (s == "Spin") return Family::Spin;
  if (s == "SO") return Family::SO;
  if (s == "U1" || s == "Torus" || s == "U") return Family::Torus;
  throw std::invalid_argument("unknown group family '" + s + "'");
}

struct Lattice {
  std::size_t rank = 0;
  std::vector<std::string> basis_labels;
};

/// One simple or torus factor, located by its cover coordinate block.
struct FactorInfo {
  Family family;
  int n;                      // SU(n), Sp(n), Spin(n), SO(n), U(1)^n
  std::size_t cover_offset;
  std::size_t cover_rank;
  std::size_t root_begin;     // roots of this factor occupy [root_begin, root_end)
  std::size_t root_end;

  bool doubled() const { return family == Family::Spin || family == Family::SO; }
  std::string name() const {
    if (family == Family::Torus) return n == 1 ? "U1" : "U1^" + std::to_string(n);
    return family_name(family) + "(" + std::to_string(n) + ")";
  }
};

/// How a datum was assembled: factors of the cover and the quotient kernel
/// (rational coweights in cover coordinates).
struct FactorStructure {
  std::vector<FactorInfo> factors;
  std::vector<RatVec> kernel;
};

struct RootDatum {
  Lattice weight_lattice;
  Lattice coweight_lattice;
  IntMatrix cover_basis;             // columns: basis of the weight lattice, cover coordinates
  RatMatrix cover_pairing;           // <v|g> = v^T P g in cover coordinates
  std::vector<Vec> roots;            // intrinsic weights
  std::vector<Vec> coroots;          // intrinsic coweights, aligned with roots
  std::vector<std::size_t> simple_roots;
  std::vector<IntMatrix> weyl_generators;  // reflections in the simple roots
  FactorStructure structure;

  std::size_t rank() const { return weight_lattice.rank; }
  std::size_t cover_rank() const { return cover_basis.rows(); }

  /// Pairing of intrinsic weight and intrinsic coweight.
  static Int pairing(const Vec& weight, const Vec& coweight) { return dot(weight, coweight); }

  /// Intrinsic coordinates of a cover weight, or nullopt if it is not in the
  /// weight lattice of the group.
  std::optional<Vec> weight_from_cover(const Vec& v) const {
    std::vector<BigInt> b(v.begin(), v.end());
    auto x = solve_integer(to_big(cover_basis), b);
    if (!x) return std::nullopt;
    Vec out;
    for (const auto& c : *x) out.push_back(to_int(c));
    return out;
  }

  Vec weight_to_cover(const Vec& x) const { return cover_basis * x; }

  /// Intrinsic coordinates of a cover coweight, possibly fractional.
  RatVec coweight_from_cover(const RatVec& g) const {
    return to_rational(cover_basis).transpose() * (cover_pairing * g);
  }

  std::optional<Vec> integral_coweight_from_cover(const RatVec& g) const {
    Vec out;
    for (const auto& r : coweight_from_cover(g)) {
      if (r.denominator() != 1) return std::nullopt;
      out.push_back(r.numerator());
    }
    return out;
  }

  /// Cover coordinates of an intrinsic coweight.
  RatVec coweight_to_cover(const Vec& y) const {
    RatMatrix m = to_rational(cover_basis).transpose() * cover_pairing;
    RatVec yr(y.begin(), y.end());
    return inverse(m) * yr;
  }

  /// Dual action of a Weyl matrix on coweights: y -> M^{-T} y.
  static IntMatrix dual_action(const IntMatrix& m) { return unimodular_inverse(m).transpose(); }

  std::optional<std::size_t> root_index(const Vec& r) const {
    for (std::size_t i = 0; i < roots.size(); ++i)
      if (roots[i] == r) return i;
    return std::nullopt;
  }

  const FactorInfo& factor(std::size_t i) const {
    if (i >= structure.factors.size()) throw std::out_of_range("unknown factor index " + std::to_string(i));
    return structure.factors[i];
  }

  std::string name() const {
    std::string s;
    for (std::size_t i = 0; i < structure.factors.size(); ++i) {
      if (i) s += "x";
      s += structure.factors[i].name();
    }
    if (!structure.kernel.empty()) s += "/" + std::to_string(structure.kernel.size()) + "gen";
    return s;
  }
};

namespace detail {

/// Raw cover-coordinate description of one factor.
struct CoverFactor {
  std::size_t cover_rank = 0;
  IntMatrix basis;
  RatMatrix pairing;
  std::vector<Vec> roots;     // cover weights
  std::vector<Vec> coroots;   // cover coweights (integral in every family here)
  std::vector<std::size_t> simple;
  std::vector<std::string> labels;
};

inline Vec unit(std::size_t n, std::size_t i, Int value = 1) {
  Vec v(n, 0);
  v[i] = value;
  return v;
}

/// The SU(n) vector e_i expressed in fundamental-weight coordinates.
inline Vec su_epsilon(int n, int i) {
  const std::size_t r = static_cast<std::size_t>(n - 1);
  Vec v(r, 0);
  if (i < n - 1) v[static_cast<std::size_t>(i)] += 1;
  if (i > 0) v[static_cast<std::size_t>(i - 1)] -= 1;
  return v;
}

inline CoverFactor cover_su(int n) {
  CoverFactor f;
  const std::size_t r = static_cast<std::size_t>(n - 1);
  f.cover_rank = r;
  f.basis = IntMatrix::identity(r);
  f.pairing = RatMatrix::identity(r);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      f.roots.push_back(sub(su_epsilon(n, i), su_epsilon(n, j)));
      Vec h(r, 0);
      for (std::size_t k = 0; k < r; ++k)
        h[k] = (static_cast<std::size_t>(i) <= k ? 1 : 0) - (static_cast<std::size_t>(j) <= k ? 1 : 0);
      f.coroots.push_back(h);
      if (j == i + 1) f.simple.push_back(f.roots.size() - 1);
    }
  for (std::size_t k = 0; k < r; ++k) f.labels.push_back("w" + std::to_string(k + 1));
  return f;
}

inline CoverFactor cover_sp(int m) {
  CoverFactor f;
  const std::size_t r = static_cast<std::size_t>(m);
  f.cover_rank = r;
  f.basis = IntMatrix::identity(r);
  f.pairing = RatMatrix::identity(r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j)
      for (Int si : {1, -1})
        for (Int sj : {1, -1}) {
          Vec v = add(unit(r, i, si), unit(r, j, sj));
          f.roots.push_back(v);
          f.coroots.push_back(v);
          if (j == i + 1 && si == 1 && sj == -1) f.simple.push_back(f.roots.size() - 1);
        }
  for (std::size_t i = 0; i < r; ++i)
    for (Int s : {1, -1}) {
      f.roots.push_back(unit(r, i, 2 * s));
      f.coroots.push_back(unit(r, i, s));
      if (i + 1 == r && s == 1) f.simple.push_back(f.roots.size() - 1);
    }
  for (std::size_t k = 0; k < r; ++k) f.labels.push_back(m == 1 ? "w" : "e" + std::to_string(k + 1));
  return f;
}

/// Spin(n) in doubled epsilon coordinates: cover weight v means v/2 in
/// epsilon coordinates, so the pairing with epsilon coweights is I/2.
inline CoverFactor cover_spin(int n) {
  CoverFactor f;
  const std::size_t l = static_cast<std::size_t>(n / 2);
  const bool type_b = (n % 2) == 1;
  f.cover_rank = l;
  f.basis = IntMatrix(l, l);
  for (std::size_t i = 0; i + 1 < l; ++i) f.basis(i, i) = 2;
  for (std::size_t i = 0; i < l; ++i) f.basis(i, l - 1) = 1;
  f.pairing = RatMatrix(l, l);
  for (std::size_t i = 0; i < l; ++i) f.pairing(i, i) = Rational(1, 2);
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = i + 1; j < l; ++j)
      for (Int si : {1, -1})
        for (Int sj : {1, -1}) {
          Vec h = add(unit(l, i, si), unit(l, j, sj));
          f.roots.push_back(scale(h, 2));
          f.coroots.push_back(h);
          if (j == i + 1 && si == 1 && sj == -1) f.simple.push_back(f.roots.size() - 1);
          if (!type_b && i + 2 == l && j + 1 == l && si == 1 && sj == 1) f.simple.push_back(f.roots.size() - 1);
        }
  if (type_b)
    for (std::size_t i = 0; i < l; ++i)
      for (Int s : {1, -1}) {
        f.roots.push_back(unit(l, i, 2 * s));
        f.coroots.push_back(unit(l, i, 2 * s));
        if (i + 1 == l && s == 1) f.simple.push_back(f.roots.size() - 1);
      }
  for (std::size_t k = 0; k < l; ++k) f.labels.push_back("e" + std::to_string(k + 1));
  return f;
}

inline CoverFactor cover_torus(int r) {
  CoverFactor f;
  const std::size_t n = static_cast<std::size_t>(r);
  f.cover_rank = n;
  f.basis = IntMatrix::identity(n);
  f.pairing = RatMatrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) f.labels.push_back(n == 1 ? "t" : "t" + std::to_string(k + 1));
  return f;
}

inline IntMatrix cover_reflection(const Vec& root, const Vec& coroot, const RatMatrix& pairing) {
  // s(v) = v - <v|h> root, with <v|h> = v^T P h
  const std::size_t n = root.size();
  RatVec ph = pairing * RatVec(coroot.begin(), coroot.end());
  RatMatrix m = RatMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) -= Rational(root[i]) * ph[j];
  return to_integral(m);
}

/// Converts a cover description into a datum over the given cover basis.
inline RootDatum from_cover(const CoverFactor& f, const FactorInfo& info) {
  RootDatum d;
  const std::size_t r = f.cover_rank;
  d.weight_lattice = {r, f.labels};
  d.coweight_lattice = {r, f.labels};
  d.cover_basis = f.basis;
  d.cover_pairing = f.pairing;
  const RatMatrix binv = inverse(to_rational(f.basis));
  const RatMatrix bt_p = to_rational(f.basis).transpose() * f.pairing;
  for (std::size_t i = 0; i < f.roots.size(); ++i) {
    RatVec x = binv * RatVec(f.roots[i].begin(), f.roots[i].end());
    RatVec y = bt_p * RatVec(f.coroots[i].begin(), f.coroots[i].end());
    Vec xi, yi;
    for (const auto& q : x) xi.push_back(to_int(q));
    for (const auto& q : y) yi.push_back(to_int(q));
    d.roots.push_back(xi);
    d.coroots.push_back(yi);
  }
  d.simple_roots = f.simple;
  for (std::size_t s : f.simple) {
    IntMatrix cover = cover_reflection(f.roots[s], f.coroots[s], f.pairing);
    d.weyl_generators.push_back(to_integral(binv * to_rational(cover) * to_rational(f.basis)));
  }
  FactorInfo fi = info;
  fi.cover_offset = 0;
  fi.cover_rank = r;
  fi.root_begin = 0;
  fi.root_end = d.roots.size();
  d.structure.factors.push_back(fi);
  return d;
}

inline IntMatrix block_diag(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
  return m;
}

inline RatMatrix block_diag(const RatMatrix& a, const RatMatrix& b) {
  RatMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
  return m;
}

template <class V>
V concat(const V& a, const V& b) {
  V v = a;
  v.insert(v.end(), b.begin(), b.end());
  return v;
}

template <class V>
V pad(const V& a, std::size_t before, std::size_t after) {
  V v(before, typename V::value_type(0));
  v.insert(v.end(), a.begin(), a.end());
  v.resize(v.size() + after, typename V::value_type(0));
  return v;
}

}  // namespace detail

inline RootDatum product(const RootDatum& a, const RootDatum& b);
inline RootDatum central_quotient(const RootDatum& d, const std::vector<RatVec>& kernel);

inline RootDatum build_torus(int r) {
  if (r < 1) throw std::invalid_argument("torus rank must be positive");
  return detail::from_cover(detail::cover_torus(r), {Family::Torus, r, 0, 0, 0, 0});
}

/// Center generators of Spin(2l) in epsilon coweight coordinates, in the
/// fixed order b+, b-, a.
inline std::vector<RatVec> spin_center_generators(int n) {
  const std::size_t l = static_cast<std::size_t>(n / 2);
  RatVec bp(l, Rational(1, 2)), bm = bp, a(l, Rational(0));
  bm[0] = Rational(-1, 2);
  a[0] = Rational(1);
  if (n % 2 == 1) return {a};
  return {bp, bm, a};
}

inline RootDatum build_simple(Family family, int n) {
  switch (family) {
    case Family::SU:
      if (n < 2) throw std::invalid_argument("SU(n) needs n >= 2");
      return detail::from_cover(detail::cover_su(n), {family, n, 0, 0, 0, 0});
    case Family::Sp:
      if (n < 1) throw std::invalid_argument("Sp(m) needs m >= 1");
      return detail::from_cover(detail::cover_sp(n), {family, n, 0, 0, 0, 0});
    case Family::Spin:
      if (n < 3) throw std::invalid_argument("Spin(n) needs n >= 3");
      return detail::from_cover(detail::cover_spin(n), {family, n, 0, 0, 0, 0});
    case Family::SO: {
      if (n < 3) throw std::invalid_argument("SO(n) needs n >= 3");
      RootDatum spin = detail::from_cover(detail::cover_spin(n), {Family::SO, n, 0, 0, 0, 0});
      const std::size_t l = static_cast<std::size_t>(n / 2);
      RatVec a(l, Rational(0));
      a[0] = Rational(1);
      RootDatum so = central_quotient(spin, {a});
      // the kernel <a> is part of what "SO" means, not a user quotient
      so.structure.kernel.clear();
      so.structure.factors[0].family = Family::SO;
      return so;
    }
    case Family::Torus:
      return build_torus(n);
  }
  throw std::invalid_argument("unknown family");
}

inline RootDatum product(const RootDatum& a, const RootDatum& b) {
  using detail::block_diag;
  RootDatum d;
  const std::size_t ra = a.rank(), rb = b.rank();
  const std::size_t ca = a.cover_rank(), cb = b.cover_rank();
  d.weight_lattice = {ra + rb, detail::concat(a.weight_lattice.basis_labels, b.weight_lattice.basis_labels)};
  d.coweight_lattice = {ra + rb, detail::concat(a.coweight_lattice.basis_labels, b.coweight_lattice.basis_labels)};
  d.cover_basis = block_diag(a.cover_basis, b.cover_basis);
  d.cover_pairing = block_diag(a.cover_pairing, b.cover_pairing);
  for (std::size_t i = 0; i < a.roots.size(); ++i) {
    d.roots.push_back(detail::pad(a.roots[i], 0, rb));
    d.coroots.push_back(detail::pad(a.coroots[i], 0, rb));
  }
  for (std::size_t i = 0; i < b.roots.size(); ++i) {
    d.roots.push_back(detail::pad(b.roots[i], ra, 0));
    d.coroots.push_back(detail::pad(b.coroots[i], ra, 0));
  }
  d.simple_roots = a.simple_roots;
  for (std::size_t s : b.simple_roots) d.simple_roots.push_back(s + a.roots.size());
  for (const auto& g : a.weyl_generators) d.weyl_generators.push_back(block_diag(g, IntMatrix::identity(rb)));
  for (const auto& g : b.weyl_generators) d.weyl_generators.push_back(block_diag(IntMatrix::identity(ra), g));
  d.structure.factors = a.structure.factors;
  for (FactorInfo f : b.structure.factors) {
    f.cover_offset += ca;
    f.root_begin += a.roots.size();
    f.root_end += a.roots.size();
    d.structure.factors.push_back(f);
  }
  for (const auto& k : a.structure.kernel) d.structure.kernel.push_back(detail::pad(k, 0, cb));
  for (const auto& k : b.structure.kernel) d.structure.kernel.push_back(detail::pad(k, ca, 0));
  return d;
}

/// Quotient by the subgroup generated by the given central elements, each a
/// rational coweight in cover coordinates.
inline RootDatum central_quotient(const RootDatum& d, const std::vector<RatVec>& kernel) {
  const std::size_t r = d.rank();
  std::vector<RatVec> f;
  for (const auto& k : kernel) {
    if (k.size() != d.cover_rank()) throw std::invalid_argument("kernel vector has wrong length");
    RatVec y = d.coweight_from_cover(k);
    for (std::size_t i = 0; i < d.roots.size(); ++i) {
      Rational p(0);
      for (std::size_t j = 0; j < r; ++j) p += Rational(d.roots[i][j]) * y[j];
      if (p.denominator() != 1) {
        std::ostringstream os;
        os << "kernel vector " << f.size() << " is not central: it pairs to " << p << " with a root";
        throw std::invalid_argument(os.str());
      }
    }
    f.push_back(y);
  }
  // sublattice {x : f_j . x in Z}: kernel of [G | diag(D)] projected to x
  const std::size_t m = f.size();
  IntMatrix sys(m, r + m);
  for (std::size_t j = 0; j < m; ++j) {
    Int den = 1;
    for (const auto& q : f[j]) den = std::lcm(den, q.denominator());
    for (std::size_t i = 0; i < r; ++i) sys(j, i) = to_int(f[j][i] * Rational(den));
    sys(j, r + j) = den;
  }
  IntMatrix ker = integer_kernel(sys);
  IntMatrix proj(r, ker.cols());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < ker.cols(); ++j) proj(i, j) = ker(i, j);
  IntMatrix k = lattice_basis(proj);
  if (k.cols() != r) throw std::logic_error("central_quotient: sublattice lost rank");
  const RatMatrix kinv = inverse(to_rational(k));
  auto integral = [](const RatVec& v) {
    Vec out;
    for (const auto& x : v) out.push_back(to_int(x));
    return out;
  };
  RootDatum q = d;
  q.cover_basis = d.cover_basis * k;
  for (auto& root : q.roots) root = integral(kinv * RatVec(root.begin(), root.end()));
  for (auto& h : q.coroots) h = k.transpose() * h;
  for (auto& g : q.weyl_generators) g = to_integral(kinv * to_rational(g) * to_rational(k));
  for (std::size_t i = 0; i < r; ++i) {
    q.weight_lattice.basis_labels[i] = "b" + std::to_string(i + 1);
    q.coweight_lattice.basis_labels[i] = "b" + std::to_string(i + 1) + "*";
  }
  for (const auto& kv : kernel) q.structure.kernel.push_back(kv);
  return q;
}

/// Abelian invariants of the fundamental group: torsion divisors > 1 and the
/// free rank.
struct FundamentalGroup {
  std::vector<Int> torsion;
  std::size_t free_rank = 0;
};

inline FundamentalGroup fundamental_group(const RootDatum& d) {
  FundamentalGroup g;
  if (d.coroots.empty()) {
    g.free_rank = d.rank();
    return g;
  }
  IntMatrix c = IntMatrix::from_columns(d.coroots, d.rank());
  const auto inv = smith_invariant_factors(c);
  for (const auto& x : inv)
    if (x > 1) g.torsion.push_back(to_int(x));
  g.free_rank = d.rank() - inv.size();
  return g;
}

}  // namespace coulomb
