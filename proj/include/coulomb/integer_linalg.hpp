#pragma once

// Exact integer and rational linear algebra on small dense matrices.
//
// Lattice vectors are int64; elimination runs on arbitrary precision
// integers so column operations cannot overflow.

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace coulomb {

using Int = std::int64_t;
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::rational<Int>;
using Vec = std::vector<Int>;
using RatVec = std::vector<Rational>;

/// Dense row-major matrix.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T(0))
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  /// Builds a matrix whose columns are the given vectors.
  static Matrix from_columns(const std::vector<std::vector<T>>& cols, std::size_t rows) {
    Matrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw std::invalid_argument("column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> column(std::size_t j) const {
    std::vector<T> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T aik = a(i, k);
        if (aik == T(0)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend std::vector<T> operator*(const Matrix& a, const std::vector<T>& v) {
    if (a.cols_ != v.size()) throw std::invalid_argument("matrix-vector shape mismatch");
    std::vector<T> out(a.rows_, T(0));
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) out[i] += a(i, j) * v[j];
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator<(const Matrix& a, const Matrix& b) {
    return std::tie(a.rows_, a.cols_, a.data_) < std::tie(b.rows_, b.cols_, b.data_);
  }

  const std::vector<T>& data() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rational>;
using BigMatrix = Matrix<BigInt>;

inline Int dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Vec add(Vec a, const Vec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}
inline Vec sub(Vec a, const Vec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}
inline Vec neg(Vec a) {
  for (auto& x : a) x = -x;
  return a;
}
inline Vec scale(Vec a, Int k) {
  for (auto& x : a) x *= k;
  return a;
}
inline bool is_zero(const Vec& a) {
  return std::all_of(a.begin(), a.end(), [](Int x) { return x == 0; });
}
inline Vec mod2(Vec a) {
  for (auto& x : a) x = ((x % 2) + 2) % 2;
  return a;
}

inline Int to_int(const BigInt& b) {
  if (b > BigInt(INT64_MAX) || b < BigInt(INT64_MIN)) throw std::overflow_error("integer overflow");
  return static_cast<Int>(b);
}

inline Int to_int(const Rational& r) {
  if (r.denominator() != 1) throw std::domain_error("rational value is not integral");
  return r.numerator();
}

inline BigMatrix to_big(const IntMatrix& m) {
  BigMatrix b(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) b(i, j) = m(i, j);
  return b;
}

inline IntMatrix to_int(const BigMatrix& m) {
  IntMatrix b(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) b(i, j) = to_int(m(i, j));
  return b;
}

inline RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

inline IntMatrix to_integral(const RatMatrix& m) {
  IntMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = to_int(m(i, j));
  return r;
}

/// Inverse of a square rational matrix; throws if singular.
inline RatMatrix inverse(const RatMatrix& a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw std::invalid_argument("inverse: matrix not square");
  RatMatrix m = a;
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == Rational(0)) ++p;
    if (p == n) throw std::domain_error("inverse: singular matrix");
    for (std::size_t j = 0; j < n; ++j) {
      std::swap(m(c, j), m(p, j));
      std::swap(inv(c, j), inv(p, j));
    }
    const Rational piv = m(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      m(c, j) /= piv;
      inv(c, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || m(i, c) == Rational(0)) continue;
      const Rational f = m(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) -= f * m(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

/// Inverse of a unimodular integer matrix.
inline IntMatrix unimodular_inverse(const IntMatrix& a) { return to_integral(inverse(to_rational(a))); }

/// Column echelon form H = A * U with U unimodular. Pivot k sits in row
/// pivot_rows[k] and column k; columns past the pivot count are zero.
struct ColumnEchelon {
  BigMatrix h;
  BigMatrix u;
  std::vector<std::size_t> pivot_rows;
};

namespace detail {

inline void column_combine(BigMatrix& m, std::size_t c1, std::size_t c2, const BigInt& a, const BigInt& b,
                           const BigInt& c, const BigInt& d) {
  // (col1, col2) <- (a*col1 + b*col2, c*col1 + d*col2)
  for (std::size_t i = 0; i < m.rows(); ++i) {
    BigInt x = m(i, c1), y = m(i, c2);
    m(i, c1) = a * x + b * y;
    m(i, c2) = c * x + d * y;
  }
}

inline BigInt ext_gcd(const BigInt& a, const BigInt& b, BigInt& s, BigInt& t) {
  BigInt old_r = a, r = b, old_s = 1, ss = 0, old_t = 0, tt = 1;
  while (r != 0) {
    BigInt q = old_r / r;
    BigInt tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * ss;
    old_s = ss;
    ss = tmp;
    tmp = old_t - q * tt;
    old_t = tt;
    tt = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  s = old_s;
  t = old_t;
  return old_r;
}

}  // namespace detail

inline ColumnEchelon column_echelon(const BigMatrix& a) {
  ColumnEchelon e{a, BigMatrix::identity(a.cols()), {}};
  std::size_t c = 0;
  for (std::size_t i = 0; i < a.rows() && c < a.cols(); ++i) {
    for (std::size_t j = c + 1; j < a.cols(); ++j) {
      if (e.h(i, j) == 0) continue;
      if (e.h(i, c) == 0) {
        detail::column_combine(e.h, c, j, 0, 1, 1, 0);
        detail::column_combine(e.u, c, j, 0, 1, 1, 0);
        continue;
      }
      BigInt s, t;
      const BigInt x = e.h(i, c), y = e.h(i, j);
      const BigInt g = detail::ext_gcd(x, y, s, t);
      const BigInt xg = x / g, yg = y / g;
      // [s -yg; t xg] has determinant s*xg + t*yg = 1.
      detail::column_combine(e.h, c, j, s, t, -yg, xg);
      detail::column_combine(e.u, c, j, s, t, -yg, xg);
    }
    if (e.h(i, c) != 0) {
      if (e.h(i, c) < 0) {
        for (std::size_t r = 0; r < e.h.rows(); ++r) e.h(r, c) = -e.h(r, c);
        for (std::size_t r = 0; r < e.u.rows(); ++r) e.u(r, c) = -e.u(r, c);
      }
      e.pivot_rows.push_back(i);
      ++c;
    }
  }
  return e;
}

/// Integer solution of A x = b, if one exists.
inline std::optional<std::vector<BigInt>> solve_integer(const BigMatrix& a, const std::vector<BigInt>& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve_integer: shape mismatch");
  const ColumnEchelon e = column_echelon(a);
  std::vector<BigInt> residual = b;
  std::vector<BigInt> y(a.cols(), 0);
  std::size_t k = 0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (k < e.pivot_rows.size() && e.pivot_rows[k] == i) {
      const BigInt& p = e.h(i, k);
      if (residual[i] % p != 0) return std::nullopt;
      y[k] = residual[i] / p;
      if (y[k] != 0)
        for (std::size_t r = i; r < a.rows(); ++r) residual[r] -= y[k] * e.h(r, k);
      ++k;
    } else if (residual[i] != 0) {
      return std::nullopt;
    }
  }
  std::vector<BigInt> x(a.cols(), 0);
  for (std::size_t i = 0; i < a.cols(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) x[i] += e.u(i, j) * y[j];
  return x;
}

/// Basis (as columns) of the integer kernel of A.
inline IntMatrix integer_kernel(const IntMatrix& a) {
  const ColumnEchelon e = column_echelon(to_big(a));
  const std::size_t rank = e.pivot_rows.size();
  IntMatrix k(a.cols(), a.cols() - rank);
  for (std::size_t j = rank; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.cols(); ++i) k(i, j - rank) = to_int(e.u(i, j));
  return k;
}

/// Basis (as columns) of the lattice generated by the columns of G.
inline IntMatrix lattice_basis(const IntMatrix& generators) {
  const ColumnEchelon e = column_echelon(to_big(generators));
  const std::size_t rank = e.pivot_rows.size();
  IntMatrix b(generators.rows(), rank);
  for (std::size_t j = 0; j < rank; ++j)
    for (std::size_t i = 0; i < generators.rows(); ++i) b(i, j) = to_int(e.h(i, j));
  return b;
}

/// True iff v is an integer combination of the columns of G.
inline bool lattice_contains(const IntMatrix& generators, const Vec& v) {
  std::vector<BigInt> b(v.begin(), v.end());
  return solve_integer(to_big(generators), b).has_value();
}

/// Diagonal of the Smith normal form (nonzero invariant factors, ascending
/// divisibility). The rank is the number of entries returned.
inline std::vector<BigInt> smith_invariant_factors(const IntMatrix& input) {
  BigMatrix m = to_big(input);
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<BigInt> diag;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    // smallest nonzero entry in the trailing block
    bool found = false;
    std::size_t pi = t, pj = t;
    BigInt best = 0;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (m(i, j) != 0 && (!found || abs(m(i, j)) < best)) {
          best = abs(m(i, j));
          pi = i;
          pj = j;
          found = true;
        }
    if (!found) break;
    for (;;) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(t, j), m(pi, j));
      for (std::size_t i = 0; i < rows; ++i) std::swap(m(i, t), m(i, pj));
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        const BigInt q = m(i, t) / m(t, t);
        if (q != 0)
          for (std::size_t j = t; j < cols; ++j) m(i, j) -= q * m(t, j);
        if (m(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        const BigInt q = m(t, j) / m(t, t);
        if (q != 0)
          for (std::size_t i = t; i < rows; ++i) m(i, j) -= q * m(i, t);
        if (m(t, j) != 0) clean = false;
      }
      if (clean) {
        // divisibility: fold any non-multiple entry into row t
        bool divides = true;
        for (std::size_t i = t + 1; i < rows && divides; ++i)
          for (std::size_t j = t + 1; j < cols; ++j)
            if (m(i, j) % m(t, t) != 0) {
              for (std::size_t c = t; c < cols; ++c) m(t, c) += m(i, c);
              divides = false;
              break;
            }
        if (divides) break;
      }
      // re-pick smallest nonzero in row t / column t
      best = abs(m(t, t));
      pi = t;
      pj = t;
      for (std::size_t i = t; i < rows; ++i)
        if (m(i, t) != 0 && abs(m(i, t)) < best) {
          best = abs(m(i, t));
          pi = i;
          pj = t;
        }
      for (std::size_t j = t; j < cols; ++j)
        if (m(t, j) != 0 && abs(m(t, j)) < best) {
          best = abs(m(t, j));
          pi = t;
          pj = j;
        }
    }
    diag.push_back(abs(m(t, t)));
  }
  return diag;
}

}  // namespace coulomb
