#pragma once

// Linear algebra over F2 on packed 64-bit rows.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace coulomb {

class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

  std::size_t size() const { return n_; }
  bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i, bool v = true) {
    const std::uint64_t bit = std::uint64_t{1} << (i & 63);
    if (v)
      words_[i >> 6] |= bit;
    else
      words_[i >> 6] &= ~bit;
  }
  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  BitVec& operator^=(const BitVec& o) {
    if (o.n_ != n_) throw std::invalid_argument("BitVec size mismatch");
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] ^= o.words_[k];
    return *this;
  }
  friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }

  bool any() const {
    for (auto w : words_)
      if (w) return true;
    return false;
  }

  /// Lowest set bit at or after `from`, or size() if none.
  std::size_t next_set(std::size_t from) const {
    for (std::size_t k = from >> 6; k < words_.size(); ++k) {
      std::uint64_t w = words_[k];
      if (k == (from >> 6)) w &= ~std::uint64_t{0} << (from & 63);
      if (w) {
        const std::size_t i = (k << 6) + static_cast<std::size_t>(__builtin_ctzll(w));
        return i < n_ ? i : n_;
      }
    }
    return n_;
  }

  friend bool operator==(const BitVec& a, const BitVec& b) { return a.n_ == b.n_ && a.words_ == b.words_; }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Affine solution set {particular + span(kernel)}.
struct F2Solution {
  std::optional<BitVec> particular;
  std::vector<BitVec> kernel;
  std::size_t rank = 0;
};

/// Accumulates equations a . x = b over F2.
class F2System {
 public:
  explicit F2System(std::size_t unknowns) : unknowns_(unknowns) {}

  std::size_t unknowns() const { return unknowns_; }
  std::size_t equations() const { return rows_.size(); }

  void add(BitVec row, bool rhs) {
    if (row.size() != unknowns_) throw std::invalid_argument("equation has wrong width");
    if (!row.any() && !rhs) return;
    rows_.push_back(std::move(row));
    rhs_.push_back(rhs);
  }

  /// Gauss-Jordan elimination, pivots taken in increasing column order.
  F2Solution solve() const {
    std::vector<BitVec> rows = rows_;
    std::vector<bool> rhs = rhs_;
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < unknowns_ && r < rows.size(); ++c) {
      std::size_t p = r;
      while (p < rows.size() && !rows[p].get(c)) ++p;
      if (p == rows.size()) continue;
      std::swap(rows[p], rows[r]);
      std::swap(rhs[p], rhs[r]);
      for (std::size_t i = 0; i < rows.size(); ++i)
        if (i != r && rows[i].get(c)) {
          rows[i] ^= rows[r];
          rhs[i] = rhs[i] != rhs[r];
        }
      pivot_col.push_back(c);
      ++r;
    }
    F2Solution s;
    s.rank = r;
    for (std::size_t i = r; i < rows.size(); ++i)
      if (rhs[i]) return s;
    BitVec x(unknowns_);
    for (std::size_t i = 0; i < r; ++i)
      if (rhs[i]) x.set(pivot_col[i]);
    s.particular = x;
    std::vector<bool> is_pivot(unknowns_, false);
    for (auto c : pivot_col) is_pivot[c] = true;
    for (std::size_t f = 0; f < unknowns_; ++f) {
      if (is_pivot[f]) continue;
      BitVec k(unknowns_);
      k.set(f);
      for (std::size_t i = 0; i < r; ++i)
        if (rows[i].get(f)) k.set(pivot_col[i]);
      s.kernel.push_back(std::move(k));
    }
    return s;
  }

 private:
  std::size_t unknowns_;
  std::vector<BitVec> rows_;
  std::vector<bool> rhs_;
};

}  // namespace coulomb
