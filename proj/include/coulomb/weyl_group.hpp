#pragma once

#include "coulomb/root_datum.hpp"

#include <deque>
#include <map>

namespace coulomb {

/// Thrown when an enumeration exceeds its configured cap.
class ResourceCapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultWeylCap = 1000000;

/// Finite Weyl group acting on intrinsic weight coordinates. Element 0 is
/// the identity.
class WeylGroup {
 public:
  WeylGroup() = default;

  std::size_t size() const { return elements_.size(); }
  const IntMatrix& operator[](std::size_t i) const { return elements_[i]; }
  const std::vector<IntMatrix>& elements() const { return elements_; }
  const std::vector<std::vector<std::size_t>>& generator_words() const { return words_; }
  const std::vector<std::size_t>& generators() const { return generators_; }
  std::size_t identity() const { return 0; }

  std::size_t index_of(const IntMatrix& m) const {
    auto it = index_.find(m);
    if (it == index_.end()) throw std::logic_error("matrix is not an element of the Weyl group");
    return it->second;
  }

  std::size_t mul(std::size_t u, std::size_t v) const {
    if (!table_.empty()) return table_[u * size() + v];
    return index_of(elements_[u] * elements_[v]);
  }

  std::size_t inverse(std::size_t u) const { return inverses_[u]; }

  /// Action of element u on an intrinsic weight.
  Vec act(std::size_t u, const Vec& v) const { return elements_[u] * v; }

  /// Dual action on an intrinsic coweight.
  Vec act_dual(std::size_t u, const Vec& y) const { return elements_[inverses_[u]].transpose() * y; }

  /// The element -1, if it lies in W.
  std::optional<std::size_t> longest_negation() const {
    IntMatrix m = IntMatrix::identity(elements_.empty() ? 0 : elements_[0].rows());
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, i) = -1;
    auto it = index_.find(m);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  friend WeylGroup enumerate_weyl(const RootDatum& d, std::size_t cap);

 private:
  std::vector<IntMatrix> elements_;
  std::vector<std::vector<std::size_t>> words_;
  std::vector<std::size_t> generators_;
  std::map<IntMatrix, std::size_t> index_;
  std::vector<std::size_t> inverses_;
  std::vector<std::size_t> table_;
};

inline WeylGroup enumerate_weyl(const RootDatum& d, std::size_t cap = kDefaultWeylCap) {
  WeylGroup w;
  const std::size_t r = d.rank();
  auto insert = [&](IntMatrix m, std::vector<std::size_t> word) {
    if (w.elements_.size() >= cap)
      throw ResourceCapError("Weyl group enumeration exceeded cap " + std::to_string(cap));
    w.index_.emplace(m, w.elements_.size());
    w.elements_.push_back(std::move(m));
    w.words_.push_back(std::move(word));
  };
  insert(IntMatrix::identity(r), {});
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    const std::size_t cur = queue.front();
    queue.pop_front();
    for (std::size_t g = 0; g < d.weyl_generators.size(); ++g) {
      IntMatrix next = d.weyl_generators[g] * w.elements_[cur];
      if (w.index_.count(next)) continue;
      auto word = w.words_[cur];
      word.insert(word.begin(), g);
      insert(std::move(next), std::move(word));
      queue.push_back(w.elements_.size() - 1);
    }
  }
  for (const auto& g : d.weyl_generators) w.generators_.push_back(w.index_.at(g));
  const std::size_t n = w.size();
  if (n <= 4096) {
    w.table_.resize(n * n);
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v) w.table_[u * n + v] = w.index_.at(w.elements_[u] * w.elements_[v]);
  }
  w.inverses_.resize(n);
  for (std::size_t u = 0; u < n; ++u) {
    // generators are involutions, so the reversed word is the inverse
    IntMatrix inv = IntMatrix::identity(r);
    for (auto it = w.words_[u].rbegin(); it != w.words_[u].rend(); ++it) inv = inv * d.weyl_generators[*it];
    w.inverses_[u] = w.index_.at(inv);
  }
  return w;
}

}  // namespace coulomb
