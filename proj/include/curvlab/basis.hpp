#pragma once

// Lexicographic bases of Λ^p R^n.
//
// Λ²: the pair (i,j), i<j, has rank i*(2n-i-1)/2 + (j-i-1).
// Λ^p: strictly increasing index tuples, enumerated in lexicographic order.

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "curvlab/errors.hpp"

namespace curvlab {

inline constexpr long long binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Dimension of Λ²R^n.
inline constexpr int bivector_count(int n) { return n * (n - 1) / 2; }

inline int biv_index(int n, int i, int j) {
  if (!(0 <= i && i < j && j < n))
    throw DomainError("biv_index: need 0 <= i < j < n, got i=" + std::to_string(i) +
                      " j=" + std::to_string(j) + " n=" + std::to_string(n));
  return i * (2 * n - i - 1) / 2 + (j - i - 1);
}

inline std::pair<int, int> biv_pair(int n, int k) {
  if (n < 2 || k < 0 || k >= bivector_count(n))
    throw DomainError("biv_pair: index " + std::to_string(k) + " out of range for n=" +
                      std::to_string(n));
  int i = 0;
  int row = n - 1;  // pairs starting with i
  while (k >= row) {
    k -= row;
    ++i;
    --row;
  }
  return {i, i + 1 + k};
}

/// Strictly increasing multi-index of length p.
using MultiIndex = std::vector<int>;

/// Ordered basis {e_I : I increasing, |I| = p} of Λ^p R^n.
class MultiIndexBasis {
 public:
  MultiIndexBasis(int n, int p) : n_(n), p_(p) {
    if (n < 0 || p < 0 || p > n)
      throw DomainError("MultiIndexBasis: need 0 <= p <= n, got p=" + std::to_string(p) +
                        " n=" + std::to_string(n));
    MultiIndex cur(static_cast<std::size_t>(p));
    for (int i = 0; i < p; ++i) cur[static_cast<std::size_t>(i)] = i;
    while (true) {
      elems_.push_back(cur);
      int pos = p - 1;
      while (pos >= 0 && cur[static_cast<std::size_t>(pos)] == n - p + pos) --pos;
      if (pos < 0) break;
      ++cur[static_cast<std::size_t>(pos)];
      for (int q = pos + 1; q < p; ++q)
        cur[static_cast<std::size_t>(q)] = cur[static_cast<std::size_t>(q - 1)] + 1;
    }
  }

  int n() const noexcept { return n_; }
  int p() const noexcept { return p_; }
  std::size_t size() const noexcept { return elems_.size(); }
  const MultiIndex& operator[](std::size_t k) const { return elems_[k]; }
  auto begin() const { return elems_.begin(); }
  auto end() const { return elems_.end(); }

  /// Rank of an increasing multi-index, or throws if it is not a basis element.
  std::size_t rank(const MultiIndex& idx) const {
    auto it = std::lower_bound(elems_.begin(), elems_.end(), idx);
    if (it == elems_.end() || *it != idx) throw DomainError("MultiIndexBasis: not a basis element");
    return static_cast<std::size_t>(it - elems_.begin());
  }

 private:
  int n_;
  int p_;
  std::vector<MultiIndex> elems_;
};

}  // namespace curvlab
