#pragma once

// Double forms of bidegree (q,q), q <= 2, lifted to operators on Λ^p by
// powers of the metric, and the Weitzenböck curvature term on p-forms.

#include <algorithm>
#include <iterator>
#include <limits>
#include <string>

#include "curvlab/invariants.hpp"

namespace curvlab {

inline constexpr int kMaxLiftDim = 8;
inline constexpr int kMaxLiftDegree = 4;

/// Symmetric operator on Λ^p R^n in the lexicographic multi-index basis.
class PFormOperator {
 public:
  PFormOperator(int n, int p, const Matrix& m)
      : n_(n), p_(p), m_(detail::symmetrized(m, "PFormOperator")) {
    if (m.rows() != binomial(n, p)) throw DomainError("PFormOperator: matrix size is not C(n,p)");
  }

  int dim() const noexcept { return n_; }
  int degree() const noexcept { return p_; }
  const Matrix& matrix() const noexcept { return m_; }
  Spectrum spectrum() const { return symmetric_spectrum(m_); }

  PFormOperator operator-(const PFormOperator& o) const { return {n_, p_, m_ - o.m_}; }
  PFormOperator operator+(const PFormOperator& o) const { return {n_, p_, m_ + o.m_}; }
  friend PFormOperator operator*(double c, const PFormOperator& w) { return {w.n_, w.p_, c * w.m_}; }

 private:
  int n_;
  int p_;
  Matrix m_;
};

/// A (q,q) double form with q in {0, 1, 2}: a scalar, a symmetric 2-tensor
/// or a curvature operator, stored as a matrix over the Λ^q basis.
class DoubleForm {
 public:
  DoubleForm(int n, double scalar) : n_(n), q_(0), m_(Matrix::Constant(1, 1, scalar)) {}
  DoubleForm(const SymmetricTwoTensor& h) : n_(h.dim()), q_(1), m_(h.matrix()) {}  // NOLINT
  DoubleForm(const CurvatureOperator& r) : n_(r.dim()), q_(2), m_(r.matrix()) {}   // NOLINT

  int dim() const noexcept { return n_; }
  int degree() const noexcept { return q_; }
  const Matrix& matrix() const noexcept { return m_; }

 private:
  int n_;
  int q_;
  Matrix m_;
};

namespace detail {

/// Sign of the permutation taking I to (K, I\K); K ⊂ I, both increasing.
inline int move_to_front_sign(const MultiIndex& index, const MultiIndex& front) {
  int inversions = 0;
  for (int a : front)
    for (int b : index)
      if (b < a && !std::binary_search(front.begin(), front.end(), b)) ++inversions;
  return (inversions % 2 == 0) ? 1 : -1;
}

inline MultiIndex without(const MultiIndex& index, const MultiIndex& removed) {
  MultiIndex out;
  std::set_difference(index.begin(), index.end(), removed.begin(), removed.end(),
                      std::back_inserter(out));
  return out;
}

}  // namespace detail

/// Operator on Λ^{q+k} of the double form (g^k/k!)·ω.
///
/// Entry (I, J) sums, over every k-element K ⊂ I ∩ J (the Kronecker-delta
/// matchings of k indices of I with k indices of J), the signed value
/// ε(I;K)·ε(J;K)·ω(I\K, J\K). With this normalisation lift(1, p) = Id.
inline PFormOperator lift(const DoubleForm& omega, int k) {
  const int n = omega.dim();
  const int q = omega.degree();
  const int p = q + k;
  if (k < 0) throw DomainError("lift: k must be >= 0");
  if (p > n)
    throw DomainError("lift: degree " + std::to_string(p) + " exceeds dimension " + std::to_string(n));
  if (n > kMaxLiftDim || p > kMaxLiftDegree)
    throw SizeError("lift: brute-force contraction limited to n <= 8, p <= 4 (got n=" +
                    std::to_string(n) + ", p=" + std::to_string(p) + ")");
  const MultiIndexBasis bp(n, p);
  const MultiIndexBasis bq(n, q);
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(bp.size()), static_cast<Eigen::Index>(bp.size()));
  for (std::size_t a = 0; a < bp.size(); ++a) {
    const MultiIndex& idx_i = bp[a];
    for (std::size_t b = a; b < bp.size(); ++b) {
      const MultiIndex& idx_j = bp[b];
      MultiIndex common;
      std::set_intersection(idx_i.begin(), idx_i.end(), idx_j.begin(), idx_j.end(),
                            std::back_inserter(common));
      if (static_cast<int>(common.size()) < k) continue;
      double v = 0.0;
      for (const MultiIndex& pos : MultiIndexBasis(static_cast<int>(common.size()), k)) {
        MultiIndex kk;
        for (int x : pos) kk.push_back(common[static_cast<std::size_t>(x)]);
        const int sign = detail::move_to_front_sign(idx_i, kk) * detail::move_to_front_sign(idx_j, kk);
        v += sign * omega.matrix()(static_cast<Eigen::Index>(bq.rank(detail::without(idx_i, kk))),
                                   static_cast<Eigen::Index>(bq.rank(detail::without(idx_j, kk))));
      }
      m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = v;
      m(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)) = v;
    }
  }
  return {n, p, m};
}

/// W_p = g^{p−1}/(p−1)!·Ric − 2·g^{p−2}/(p−2)!·R.
inline PFormOperator weitzenbock(const CurvatureOperator& r, int p) {
  const int n = r.dim();
  if (p < 1 || p > n - 1)
    throw DomainError("weitzenbock: p=" + std::to_string(p) + " outside [1, " + std::to_string(n - 1) + "]");
  PFormOperator w = lift(DoubleForm(ricci(r)), p - 1);
  if (p >= 2) w = w - 2.0 * lift(DoubleForm(r), p - 2);
  return w;
}

/// Norm of t·W_p − [g^{p−2}/(p−2)!·Riem_t + g^{p−1}/(p−1)!·(t·Ric − (p−1)Scal/2·g)].
inline double weitzenbock_identity_residual(const CurvatureOperator& r, double t, int p) {
  const int n = r.dim();
  if (!(t > 0)) throw DomainError("weitzenbock_identity_residual: need t > 0");
  if (p < 2 || p > n - 1) throw DomainError("weitzenbock_identity_residual: need 2 <= p <= n-1");
  const double scal = scalar(r);
  const SymmetricTwoTensor h = t * ricci(r) - (0.5 * (p - 1) * scal) * SymmetricTwoTensor::metric(n);
  const PFormOperator rhs = lift(DoubleForm(riem_t(r, t)), p - 2) + lift(DoubleForm(h), p - 1);
  return (t * weitzenbock(r, p) - rhs).matrix().norm();
}

struct VanishingWitness {
  double t_threshold = 0.0;       // N − p(n−p)/2
  double riem = 0.0;              // riem_pointwise(R)
  double wp_min_eigenvalue = 0.0; // min over p <= k <= n−p of λ_min(W_k)
  bool hypothesis = false;        // riem > t_threshold

  /// The vanishing implication: hypothesis ⇒ every W_k is positive definite.
  bool holds(double tol = 0.0) const { return !hypothesis || wp_min_eigenvalue > tol; }
};

inline VanishingWitness vanishing_witness(const CurvatureOperator& r, int p) {
  const int n = r.dim();
  if (p < 2 || p > n - 2) throw DomainError("vanishing_witness: need 2 <= p <= n-2");
  if (!(scalar(r) > 0)) throw DomainError("vanishing_witness: need positive scalar curvature");
  VanishingWitness w;
  w.t_threshold = bivector_count(n) - 0.5 * p * (n - p);
  w.riem = riem_pointwise(r);
  w.hypothesis = w.riem > w.t_threshold;
  w.wp_min_eigenvalue = std::numeric_limits<double>::infinity();
  for (int k = p; k <= n - p; ++k)
    w.wp_min_eigenvalue = std::min(w.wp_min_eigenvalue, weitzenbock(r, k).spectrum().min());
  return w;
}

}  // namespace curvlab
