#pragma once

// Basic algebra of curvature operators on Λ²R^n.

#include <cmath>
#include <string>

#include "curvlab/tensors.hpp"

namespace curvlab {

/// Strictness cutoff used by every positivity predicate unless overridden.
inline double default_tolerance(double norm) { return 1e-9 * (1.0 + norm); }

/// Kulkarni–Nomizu product h∧k, with
/// (h∧k)_ijkl = h_ik k_jl + h_jl k_ik − h_il k_jk − h_jk k_il.
/// g∧g is therefore 2·Id on Λ².
inline CurvatureOperator kulkarni_nomizu(const SymmetricTwoTensor& h, const SymmetricTwoTensor& k) {
  const int n = h.dim();
  if (k.dim() != n)
    throw DomainError("kulkarni_nomizu: dimension mismatch (" + std::to_string(n) + " vs " +
                      std::to_string(k.dim()) + ")");
  const int N = bivector_count(n);
  Matrix m(N, N);
  for (int a = 0; a < N; ++a) {
    const auto [i, j] = biv_pair(n, a);
    for (int b = 0; b < N; ++b) {
      const auto [p, q] = biv_pair(n, b);
      m(a, b) = h(i, p) * k(j, q) + h(j, q) * k(i, p) - h(i, q) * k(j, p) - h(j, p) * k(i, q);
    }
  }
  return {n, m};
}

namespace detail {

/// Cyclic sum b_ijkl = R_ijkl + R_iklj + R_iljk, stored densely as n^4 values.
inline std::vector<double> bianchi_cyclic_sum(const CurvatureOperator& r) {
  const int n = r.dim();
  std::vector<double> b(static_cast<std::size_t>(n) * n * n * n);
  std::size_t idx = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) b[idx++] = r(i, j, k, l) + r(i, k, l, j) + r(i, l, j, k);
  return b;
}

}  // namespace detail

/// Frobenius norm of the cyclic-sum tensor; zero iff r satisfies the first
/// Bianchi identity.
inline double bianchi_defect(const CurvatureOperator& r) {
  double s = 0.0;
  for (double v : detail::bianchi_cyclic_sum(r)) s += v * v;
  return std::sqrt(s);
}

/// Orthogonal projection of a symmetric Λ² operator onto the algebraic
/// curvature operators. For pair-symmetric tensors the cyclic sum b is
/// totally antisymmetric and b(b) = 3b, so S − b(S)/3 is the projection.
inline CurvatureOperator bianchi_project(const CurvatureOperator& s) {
  const int n = s.dim();
  const auto b = detail::bianchi_cyclic_sum(s);
  const auto at = [&](int i, int j, int k, int l) {
    return b[((static_cast<std::size_t>(i) * n + j) * n + k) * n + l];
  };
  Matrix m = s.matrix();
  const int N = bivector_count(n);
  for (int a = 0; a < N; ++a) {
    const auto [i, j] = biv_pair(n, a);
    for (int c = 0; c < N; ++c) {
      const auto [k, l] = biv_pair(n, c);
      m(a, c) -= at(i, j, k, l) / 3.0;
    }
  }
  return {n, m};
}

inline SymmetricTwoTensor ricci(const CurvatureOperator& r) {
  const int n = r.dim();
  Matrix ric = Matrix::Zero(n, n);
  for (int j = 0; j < n; ++j)
    for (int l = j; l < n; ++l) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += r(i, j, i, l);
      ric(j, l) = s;
      ric(l, j) = s;
    }
  return SymmetricTwoTensor(ric);
}

/// Scalar curvature, 2·trace on Λ².
inline double scalar(const CurvatureOperator& r) { return 2.0 * r.trace(); }

/// Coordinates of u∧v in the bivector basis.
inline Vector wedge(const Vector& u, const Vector& v) {
  const int n = static_cast<int>(u.size());
  if (v.size() != u.size()) throw DomainError("wedge: dimension mismatch");
  Vector w(bivector_count(n));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) w(biv_index(n, i, j)) = u(i) * v(j) - u(j) * v(i);
  return w;
}

/// Sectional curvature of span(u, v) for an orthonormal pair.
inline double sectional(const CurvatureOperator& r, const Vector& u, const Vector& v) {
  if (u.size() != r.dim() || v.size() != r.dim()) throw DomainError("sectional: dimension mismatch");
  const Vector w = wedge(u, v);
  const double area = w.norm();
  if (area < 1e-9) throw DegeneratePlaneError("sectional: u and v span no plane");
  if (std::abs(u.norm() - 1.0) > 1e-9 || std::abs(v.norm() - 1.0) > 1e-9 ||
      std::abs(u.dot(v)) > 1e-9)
    throw DomainError("sectional: u, v must be orthonormal");
  return w.dot(r.matrix() * w) / (area * area);
}

inline Spectrum spectrum(const CurvatureOperator& r) { return symmetric_spectrum(r.matrix()); }

namespace detail {

inline double smallest_sum(const Spectrum& s, int k) {
  double sum = 0.0;
  for (int i = 0; i < k; ++i) sum += s.eigenvalues[static_cast<std::size_t>(i)];
  return sum;
}

inline void check_k(int k, int N) {
  if (k < 1 || k > N)
    throw DomainError("k-positivity: k=" + std::to_string(k) + " outside [1, " +
                      std::to_string(N) + "]");
}

}  // namespace detail

/// Sum of the k smallest eigenvalues is > tol. A negative tol selects the
/// default 1e-9·(1+‖R‖).
inline bool k_positive(const CurvatureOperator& r, int k, double tol = -1.0) {
  detail::check_k(k, r.bivector_dim());
  if (tol < 0) tol = default_tolerance(r.norm());
  return detail::smallest_sum(spectrum(r), k) > tol;
}

/// Sum of the k smallest eigenvalues is >= -tol.
inline bool k_nonneg(const CurvatureOperator& r, int k, double tol = -1.0) {
  detail::check_k(k, r.bivector_dim());
  if (tol < 0) tol = default_tolerance(r.norm());
  return detail::smallest_sum(spectrum(r), k) >= -tol;
}

/// Positive definite in the tolerance sense: min eigenvalue > tol.
inline bool positive_definite(const Matrix& m, double tol = -1.0) {
  if (tol < 0) tol = default_tolerance(m.norm());
  return symmetric_spectrum(m).min() > tol;
}

struct SigmaInvariants {
  double sigma1 = 0.0;
  double sigma2 = 0.0;
  double norm_sq = 0.0;
  bool gamma2 = false;
};

inline SigmaInvariants sigma_invariants(const CurvatureOperator& r) {
  SigmaInvariants out;
  const Spectrum s = spectrum(r);
  for (double v : s.eigenvalues) {
    out.sigma1 += v;
    out.norm_sq += v * v;
  }
  for (std::size_t i = 0; i < s.eigenvalues.size(); ++i)
    for (std::size_t j = i + 1; j < s.eigenvalues.size(); ++j)
      out.sigma2 += s.eigenvalues[i] * s.eigenvalues[j];
  out.gamma2 = out.sigma1 > 0.0 && out.sigma2 > 0.0;
  return out;
}

/// First Newton transformation (Scal/2)·Id − R.
inline CurvatureOperator newton_t1(const CurvatureOperator& r) {
  return 0.5 * scalar(r) * CurvatureOperator::identity(r.dim()) - r;
}

}  // namespace curvlab
