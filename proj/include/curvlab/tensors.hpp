#pragma once

// Value types for frame components. Everything lives in a fixed orthonormal
// frame of R^n, so the metric is the identity matrix.

#include <Eigen/Dense>
#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "curvlab/basis.hpp"
#include "curvlab/errors.hpp"

namespace curvlab {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

namespace detail {

inline Matrix symmetrized(const Matrix& m, const char* what) {
  if (m.rows() != m.cols()) throw DomainError(std::string(what) + ": matrix is not square");
  Matrix s(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    s(i, i) = m(i, i);
    for (Eigen::Index j = i + 1; j < m.cols(); ++j) {
      const double v = 0.5 * (m(i, j) + m(j, i));
      s(i, j) = v;
      s(j, i) = v;
    }
  }
  return s;
}

}  // namespace detail

/// Symmetric bilinear form h_ij on R^n.
class SymmetricTwoTensor {
 public:
  SymmetricTwoTensor() = default;
  explicit SymmetricTwoTensor(const Matrix& entries)
      : entries_(detail::symmetrized(entries, "SymmetricTwoTensor")) {}

  static SymmetricTwoTensor metric(int n) { return SymmetricTwoTensor(Matrix::Identity(n, n)); }
  static SymmetricTwoTensor diagonal(const Vector& d) {
    return SymmetricTwoTensor(Matrix(d.asDiagonal()));
  }

  int dim() const noexcept { return static_cast<int>(entries_.rows()); }
  double operator()(int i, int j) const { return entries_(i, j); }
  const Matrix& matrix() const noexcept { return entries_; }
  double trace() const { return entries_.trace(); }

  SymmetricTwoTensor operator+(const SymmetricTwoTensor& o) const {
    return SymmetricTwoTensor(entries_ + o.entries_);
  }
  SymmetricTwoTensor operator-(const SymmetricTwoTensor& o) const {
    return SymmetricTwoTensor(entries_ - o.entries_);
  }
  friend SymmetricTwoTensor operator*(double c, const SymmetricTwoTensor& h) {
    return SymmetricTwoTensor(c * h.entries_);
  }

 private:
  Matrix entries_;
};

/// Symmetric operator on Λ²R^n in the lexicographic bivector basis.
///
/// Convention: <R(e_i∧e_j), e_i∧e_j> is the sectional curvature of
/// span(e_i, e_j), so a space form of curvature κ is κ·Id and Scal = 2·trace.
/// An algebraic curvature operator is one with bianchi_defect() == 0; the
/// type itself only enforces symmetry.
class CurvatureOperator {
 public:
  CurvatureOperator() = default;
  CurvatureOperator(int n, const Matrix& m) : n_(n), m_(detail::symmetrized(m, "CurvatureOperator")) {
    if (n < 1) throw DomainError("CurvatureOperator: dimension must be >= 1");
    if (m.rows() != bivector_count(n))
      throw DomainError("CurvatureOperator: expected a " + std::to_string(bivector_count(n)) +
                        "x" + std::to_string(bivector_count(n)) + " matrix for n=" +
                        std::to_string(n));
  }

  static CurvatureOperator zero(int n) {
    return CurvatureOperator(n, Matrix::Zero(bivector_count(n), bivector_count(n)));
  }
  static CurvatureOperator identity(int n) {
    return CurvatureOperator(n, Matrix::Identity(bivector_count(n), bivector_count(n)));
  }

  int dim() const noexcept { return n_; }
  int bivector_dim() const noexcept { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const noexcept { return m_; }
  double trace() const { return m_.trace(); }
  double norm() const { return m_.norm(); }

  /// Component R_ijkl of the associated (4,0) tensor.
  double operator()(int i, int j, int k, int l) const {
    if (i == j || k == l) return 0.0;
    double sign = 1.0;
    if (i > j) {
      std::swap(i, j);
      sign = -sign;
    }
    if (k > l) {
      std::swap(k, l);
      sign = -sign;
    }
    return sign * m_(biv_index(n_, i, j), biv_index(n_, k, l));
  }

  CurvatureOperator operator+(const CurvatureOperator& o) const {
    check_same(o);
    return {n_, m_ + o.m_};
  }
  CurvatureOperator operator-(const CurvatureOperator& o) const {
    check_same(o);
    return {n_, m_ - o.m_};
  }
  friend CurvatureOperator operator*(double c, const CurvatureOperator& r) {
    return {r.n_, c * r.m_};
  }

 private:
  void check_same(const CurvatureOperator& o) const {
    if (o.n_ != n_) throw DomainError("CurvatureOperator: dimension mismatch");
  }

  int n_ = 0;
  Matrix m_;
};

/// Eigenvalues in nondecreasing order.
struct Spectrum {
  std::vector<double> eigenvalues;

  double min() const { return eigenvalues.empty() ? 0.0 : eigenvalues.front(); }
  double max() const { return eigenvalues.empty() ? 0.0 : eigenvalues.back(); }
  double sum() const {
    double s = 0.0;
    for (double v : eigenvalues) s += v;
    return s;
  }
};

/// Spectrum of a symmetric matrix via the self-adjoint QR solver.
inline Spectrum symmetric_spectrum(const Matrix& m) {
  Spectrum s;
  if (m.rows() == 0) return s;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
  const Vector& ev = solver.eigenvalues();
  s.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  std::sort(s.eigenvalues.begin(), s.eigenvalues.end());
  return s;
}

}  // namespace curvlab
