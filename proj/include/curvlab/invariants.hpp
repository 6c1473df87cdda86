#pragma once

// Riem_t and the pointwise invariants derived from it: Riem, the small riem,
// the intermediate curvatures C_p and s_p, and the conformally flat
// reduction of Riem_t to Ein_T.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "curvlab/models.hpp"
#include "curvlab/random.hpp"

namespace curvlab {

/// Riem_t = Scal·g²/2 − 2tR, i.e. Scal·Id − 2tR on Λ².
inline CurvatureOperator riem_t(const CurvatureOperator& r, double t) {
  return scalar(r) * CurvatureOperator::identity(r.dim()) - (2.0 * t) * r;
}

/// Scal/(2λ_max), the largest t with Riem_t > 0; zero without positive
/// scalar curvature.
inline double riem_pointwise(const CurvatureOperator& r, double tol = -1.0) {
  if (tol < 0) tol = default_tolerance(r.norm());
  const double scal = scalar(r);
  if (scal <= tol) return 0.0;
  return scal / (2.0 * spectrum(r).max());
}

inline constexpr double kMinusInfinity = -std::numeric_limits<double>::infinity();

/// inf{t < 0 : Riem_t > 0}. Returns kMinusInfinity when R ≥ 0 (the set is
/// unbounded below) and 0 when Scal ≤ 0 (the set is empty).
inline double riem_small_pointwise(const CurvatureOperator& r, double tol = -1.0) {
  if (tol < 0) tol = default_tolerance(r.norm());
  const double scal = scalar(r);
  if (scal <= tol) return 0.0;
  const double lmin = spectrum(r).min();
  if (lmin >= -tol) return kMinusInfinity;
  return scal / (2.0 * lmin);
}

/// Orthonormal frame whose first p vectors span the plane P.
class PlaneFrame {
 public:
  PlaneFrame(const Matrix& vectors, int p) : vectors_(vectors), p_(p) {
    const int n = static_cast<int>(vectors.rows());
    if (vectors.cols() != n) throw DomainError("PlaneFrame: need n vectors in R^n");
    if (p < 0 || p > n) throw DomainError("PlaneFrame: p out of range");
    const Matrix gram = vectors.transpose() * vectors;
    if ((gram - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-9)
      throw DomainError("PlaneFrame: vectors are not orthonormal");
  }

  static PlaneFrame standard(int n, int p) { return {Matrix::Identity(n, n), p}; }

  /// Coordinate frame whose plane is spanned by the given coordinate axes.
  static PlaneFrame coordinate(int n, const MultiIndex& axes) {
    Matrix q = Matrix::Zero(n, n);
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    int col = 0;
    for (int a : axes) {
      q(a, col++) = 1.0;
      used[static_cast<std::size_t>(a)] = true;
    }
    for (int a = 0; a < n; ++a)
      if (!used[static_cast<std::size_t>(a)]) q(a, col++) = 1.0;
    return {q, static_cast<int>(axes.size())};
  }

  int dim() const noexcept { return static_cast<int>(vectors_.rows()); }
  int p() const noexcept { return p_; }
  const Matrix& vectors() const noexcept { return vectors_; }

 private:
  Matrix vectors_;
  int p_;
};

namespace detail {

/// sec(e_i, e_j) for all pairs of the frame, as a strictly upper triangular matrix.
inline Matrix frame_sectionals(const CurvatureOperator& r, const Matrix& q) {
  const int n = r.dim();
  const int N = bivector_count(n);
  Matrix w(N, N);
  for (int a = 0; a < N; ++a) {
    const auto [i, j] = biv_pair(n, a);
    w.col(a) = wedge(q.col(i), q.col(j));
  }
  const Vector d = (w.transpose() * r.matrix() * w).diagonal();
  Matrix sec = Matrix::Zero(n, n);
  for (int a = 0; a < N; ++a) {
    const auto [i, j] = biv_pair(n, a);
    sec(i, j) = d(a);
  }
  return sec;
}

inline void check_frame(const CurvatureOperator& r, const PlaneFrame& f, int pmax, const char* what) {
  if (f.dim() != r.dim()) throw DomainError(std::string(what) + ": frame dimension mismatch");
  if (f.p() < 1 || f.p() > pmax)
    throw DomainError(std::string(what) + ": p=" + std::to_string(f.p()) + " outside [1, " +
                      std::to_string(pmax) + "]");
}

inline double c_p_from_sectionals(const Matrix& sec, int p) {
  const int n = static_cast<int>(sec.rows());
  double s = 0.0;
  for (int i = 0; i < p; ++i)
    for (int j = i + 1; j < n; ++j) s += sec(i, j);
  return s;
}

}  // namespace detail

/// p-curvature s_p(P): twice the sum of the sectional curvatures of the
/// coordinate planes orthogonal to P, so that C_p = Scal/2 − s_p/2.
inline double p_curvature(const CurvatureOperator& r, const PlaneFrame& f) {
  detail::check_frame(r, f, r.dim() - 2, "p_curvature");
  const Matrix sec = detail::frame_sectionals(r, f.vectors());
  double s = 0.0;
  for (int i = f.p(); i < r.dim(); ++i)
    for (int j = i + 1; j < r.dim(); ++j) s += sec(i, j);
  return 2.0 * s;
}

/// p-intermediate curvature C_p(P) = Σ_{i<=p} Σ_{j>i} sec(e_i, e_j).
inline double c_p(const CurvatureOperator& r, const PlaneFrame& f) {
  detail::check_frame(r, f, r.dim() - 1, "c_p");
  return detail::c_p_from_sectionals(detail::frame_sectionals(r, f.vectors()), f.p());
}

struct SampledMinimum {
  double value = 0.0;
  int coordinate_frames = 0;
  int samples = 0;
  std::uint64_t seed = 0;
};

/// Minimum of C_p over every coordinate p-plane and `samples` Haar-random
/// frames. This bounds the true infimum from above; sample i always comes
/// from stream(seed, i), so more samples can only lower the result.
inline SampledMinimum c_p_min(const CurvatureOperator& r, int p, int samples,
                              std::uint64_t seed = kDefaultSeed) {
  const int n = r.dim();
  if (p < 1 || p > n - 1) throw DomainError("c_p_min: p outside [1, n-1]");
  if (samples < 1) throw DomainError("c_p_min: need at least one sample");
  SampledMinimum out;
  out.samples = samples;
  out.seed = seed;
  out.value = std::numeric_limits<double>::infinity();
  for (const MultiIndex& axes : MultiIndexBasis(n, p)) {
    const PlaneFrame f = PlaneFrame::coordinate(n, axes);
    out.value = std::min(out.value, detail::c_p_from_sectionals(
                                        detail::frame_sectionals(r, f.vectors()), p));
    ++out.coordinate_frames;
  }
  for (int s = 0; s < samples; ++s) {
    Engine rng = stream(seed, static_cast<std::uint64_t>(s));
    const Matrix q = haar_orthogonal(n, rng);
    out.value = std::min(out.value, detail::c_p_from_sectionals(detail::frame_sectionals(r, q), p));
  }
  return out;
}

/// T = 4t(n−1) / ((n−1)(n−2) + 2t), the coupling for which
/// (n−2)Riem_t = c·g∧Ein_T on conformally flat metrics.
inline double conformal_coupling(double t, int n) {
  const double denom = (n - 1.0) * (n - 2.0) + 2.0 * t;
  if (std::abs(denom) < 1e-12)
    throw SingularCouplingError("conformal_coupling: (n-1)(n-2) + 2t vanishes at t=" +
                                std::to_string(t));
  return 4.0 * t * (n - 1.0) / denom;
}

/// Ein_T = Scal·g − T·Ric.
inline SymmetricTwoTensor ein_t(const CurvatureOperator& r, double coupling) {
  return scalar(r) * SymmetricTwoTensor::metric(r.dim()) - coupling * ricci(r);
}

/// ‖(n−2)Riem_t − c·g∧Ein_T‖ for R = g∧A, with c = ((n−1)(n−2)+2t)/(2(n−1)).
inline double conformal_identity_check(const SymmetricTwoTensor& a, double t) {
  const int n = a.dim();
  if (n < 3) throw DomainError("conformal_identity_check: need n >= 3");
  const double coupling = conformal_coupling(t, n);
  const CurvatureOperator r = conformally_flat(a);
  const double c = ((n - 1.0) * (n - 2.0) + 2.0 * t) / (2.0 * (n - 1.0));
  const CurvatureOperator lhs = (n - 2.0) * riem_t(r, t);
  const CurvatureOperator rhs = c * kulkarni_nomizu(SymmetricTwoTensor::metric(n), ein_t(r, coupling));
  return (lhs - rhs).norm();
}

}  // namespace curvlab
