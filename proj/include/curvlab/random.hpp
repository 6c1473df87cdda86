#pragma once

// Reproducible sampling. Every sample is drawn from its own stream keyed by
// (seed, index), so results do not depend on evaluation order.

#include <cmath>
#include <cstdint>
#include <random>

#include "curvlab/curvature.hpp"

namespace curvlab {

inline constexpr std::uint64_t kDefaultSeed = 20240917;

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

using Engine = std::mt19937_64;

inline Engine stream(std::uint64_t seed, std::uint64_t index) {
  return Engine(splitmix64(seed ^ splitmix64(index + 0x632be59bd9b4e019ULL)));
}

inline Matrix gaussian_matrix(int rows, int cols, Engine& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = normal(rng);
  return m;
}

/// Symmetric N×N matrix with independent standard-normal upper triangle,
/// projected onto the algebraic curvature operators.
inline CurvatureOperator random_curvature_operator(int n, Engine& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const int N = bivector_count(n);
  Matrix s(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = i; j < N; ++j) {
      s(i, j) = normal(rng);
      s(j, i) = s(i, j);
    }
  return bianchi_project(CurvatureOperator(n, s));
}

/// shift·Id + ε·(random operator) with shift ~ U[-0.5, 3] and ε log-uniform
/// in [0.01, 1]. Covers everything from near-round to strongly indefinite
/// curvature, which the plain Gaussian ensemble rarely reaches.
inline CurvatureOperator random_mixed_operator(int n, Engine& rng) {
  std::uniform_real_distribution<double> shift(-0.5, 3.0);
  std::uniform_real_distribution<double> log_eps(std::log(0.01), 0.0);
  const double s = shift(rng);
  const double eps = std::exp(log_eps(rng));
  const CurvatureOperator g = random_curvature_operator(n, rng);
  return s * CurvatureOperator::identity(n) + eps * g;
}

/// Haar-distributed orthogonal matrix (QR of a Gaussian matrix with the
/// sign of diag(R) absorbed into Q).
inline Matrix haar_orthogonal(int n, Engine& rng) {
  const Matrix a = gaussian_matrix(n, n, rng);
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  const Matrix r = qr.matrixQR();
  for (int j = 0; j < n; ++j)
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  return q;
}

inline SymmetricTwoTensor random_symmetric(int n, Engine& rng) {
  return SymmetricTwoTensor(gaussian_matrix(n, n, rng));
}

}  // namespace curvlab
