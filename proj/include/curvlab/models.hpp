#pragma once

// Curvature operators of the model spaces, and the closed-form Riem values
// of the Berger spheres (geodesic spheres in CP^n and CH^n).

#include <cmath>
#include <numbers>
#include <string>

#include "curvlab/curvature.hpp"

namespace curvlab {

/// Constant sectional curvature κ: κ·Id on Λ².
inline CurvatureOperator space_form(int n, double kappa) {
  if (n < 2) throw DomainError("space_form: dimension must be >= 2");
  if (!std::isfinite(kappa)) throw DomainError("space_form: curvature must be finite");
  return kappa * CurvatureOperator::identity(n);
}

/// Flat R^n or T^n. Unlike space_form this accepts n = 1 (a circle factor).
inline CurvatureOperator flat(int n) {
  if (n < 1) throw DomainError("flat: dimension must be >= 1");
  return CurvatureOperator::zero(n);
}

/// Riemannian product: factor blocks on the diagonal, mixed planes flat.
inline CurvatureOperator product(const CurvatureOperator& a, const CurvatureOperator& b) {
  const int n1 = a.dim();
  const int n = n1 + b.dim();
  const int N = bivector_count(n);
  Matrix m = Matrix::Zero(N, N);
  for (int x = 0; x < N; ++x) {
    const auto [i, j] = biv_pair(n, x);
    const bool first = j < n1;
    const bool second = i >= n1;
    if (!first && !second) continue;
    for (int y = 0; y < N; ++y) {
      const auto [k, l] = biv_pair(n, y);
      if (first && l < n1) {
        m(x, y) = a.matrix()(biv_index(n1, i, j), biv_index(n1, k, l));
      } else if (second && k >= n1) {
        m(x, y) = b.matrix()(biv_index(b.dim(), i - n1, j - n1), biv_index(b.dim(), k - n1, l - n1));
      }
    }
  }
  return {n, m};
}

/// S^{q-1} × R^{n-q+1}, the model along which surgeries of codimension q are glued.
inline CurvatureOperator cylinder(int q, int n) {
  if (q < 3 || q > n)
    throw DomainError("cylinder: need 3 <= q <= n, got q=" + std::to_string(q) + " n=" +
                      std::to_string(n));
  return product(space_form(q - 1, 1.0), flat(n - q + 1));
}

namespace detail {

/// ω_ij = <J e_i, e_j> for a complex structure given by its matrix (columns = J e_i).
inline Matrix kahler_form(const Matrix& j) { return j.transpose(); }

/// R_ijkl = δ_ik δ_jl − δ_il δ_jk + Σ_a (ω_ik ω_jl − ω_il ω_jk + 2 ω_ij ω_kl),
/// the constant holomorphic (or quaternionic) curvature tensor scaled so the
/// maximal sectional curvature is 4.
inline CurvatureOperator constant_holomorphic(int n, const std::vector<Matrix>& forms) {
  const int N = bivector_count(n);
  Matrix m(N, N);
  for (int x = 0; x < N; ++x) {
    const auto [i, j] = biv_pair(n, x);
    for (int y = 0; y < N; ++y) {
      const auto [k, l] = biv_pair(n, y);
      double v = (i == k && j == l) ? 1.0 : 0.0;
      for (const Matrix& w : forms)
        v += w(i, k) * w(j, l) - w(i, l) * w(j, k) + 2.0 * w(i, j) * w(k, l);
      m(x, y) = v;
    }
  }
  return {n, m};
}

}  // namespace detail

/// Fubini–Study metric on CP^n (real dimension 2n), holomorphic sectional
/// curvature 4, J e_{2k} = e_{2k+1}. Scal = 4n(n+1), λ_max = 2n+2.
inline CurvatureOperator fubini_study_cp(int n) {
  if (n < 1) throw DomainError("fubini_study_cp: complex dimension must be >= 1");
  const int d = 2 * n;
  Matrix j = Matrix::Zero(d, d);
  for (int k = 0; k < n; ++k) {
    j(2 * k + 1, 2 * k) = 1.0;   // J e_{2k} = e_{2k+1}
    j(2 * k, 2 * k + 1) = -1.0;  // J e_{2k+1} = -e_{2k}
  }
  return detail::constant_holomorphic(d, {detail::kahler_form(j)});
}

/// Standard metric on HP^n (real dimension 4n) from the left quaternion
/// multiplications I, J, K = IJ on each block (1, i, j, k).
/// Scal = 16n(n+2), λ_max = 4n.
inline CurvatureOperator fubini_study_hp(int n) {
  if (n < 1) throw DomainError("fubini_study_hp: quaternionic dimension must be >= 1");
  const int d = 4 * n;
  // Images of the basis (1, i, j, k) under left multiplication by i, j, k.
  const int unit[3][4][2] = {
      {{1, +1}, {0, -1}, {3, +1}, {2, -1}},  // i·1 = i, i·i = -1, i·j = k, i·k = -j
      {{2, +1}, {3, -1}, {0, -1}, {1, +1}},  // j·1 = j, j·i = -k, j·j = -1, j·k = i
      {{3, +1}, {2, +1}, {1, -1}, {0, -1}},  // k·1 = k, k·i = j, k·j = -i, k·k = -1
  };
  std::vector<Matrix> forms;
  for (const auto& table : unit) {
    Matrix s = Matrix::Zero(d, d);
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < 4; ++c) s(4 * b + table[c][0], 4 * b + c) = table[c][1];
    forms.push_back(detail::kahler_form(s));
  }
  return detail::constant_holomorphic(d, forms);
}

/// Riem of the geodesic sphere S^{2n-1}(r) ⊂ CP^n, 0 < r < π/2.
inline double berger_cp_riem(int n, double r) {
  if (n < 2) throw DomainError("berger_cp_riem: need n >= 2");
  if (!(r > 0.0 && r < std::numbers::pi / 2))
    throw DomainError("berger_cp_riem: radius must lie in (0, pi/2)");
  const double c = std::cos(r) / std::sin(r);
  const double c2 = c * c;
  return (4.0 * n * (n - 1) + (2.0 * n - 2) * (2.0 * n - 1) * c2) / (4.0 * n + 2.0 * c2);
}

/// Riem of the geodesic sphere S^{2n-1}(r) ⊂ CH^n, r > 0. The closed form
/// drops below zero once tanh²r > (2n−1)/(2n), where the sphere stops being PSC.
inline double berger_ch_riem(int n, double r) {
  if (n < 2) throw DomainError("berger_ch_riem: need n >= 2");
  if (!(r > 0.0)) throw DomainError("berger_ch_riem: radius must be positive");
  const double t = std::tanh(r);
  return -2.0 * n * (n - 1) * t * t + (n - 1.0) * (2.0 * n - 1);
}

/// Conformally flat curvature R = g∧A for a Schouten-type tensor A.
inline CurvatureOperator conformally_flat(const SymmetricTwoTensor& a) {
  return kulkarni_nomizu(SymmetricTwoTensor::metric(a.dim()), a);
}

}  // namespace curvlab
