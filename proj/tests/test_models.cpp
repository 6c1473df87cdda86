#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "curvlab/curvlab.hpp"
#include "oracle.hpp"

using namespace curvlab;

namespace {

// Dense constant holomorphic curvature tensor built from a list of complex
// structures J (J(i, j) = <J e_i, e_j>), sectional 1 on totally real planes.
oracle::Tensor4 holomorphic_tensor(int n, const std::vector<Matrix>& js) {
  oracle::Tensor4 t(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double v = (i == k) * (j == l) - (i == l) * (j == k);
          for (const Matrix& J : js) v += J(i, k) * J(j, l) - J(i, l) * J(j, k) + 2 * J(i, j) * J(k, l);
          t(i, j, k, l) = v;
        }
  return t;
}

// Left multiplication by i, j, k on each quaternion block (basis 1, i, j, k).
std::vector<Matrix> quaternion_structures(int m) {
  const int d = 4 * m;
  // images[a][c] = (target basis element, sign) for unit a acting on basis c.
  const int images[3][4][2] = {{{1, 1}, {0, -1}, {3, 1}, {2, -1}},
                               {{2, 1}, {3, -1}, {0, -1}, {1, 1}},
                               {{3, 1}, {2, 1}, {1, -1}, {0, -1}}};
  std::vector<Matrix> out;
  for (const auto& u : images) {
    Matrix J = Matrix::Zero(d, d);
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < 4; ++c) J(4 * b + c, 4 * b + u[c][0]) = u[c][1];
    out.push_back(J);
  }
  return out;
}

std::vector<Matrix> complex_structure(int m) {
  Matrix J = Matrix::Zero(2 * m, 2 * m);
  for (int b = 0; b < m; ++b) {
    J(2 * b, 2 * b + 1) = 1.0;
    J(2 * b + 1, 2 * b) = -1.0;
  }
  return {J};
}

void expect_same_spectrum(const Matrix& a, const Matrix& b, double tol) {
  const auto sa = symmetric_spectrum(a).eigenvalues;
  const auto sb = symmetric_spectrum(b).eigenvalues;
  ASSERT_EQ(sa.size(), sb.size());
  for (std::size_t i = 0; i < sa.size(); ++i) EXPECT_NEAR(sa[i], sb[i], tol) << i;
}

SymmetricTwoTensor diag(const Vector& d) { return SymmetricTwoTensor::diagonal(d); }

}  // namespace

TEST(Models, SpaceFormExamples) {
  const CurvatureOperator s4 = space_form(4, 1.0);
  EXPECT_TRUE(s4.matrix().isIdentity(0.0));
  EXPECT_DOUBLE_EQ(scalar(s4), 12.0);
  EXPECT_TRUE(space_form(5, 0.0).matrix().isZero(0.0));
  EXPECT_DOUBLE_EQ(scalar(space_form(3, -1.0)), -6.0);
  EXPECT_THROW(space_form(1, 1.0), DomainError);
  EXPECT_THROW(space_form(3, NAN), DomainError);
  EXPECT_NO_THROW(flat(1));
}

TEST(Models, ProductBlockSpectrum) {
  for (int n = 3; n <= 8; ++n)
    for (int p = 1; p <= n - 2; ++p) {
      const CurvatureOperator r = product(space_form(n - p, 1.0), flat(p));
      const auto ev = spectrum(r).eigenvalues;
      const long long ones = std::count_if(ev.begin(), ev.end(), [](double v) { return std::abs(v - 1) < 1e-12; });
      const long long zeros = std::count_if(ev.begin(), ev.end(), [](double v) { return std::abs(v) < 1e-12; });
      EXPECT_EQ(ones, oracle::choose2(n - p));
      EXPECT_EQ(ones + zeros, static_cast<long long>(ev.size()));
      EXPECT_NEAR(scalar(r), (n - p) * (n - p - 1), 1e-12);
      const CurvatureOperator h = product(space_form(n - p, 1.0), space_form(std::max(p, 2), -1.0));
      const int q = std::max(p, 2);
      EXPECT_NEAR(scalar(h), (n - p) * (n - p - 1) - q * (q - 1), 1e-12);
    }
}

TEST(Models, ProductMatchesDenseBlockTensor) {
  Engine rng = stream(21, 0);
  const CurvatureOperator a = random_curvature_operator(3, rng);
  const CurvatureOperator b = random_curvature_operator(4, rng);
  const CurvatureOperator ab = product(a, b);
  const oracle::Tensor4 ta = oracle::from_operator(3, a.matrix());
  const oracle::Tensor4 tb = oracle::from_operator(4, b.matrix());
  oracle::Tensor4 t(7);
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j)
      for (int k = 0; k < 7; ++k)
        for (int l = 0; l < 7; ++l) {
          if (i < 3 && j < 3 && k < 3 && l < 3) t(i, j, k, l) = ta(i, j, k, l);
          if (i >= 3 && j >= 3 && k >= 3 && l >= 3) t(i, j, k, l) = tb(i - 3, j - 3, k - 3, l - 3);
        }
  EXPECT_LE((ab.matrix() - oracle::to_operator(t)).norm(), 1e-14);
  EXPECT_LE(bianchi_defect(ab), 1e-12 * (1 + ab.norm()));
}

TEST(Models, ProductIsAssociativeUpToBasisOrder) {
  Engine rng = stream(22, 0);
  const CurvatureOperator a = random_curvature_operator(2, rng);
  const CurvatureOperator b = random_curvature_operator(3, rng);
  const CurvatureOperator c = random_curvature_operator(3, rng);
  expect_same_spectrum(product(product(a, b), c).matrix(), product(a, product(b, c)).matrix(), 1e-9);
}

TEST(Models, ProductKeepsCurvedLambdaMax) {
  const CurvatureOperator r = product(space_form(3, 2.0), flat(3));
  EXPECT_NEAR(spectrum(r).max(), 2.0, 1e-12);
}

TEST(Models, CylinderExamples) {
  const CurvatureOperator c = cylinder(3, 5);
  EXPECT_NEAR(scalar(c), 2.0, 1e-12);
  EXPECT_NEAR(spectrum(c).max(), 1.0, 1e-12);
  // q = n leaves a single flat direction: S^{n-1} x R.
  for (int n = 3; n <= 7; ++n) EXPECT_NEAR(riem_pointwise(cylinder(n, n)), oracle::choose2(n - 1), 1e-12);
  EXPECT_THROW(cylinder(2, 5), DomainError);
  EXPECT_THROW(cylinder(6, 5), DomainError);
}

TEST(Models, FubiniStudyCPMatchesDenseFormula) {
  for (int m = 1; m <= 4; ++m) {
    const CurvatureOperator r = fubini_study_cp(m);
    const Matrix want = oracle::to_operator(holomorphic_tensor(2 * m, complex_structure(m)));
    EXPECT_LE((r.matrix() - want).norm(), 1e-12) << m;
    EXPECT_LE(bianchi_defect(r), 1e-12);
    EXPECT_TRUE(ricci(r).matrix().isApprox(2.0 * (m + 1) * Matrix::Identity(2 * m, 2 * m), 1e-12));
  }
}

TEST(Models, FubiniStudyValues) {
  EXPECT_NEAR(scalar(fubini_study_cp(2)), 24.0, 1e-9);
  EXPECT_NEAR(spectrum(fubini_study_cp(2)).max(), 6.0, 1e-9);
  EXPECT_NEAR(scalar(fubini_study_cp(3)), 48.0, 1e-9);
  EXPECT_NEAR(spectrum(fubini_study_cp(3)).max(), 8.0, 1e-9);
  EXPECT_NEAR(scalar(fubini_study_hp(1)), 48.0, 1e-9);
  EXPECT_NEAR(spectrum(fubini_study_hp(1)).max(), 4.0, 1e-9);
  EXPECT_NEAR(scalar(fubini_study_hp(2)), 128.0, 1e-9);
  EXPECT_NEAR(spectrum(fubini_study_hp(2)).max(), 8.0, 1e-9);
  // HP^1 is the round 4-sphere of curvature 4.
  EXPECT_TRUE(fubini_study_hp(1).matrix().isApprox(4.0 * Matrix::Identity(6, 6), 1e-12));
}

TEST(Models, FubiniStudyHPIsometricToDenseFormula) {
  for (int m = 1; m <= 2; ++m) {
    const CurvatureOperator r = fubini_study_hp(m);
    const oracle::Tensor4 t = holomorphic_tensor(4 * m, quaternion_structures(m));
    EXPECT_LE(oracle::max_bianchi(t), 1e-12);
    expect_same_spectrum(r.matrix(), oracle::to_operator(t), 1e-9);
    EXPECT_LE(bianchi_defect(r), 1e-12);
    EXPECT_TRUE(ricci(r).matrix().isApprox(4.0 * (m + 2) * Matrix::Identity(4 * m, 4 * m), 1e-12));
    for (int a = 0; a + 1 < 4 * m; a += 4) EXPECT_NEAR(sectional(r, Vector::Unit(4 * m, a), Vector::Unit(4 * m, a + 1)), 4.0, 1e-12);
  }
}

TEST(Models, BergerLimitsAndRange) {
  EXPECT_NEAR(berger_cp_riem(2, 1e-4), 3.0, 1e-6);
  EXPECT_NEAR(berger_cp_riem(2, std::numbers::pi / 2 - 1e-4), 1.0, 1e-6);
  for (int n = 2; n <= 5; ++n) {
    const double N = (n - 1.0) * (2 * n - 1);
    EXPECT_NEAR(berger_cp_riem(n, 1e-5), N, 1e-6);
    EXPECT_NEAR(berger_cp_riem(n, std::numbers::pi / 2 - 1e-6), n - 1.0, 1e-6);
    EXPECT_NEAR(berger_ch_riem(n, 1e-6), N, 1e-9);
    EXPECT_NEAR(berger_ch_riem(n, std::atanh(std::sqrt((2.0 * n - 1) / (2.0 * n)))), 0.0, 1e-9);
    double prev = INFINITY;
    for (int i = 1; i < 100; ++i) {
      const double v = berger_cp_riem(n, i * std::numbers::pi / 200);
      EXPECT_LE(v, prev + 1e-12);
      EXPECT_LE(v, N + 1e-12);
      EXPECT_GE(v, n - 1.0 - 1e-12);
      prev = v;
    }
  }
  EXPECT_THROW(berger_cp_riem(2, 0.0), DomainError);
  EXPECT_THROW(berger_cp_riem(2, std::numbers::pi / 2), DomainError);
  EXPECT_THROW(berger_cp_riem(1, 0.5), DomainError);
  EXPECT_THROW(berger_ch_riem(2, -1.0), DomainError);
}

TEST(Models, ConformallyFlatExamples) {
  for (int n = 3; n <= 6; ++n) {
    const double kappa = 1.3;
    const CurvatureOperator r = conformally_flat((kappa / 2) * SymmetricTwoTensor::metric(n));
    EXPECT_LE((r - space_form(n, kappa)).norm(), 1e-12);
  }
  Vector a(4);
  a << 0.2, -0.4, 1.1, 0.7;
  const CurvatureOperator r = conformally_flat(diag(a));
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) EXPECT_NEAR(sectional(r, Vector::Unit(4, i), Vector::Unit(4, j)), a(i) + a(j), 1e-12);
  for (int n = 4; n <= 7; ++n)
    for (int p = 2; p <= n - 2; ++p) {
      Vector d(n);
      for (int i = 0; i < n; ++i) d(i) = i < n - p ? 0.5 : -0.5;
      EXPECT_LE((conformally_flat(diag(d)) - product(space_form(n - p, 1.0), space_form(p, -1.0))).norm(), 1e-12);
    }
}

TEST(Models, ConstructorsSatisfyBianchi) {
  const std::vector<CurvatureOperator> ops = {space_form(5, 2.0), cylinder(4, 7), fubini_study_cp(3), fubini_study_hp(2),
                                              product(fubini_study_cp(1), space_form(3, -1.0))};
  for (const auto& r : ops) EXPECT_LE(bianchi_defect(r), 1e-12 * (1 + r.norm()));
}

// --- invariants --------------------------------------------------------------

TEST(RiemT, SpaceFormAndTrace) {
  for (int n = 3; n <= 6; ++n) {
    const int N = bivector_count(n);
    const CurvatureOperator r = space_form(n, 1.0);
    for (double t : {0.5, 1.0, N - 0.5, N + 0.5}) {
      const CurvatureOperator rt = riem_t(r, t);
      EXPECT_TRUE(rt.matrix().isApprox((n * (n - 1) - 2 * t) * Matrix::Identity(N, N)));
      EXPECT_EQ(positive_definite(rt.matrix()), t < N);
    }
  }
  Engine rng = stream(31, 0);
  for (int n = 3; n <= 6; ++n) {
    const CurvatureOperator r = random_curvature_operator(n, rng);
    const double t = 1.7;
    EXPECT_NEAR(riem_t(r, t).trace(), (bivector_count(n) - t) * scalar(r), 1e-10 * (1 + r.norm()));
  }
}

TEST(RiemT, ThreeDimensionalSpectrumFromRicci) {
  Engine rng = stream(32, 0);
  for (int s = 0; s < 20; ++s) {
    const CurvatureOperator r = random_curvature_operator(3, rng);
    const double t = 0.3 + s * 0.2;
    const double scal = scalar(r);
    std::vector<double> want;
    for (double rho : symmetric_spectrum(ricci(r).matrix()).eigenvalues) want.push_back((1 - t) * scal + 2 * t * rho);
    std::sort(want.begin(), want.end());
    const auto got = spectrum(riem_t(r, t)).eigenvalues;
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(got[static_cast<std::size_t>(i)], want[static_cast<std::size_t>(i)], 1e-9 * (1 + std::abs(scal)));
  }
}

TEST(RiemPointwise, ExampleTable) {
  for (int n = 3; n <= 8; ++n) {
    EXPECT_NEAR(riem_pointwise(space_form(n, 1.0)), n * (n - 1) / 2.0, 1e-9);
    EXPECT_NEAR(riem_pointwise(space_form(n, 0.25)), n * (n - 1) / 2.0, 1e-9);
  }
  for (int m = 1; m <= 5; ++m) EXPECT_NEAR(riem_pointwise(fubini_study_cp(m)), m, 1e-9);
  for (int m = 1; m <= 3; ++m) EXPECT_NEAR(riem_pointwise(fubini_study_hp(m)), 2 * m + 4, 1e-9);
  EXPECT_NEAR(riem_pointwise(product(space_form(3, 1.0), space_form(2, -1.0))), 2.0, 1e-9);
  EXPECT_EQ(riem_pointwise(flat(4)), 0.0);
  EXPECT_EQ(riem_pointwise(space_form(4, -1.0)), 0.0);
}

TEST(RiemPointwise, BoundedByNAndEqualOnlyForSpaceForms) {
  Engine rng = stream(33, 0);
  for (int s = 0; s < 200; ++s) {
    const int n = 3 + s % 4;
    const CurvatureOperator r = random_mixed_operator(n, rng);
    const double v = riem_pointwise(r);
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, bivector_count(n) * (1 + 1e-12));
    EXPECT_NEAR(riem_pointwise(3.5 * r), v, 1e-9 * (1 + v));
  }
}

TEST(RiemSmall, Examples) {
  EXPECT_EQ(riem_small_pointwise(space_form(4, 1.0)), kMinusInfinity);
  const CurvatureOperator sh = product(space_form(3, 1.0), space_form(2, -1.0));
  EXPECT_NEAR(riem_small_pointwise(sh), -2.0, 1e-12);
  EXPECT_NEAR(riem_small_pointwise(0.3 * sh), -2.0, 1e-12);
  EXPECT_EQ(riem_small_pointwise(space_form(3, -1.0)), 0.0);
  // Riem_t stays positive on (riem_small, 0) and fails just past it.
  EXPECT_TRUE(positive_definite(riem_t(sh, -1.99).matrix()));
  EXPECT_FALSE(positive_definite(riem_t(sh, -2.01).matrix()));
}

TEST(IntermediateCurvature, SpaceFormValues) {
  for (int n = 3; n <= 7; ++n) {
    const CurvatureOperator r = space_form(n, 1.0);
    for (int p = 1; p <= n - 2; ++p)
      EXPECT_NEAR(p_curvature(r, PlaneFrame::standard(n, p)), (n - p) * (n - p - 1), 1e-12);
    for (int p = 1; p <= n - 1; ++p) {
      EXPECT_NEAR(c_p(r, PlaneFrame::standard(n, p)), p * (2 * n - p - 1) / 2.0, 1e-12);
      EXPECT_NEAR(c_p_min(r, p, 50).value, p * (2 * n - p - 1) / 2.0, 1e-9);
    }
  }
}

TEST(IntermediateCurvature, SphereTimesTorus) {
  const CurvatureOperator r = product(space_form(2, 1.0), flat(2));
  EXPECT_NEAR(p_curvature(r, PlaneFrame::coordinate(4, {0, 1})), 0.0, 1e-12);
  EXPECT_NEAR(c_p(r, PlaneFrame::coordinate(4, {2, 3})), 0.0, 1e-12);
  EXPECT_NEAR(c_p(r, PlaneFrame::coordinate(4, {0, 1})), 1.0, 1e-12);
  EXPECT_NEAR(c_p_min(r, 2, 100).value, 0.0, 1e-12);
}

TEST(IntermediateCurvature, EndpointsAndIdentity) {
  Engine rng = stream(34, 0);
  for (int s = 0; s < 200; ++s) {
    const int n = 4 + s % 2;
    const CurvatureOperator r = random_curvature_operator(n, rng);
    const Matrix q = haar_orthogonal(n, rng);
    const double scal = scalar(r);
    EXPECT_NEAR(c_p(r, PlaneFrame(q, n - 1)), scal / 2, 1e-9 * (1 + r.norm()));
    EXPECT_NEAR(c_p(r, PlaneFrame(q, 1)), q.col(0).dot(ricci(r).matrix() * q.col(0)), 1e-9 * (1 + r.norm()));
    for (int p = 1; p <= n - 2; ++p) {
      const PlaneFrame f(q, p);
      EXPECT_NEAR(c_p(r, f), scal / 2 - p_curvature(r, f) / 2, 1e-9 * (1 + r.norm()));
    }
  }
}

TEST(IntermediateCurvature, Errors) {
  const CurvatureOperator r = space_form(4, 1.0);
  Matrix bad = Matrix::Identity(4, 4);
  bad(0, 1) = 0.5;
  EXPECT_THROW(PlaneFrame(bad, 2), DomainError);
  EXPECT_THROW(p_curvature(r, PlaneFrame::standard(4, 3)), DomainError);
  EXPECT_THROW(c_p(r, PlaneFrame::standard(4, 4)), DomainError);
  EXPECT_THROW(c_p(r, PlaneFrame::standard(5, 2)), DomainError);
  EXPECT_THROW(c_p_min(r, 0, 10), DomainError);
}

TEST(IntermediateCurvature, SampledMinimumIsMonotoneInSamples) {
  Engine rng = stream(35, 0);
  const CurvatureOperator r = random_curvature_operator(5, rng);
  double prev = INFINITY;
  for (int s : {1, 5, 20, 100, 400}) {
    const SampledMinimum m = c_p_min(r, 2, s, 99);
    EXPECT_LE(m.value, prev);
    EXPECT_EQ(m.samples, s);
    EXPECT_EQ(m.coordinate_frames, 10);
    prev = m.value;
  }
}

TEST(Conformal, CouplingExamples) {
  EXPECT_EQ(conformal_coupling(0.0, 5), 0.0);
  EXPECT_NEAR(conformal_coupling(3.0, 4), 3.0, 1e-15);
  for (int n = 4; n <= 9; ++n)
    for (int p = 1; 2 * p < n; ++p) {
      const double t = (n - 1) * (n - 2 * p) / 2.0;
      EXPECT_NEAR(conformal_coupling(t, n), (n - 1.0) * (n - 2 * p) / (n - p - 1), 1e-12);
    }
  EXPECT_THROW(conformal_coupling(-3.0, 4), SingularCouplingError);
  EXPECT_THROW(conformal_coupling(-1.0, 3), SingularCouplingError);
}

TEST(Conformal, IdentityExamples) {
  for (double t : {0.5, 1.0, 4.0}) EXPECT_LE(conformal_identity_check(0.7 * SymmetricTwoTensor::metric(5), t), 1e-12);
  Engine rng = stream(36, 0);
  std::normal_distribution<double> g(0.0, 1.0);
  Vector a(5);
  for (int i = 0; i < 5; ++i) a(i) = g(rng);
  EXPECT_LE(conformal_identity_check(diag(a), 2.0), 1e-10);
  Vector s(4);
  s << 0.5, 0.5, 0.5, -0.5;
  EXPECT_LE(conformal_identity_check(diag(s), 1.5), 1e-10);
  EXPECT_THROW(conformal_identity_check(SymmetricTwoTensor::metric(2), 1.0), DomainError);
}
