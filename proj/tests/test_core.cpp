#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "curvlab/curvlab.hpp"
#include "oracle.hpp"

using namespace curvlab;

namespace {

CurvatureOperator random_op(int n, std::uint64_t i) {
  Engine rng = stream(101, i);
  return random_curvature_operator(n, rng);
}

SymmetricTwoTensor diag(std::vector<double> d) {
  return SymmetricTwoTensor::diagonal(Eigen::Map<Vector>(d.data(), static_cast<Eigen::Index>(d.size())));
}

}  // namespace

TEST(Basis, BivectorIndexExamples) {
  EXPECT_EQ(biv_index(4, 0, 1), 0);
  EXPECT_EQ(biv_index(4, 0, 3), 2);
  EXPECT_EQ(biv_index(4, 2, 3), 5);
  EXPECT_EQ(bivector_count(4), 6);
}

TEST(Basis, RoundTripMatchesBruteForceEnumeration) {
  for (int n = 2; n <= 10; ++n) {
    const auto ps = oracle::pairs(n);
    ASSERT_EQ(static_cast<int>(ps.size()), bivector_count(n));
    for (std::size_t k = 0; k < ps.size(); ++k) {
      EXPECT_EQ(biv_index(n, ps[k].first, ps[k].second), static_cast<int>(k));
      EXPECT_EQ(biv_pair(n, static_cast<int>(k)), ps[k]);
    }
  }
}

TEST(Basis, RejectsBadPairs) {
  EXPECT_THROW(biv_index(4, 1, 1), DomainError);
  EXPECT_THROW(biv_index(4, 2, 1), DomainError);
  EXPECT_THROW(biv_index(4, 0, 4), DomainError);
  EXPECT_THROW(biv_index(4, -1, 2), DomainError);
}

TEST(Basis, MultiIndexBasisIsLexicographicAndComplete) {
  for (int n = 0; n <= 7; ++n)
    for (int p = 0; p <= n; ++p) {
      const MultiIndexBasis b(n, p);
      const auto ref = oracle::blades(n, p);
      ASSERT_EQ(b.size(), ref.size()) << n << " " << p;
      ASSERT_EQ(static_cast<long long>(b.size()), binomial(n, p));
      for (std::size_t k = 0; k < ref.size(); ++k) {
        EXPECT_EQ(b[k], ref[k]);
        EXPECT_EQ(b.rank(ref[k]), k);
      }
    }
}

TEST(Tensors, SymmetricTwoTensorIsExactlySymmetric) {
  Matrix m(3, 3);
  m << 1, 2, 3, 4, 5, 6, 7, 8, 9.1;
  const SymmetricTwoTensor h(m);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_EQ(h(i, j), h(j, i));
  EXPECT_DOUBLE_EQ(h(0, 1), 3.0);
}

TEST(Tensors, CurvatureOperatorRejectsWrongSize) {
  EXPECT_THROW(CurvatureOperator(4, Matrix::Zero(5, 5)), DomainError);
  EXPECT_THROW(CurvatureOperator(3, Matrix::Zero(3, 4)), DomainError);
}

TEST(Tensors, FourIndexAccessHasCurvatureSymmetries) {
  const CurvatureOperator r = random_op(5, 1);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      for (int k = 0; k < 5; ++k)
        for (int l = 0; l < 5; ++l) {
          EXPECT_EQ(r(i, j, k, l), -r(j, i, k, l));
          EXPECT_EQ(r(i, j, k, l), -r(i, j, l, k));
          EXPECT_EQ(r(i, j, k, l), r(k, l, i, j));
        }
}

TEST(KulkarniNomizu, MetricSquaredIsTwiceIdentity) {
  for (int n = 2; n <= 6; ++n) {
    const CurvatureOperator gg = kulkarni_nomizu(SymmetricTwoTensor::metric(n), SymmetricTwoTensor::metric(n));
    EXPECT_TRUE((0.5 * gg.matrix()).isIdentity(0.0));
  }
}

TEST(KulkarniNomizu, DiagonalTimesMetric) {
  const std::vector<double> a = {0.5, -1.0, 2.0, 3.5};
  const CurvatureOperator r = kulkarni_nomizu(diag(a), SymmetricTwoTensor::metric(4));
  for (int x = 0; x < 6; ++x) {
    const auto [i, j] = biv_pair(4, x);
    for (int y = 0; y < 6; ++y) EXPECT_DOUBLE_EQ(r.matrix()(x, y), x == y ? a[i] + a[j] : 0.0);
  }
}

TEST(KulkarniNomizu, MatchesDenseOracleAndIsSymmetric) {
  Engine rng = stream(7, 0);
  for (int n = 2; n <= 6; ++n) {
    const SymmetricTwoTensor h = random_symmetric(n, rng);
    const SymmetricTwoTensor k = random_symmetric(n, rng);
    const CurvatureOperator hk = kulkarni_nomizu(h, k);
    EXPECT_LE((hk.matrix() - oracle::to_operator(oracle::kn(h.matrix(), k.matrix()))).norm(), 1e-12);
    EXPECT_LE((hk.matrix() - kulkarni_nomizu(k, h).matrix()).norm(), 1e-12);
    EXPECT_LE(bianchi_defect(hk), 1e-12 * (1 + hk.norm()));
  }
  EXPECT_THROW(kulkarni_nomizu(SymmetricTwoTensor::metric(3), SymmetricTwoTensor::metric(4)), DomainError);
}

TEST(Bianchi, SingleEntryOperatorHasDefect) {
  Matrix m = Matrix::Zero(6, 6);
  m(biv_index(4, 0, 1), biv_index(4, 2, 3)) = 1.0;
  m(biv_index(4, 2, 3), biv_index(4, 0, 1)) = 1.0;
  const CurvatureOperator s(4, m);
  EXPECT_GT(bianchi_defect(s), 0.1);
  const CurvatureOperator p = bianchi_project(s);
  EXPECT_LE(bianchi_defect(p), 1e-12);
  // The projection removes the Λ⁴ component e0123, which has weight 1/3 here.
  EXPECT_NEAR(p.matrix()(biv_index(4, 0, 1), biv_index(4, 2, 3)), 2.0 / 3.0, 1e-12);
}

TEST(Bianchi, PureFourFormProjectsToZero) {
  Matrix m = Matrix::Zero(6, 6);
  auto set = [&](int i, int j, int k, int l, double v) {
    m(biv_index(4, i, j), biv_index(4, k, l)) = v;
    m(biv_index(4, k, l), biv_index(4, i, j)) = v;
  };
  set(0, 1, 2, 3, 1.0);
  set(0, 2, 1, 3, -1.0);
  set(0, 3, 1, 2, 1.0);
  const CurvatureOperator s(4, m);
  EXPECT_GT(bianchi_defect(s), 1.0);
  EXPECT_LE(bianchi_project(s).norm(), 1e-12);
}

TEST(Bianchi, DefectAgreesWithDenseCyclicSum) {
  Engine rng = stream(8, 0);
  // In dimension 3 every symmetric operator already satisfies Bianchi.
  for (int n = 4; n <= 6; ++n) {
    const int N = bivector_count(n);
    Matrix s = gaussian_matrix(N, N, rng);
    s = s + s.transpose();
    const CurvatureOperator raw(n, s);
    EXPECT_GT(oracle::max_bianchi(oracle::from_operator(n, raw.matrix())), 1e-3);
    const CurvatureOperator p = bianchi_project(raw);
    EXPECT_LE(oracle::max_bianchi(oracle::from_operator(n, p.matrix())), 1e-12 * (1 + s.norm()));
  }
}

TEST(Bianchi, ProjectionIsIdempotentOrthogonalAndFixesKN) {
  Engine rng = stream(9, 0);
  for (int n = 3; n <= 6; ++n) {
    const int N = bivector_count(n);
    Matrix s = gaussian_matrix(N, N, rng);
    const CurvatureOperator raw(n, s + s.transpose());
    const CurvatureOperator p = bianchi_project(raw);
    EXPECT_LE((bianchi_project(p) - p).norm(), 1e-12 * (1 + p.norm()));
    // The removed part is orthogonal to every algebraic curvature operator.
    const CurvatureOperator q = random_curvature_operator(n, rng);
    EXPECT_NEAR(((raw - p).matrix().cwiseProduct(q.matrix())).sum(), 0.0, 1e-10 * (1 + s.norm()) * (1 + q.norm()));
    const CurvatureOperator hk = kulkarni_nomizu(random_symmetric(n, rng), random_symmetric(n, rng));
    EXPECT_LE((bianchi_project(hk) - hk).norm(), 1e-12 * (1 + hk.norm()));
  }
}

TEST(Ricci, SpaceFormAndDenseOracle) {
  for (int n = 2; n <= 6; ++n) {
    const CurvatureOperator r = space_form(n, -0.7);
    EXPECT_LE((ricci(r).matrix() - (n - 1) * -0.7 * Matrix::Identity(n, n)).norm(), 1e-12);
    EXPECT_NEAR(scalar(r), n * (n - 1) * -0.7, 1e-12);
  }
  for (int n = 3; n <= 6; ++n) {
    const CurvatureOperator r = random_op(n, static_cast<std::uint64_t>(n));
    const Matrix want = oracle::ricci(oracle::from_operator(n, r.matrix()));
    EXPECT_LE((ricci(r).matrix() - want).norm(), 1e-12 * (1 + r.norm()));
    EXPECT_NEAR(scalar(r), want.trace(), 1e-10 * (1 + r.norm()));
  }
}

TEST(Sectional, Examples) {
  const int n = 5;
  Engine rng = stream(10, 0);
  const Matrix q = haar_orthogonal(n, rng);
  EXPECT_NEAR(sectional(space_form(n, 2.5), q.col(0), q.col(1)), 2.5, 1e-12);

  const CurvatureOperator st = product(space_form(3, 1.0), flat(2));
  EXPECT_NEAR(sectional(st, Vector::Unit(5, 1), Vector::Unit(5, 4)), 0.0, 1e-15);

  const CurvatureOperator cp = fubini_study_cp(3);
  // J e_{2k} = e_{2k+1}: (e_0, e_1) is a holomorphic plane.
  EXPECT_NEAR(sectional(cp, Vector::Unit(6, 0), Vector::Unit(6, 1)), 4.0, 1e-12);
  EXPECT_NEAR(sectional(cp, Vector::Unit(6, 0), Vector::Unit(6, 2)), 1.0, 1e-12);
}

TEST(Sectional, Errors) {
  const CurvatureOperator r = space_form(3, 1.0);
  EXPECT_THROW(sectional(r, Vector::Unit(3, 0), Vector::Unit(3, 0)), DegeneratePlaneError);
  EXPECT_THROW(sectional(r, Vector::Unit(3, 0), 2.0 * Vector::Unit(3, 1)), DomainError);
  EXPECT_THROW(sectional(r, Vector::Unit(4, 0), Vector::Unit(4, 1)), DomainError);
}

TEST(Spectrum, SortedAndSumsToTrace) {
  for (int n = 3; n <= 6; ++n) {
    const CurvatureOperator r = random_op(n, 100 + static_cast<std::uint64_t>(n));
    const Spectrum s = spectrum(r);
    EXPECT_TRUE(std::is_sorted(s.eigenvalues.begin(), s.eigenvalues.end()));
    EXPECT_NEAR(s.sum(), r.trace(), 1e-9 * (1 + std::abs(r.trace())));
  }
  const Spectrum s4 = spectrum(space_form(4, 1.0));
  ASSERT_EQ(s4.eigenvalues.size(), 6u);
  for (double v : s4.eigenvalues) EXPECT_NEAR(v, 1.0, 1e-12);
}

TEST(Positivity, KPositiveExamples) {
  EXPECT_TRUE(k_positive(space_form(5, 1.0), 1));
  EXPECT_TRUE(k_positive(space_form(5, 1.0), 10));
  const CurvatureOperator st = product(space_form(2, 1.0), flat(2));
  EXPECT_FALSE(k_positive(st, 1));
  EXPECT_TRUE(k_nonneg(st, 6));
  Vector d = Vector::Constant(6, 3.0);
  d(0) = -1.0;
  const CurvatureOperator r(4, d.asDiagonal().toDenseMatrix());
  EXPECT_TRUE(k_positive(r, 2));
  EXPECT_FALSE(k_positive(r, 1));
  EXPECT_THROW(k_positive(r, 0), DomainError);
  EXPECT_THROW(k_positive(r, 7), DomainError);
}

TEST(Positivity, KPositiveMatchesSubsetEnumeration) {
  for (int n = 3; n <= 4; ++n)
    for (std::uint64_t s = 0; s < 20; ++s) {
      const CurvatureOperator r = random_op(n, 200 + s);
      const auto ev = spectrum(r).eigenvalues;
      for (int k = 1; k <= bivector_count(n); ++k)
        EXPECT_EQ(k_positive(r, k, 0.0), oracle::min_subset_sum(ev, k) > 0.0);
    }
}

TEST(Sigma, Examples) {
  const SigmaInvariants s3 = sigma_invariants(space_form(3, 1.0));
  EXPECT_NEAR(s3.sigma1, 3.0, 1e-12);
  EXPECT_NEAR(s3.sigma2, 3.0, 1e-12);
  EXPECT_NEAR(s3.norm_sq, 3.0, 1e-12);
  EXPECT_TRUE(s3.gamma2);
  const SigmaInvariants st = sigma_invariants(product(space_form(2, 1.0), flat(2)));
  EXPECT_NEAR(st.sigma2, 0.0, 1e-12);
  EXPECT_FALSE(st.gamma2);
}

TEST(Sigma, NewtonIdentityOnRandomOperators) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const CurvatureOperator r = random_op(3 + static_cast<int>(s % 3), 300 + s);
    const SigmaInvariants si = sigma_invariants(r);
    const double scal = scalar(r);
    EXPECT_NEAR(8 * si.sigma2, scal * scal - 4 * si.norm_sq, 1e-9 * (1 + scal * scal));
    EXPECT_NEAR(si.norm_sq, r.matrix().squaredNorm(), 1e-9 * (1 + si.norm_sq));
  }
}

TEST(Newton, SpaceFormAndRiemOneRelation) {
  for (int n = 3; n <= 6; ++n) {
    const double k = 1.7;
    const CurvatureOperator t1 = newton_t1(space_form(n, k));
    EXPECT_TRUE(t1.matrix().isApprox((n * (n - 1) * k / 2 - k) * Matrix::Identity(t1.bivector_dim(), t1.bivector_dim())));
  }
  const CurvatureOperator r = random_op(5, 9);
  EXPECT_LE((newton_t1(r) - 0.5 * riem_t(r, 1.0)).norm(), 1e-12 * (1 + r.norm()));
}

TEST(Newton, Gamma2ImpliesPositiveNewtonTransform) {
  int tested = 0;
  for (std::uint64_t s = 0; s < 500; ++s) {
    Engine rng = stream(11, s);
    const int n = 4 + static_cast<int>(s % 2);
    const CurvatureOperator r = random_mixed_operator(n, rng);
    const SigmaInvariants si = sigma_invariants(r);
    if (!(si.sigma1 > 0 && si.sigma2 > 1e-9)) continue;
    ++tested;
    EXPECT_GT(spectrum(newton_t1(r)).min(), 0.0) << s;
  }
  EXPECT_GT(tested, 100);
}

TEST(Random, StreamsAreReproducibleAndIndependentOfOrder) {
  Engine a = stream(5, 3);
  Engine b = stream(5, 3);
  EXPECT_EQ(a(), b());
  EXPECT_NE(stream(5, 3)(), stream(5, 4)());
  EXPECT_NE(stream(5, 3)(), stream(6, 3)());
}

TEST(Random, HaarFramesAreOrthogonal) {
  for (int n = 2; n <= 7; ++n) {
    Engine rng = stream(12, static_cast<std::uint64_t>(n));
    const Matrix q = haar_orthogonal(n, rng);
    EXPECT_TRUE((q.transpose() * q).isIdentity(1e-12));
  }
}
