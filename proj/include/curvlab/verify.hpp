#pragma once

// Self-check suites behind `curvlab verify`. Each check runs a fixed number
// of deterministic random cases (streams keyed by the seed) and counts
// failures.

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "curvlab/engine/bounds.hpp"
#include "curvlab/model_spec.hpp"
#include "curvlab/weitzenbock.hpp"

namespace curvlab::verify {

struct CheckResult {
  std::string name;
  int cases = 0;
  int failures = 0;
  std::string first_failure;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;

  int cases() const {
    int c = 0;
    for (const auto& r : checks) c += r.cases;
    return c;
  }
  int failures() const {
    int f = 0;
    for (const auto& r : checks) f += r.failures;
    return f;
  }
  bool ok() const { return failures() == 0; }
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"core", "models", "weitzenbock", "engine", "all"};
  return names;
}

namespace detail {

class Recorder {
 public:
  explicit Recorder(SuiteReport& report) : report_(report) {}

  /// Runs body(expect) where expect(ok, what) records one case.
  void check(const std::string& name, const std::function<void(const std::function<void(bool, const std::string&)>&)>& body) {
    CheckResult r;
    r.name = name;
    body([&](bool ok, const std::string& what) {
      ++r.cases;
      if (!ok) {
        if (r.failures == 0) r.first_failure = what;
        ++r.failures;
      }
    });
    report_.checks.push_back(std::move(r));
  }

 private:
  SuiteReport& report_;
};

inline bool close(double a, double b, double tol) { return std::abs(a - b) <= tol * (1.0 + std::abs(b)); }

inline std::uint64_t salt(std::uint64_t seed, std::uint64_t check) { return splitmix64(seed + 0x1000 * check); }

}  // namespace detail

inline SuiteReport run_core(std::uint64_t seed, int samples = 200) {
  SuiteReport rep{"core", {}};
  detail::Recorder rec(rep);
  const std::vector<int> dims = {3, 4, 5};

  auto each = [&](std::uint64_t check, const std::function<void(const CurvatureOperator&, Engine&, int)>& f) {
    for (int n : dims)
      for (int s = 0; s < samples; ++s) {
        Engine rng = stream(detail::salt(seed, check), static_cast<std::uint64_t>(n * 100000 + s));
        f(random_mixed_operator(n, rng), rng, n);
      }
  };

  rec.check("bianchi projection is idempotent and lands in the curvature space", [&](auto expect) {
    each(1, [&](const CurvatureOperator& r, Engine&, int n) {
      const double scale = 1.0 + r.norm();
      expect(bianchi_defect(r) <= 1e-9 * scale && (bianchi_project(r) - r).norm() <= 1e-9 * scale,
             "n=" + std::to_string(n));
    });
  });
  rec.check("trace identity: tr Ric = Scal = 2 tr R, eigenvalue sum = trace", [&](auto expect) {
    each(2, [&](const CurvatureOperator& r, Engine&, int n) {
      const double scal = scalar(r);
      expect(detail::close(ricci(r).trace(), scal, 1e-9) && detail::close(spectrum(r).sum(), r.trace(), 1e-9),
             "n=" + std::to_string(n));
    });
  });
  rec.check("rescale invariance of Riem", [&](auto expect) {
    each(3, [&](const CurvatureOperator& r, Engine& rng, int n) {
      std::uniform_real_distribution<double> c(0.01, 100.0);
      expect(detail::close(riem_pointwise(c(rng) * r), riem_pointwise(r), 1e-9), "n=" + std::to_string(n));
    });
  });
  rec.check("descent: Riem_s > 0 implies Riem_t > 0 for t < s", [&](auto expect) {
    each(4, [&](const CurvatureOperator& r, Engine& rng, int n) {
      if (scalar(r) <= 0) return;
      const double N = bivector_count(n);
      std::uniform_real_distribution<double> u(0.0, N);
      double t = u(rng);
      double s = u(rng);
      if (t > s) std::swap(t, s);
      if (positive_definite(riem_t(r, s).matrix(), 0.0))
        expect(positive_definite(riem_t(r, t).matrix(), 0.0), "n=" + std::to_string(n));
    });
  });
  rec.check("Ricci implication above C(n-1,2)", [&](auto expect) {
    each(5, [&](const CurvatureOperator& r, Engine&, int n) {
      if (riem_pointwise(r) > (n - 1) * (n - 2) / 2.0)
        expect(symmetric_spectrum(ricci(r).matrix()).min() > 0, "n=" + std::to_string(n));
    });
  });
  rec.check("Gamma_2 implies Riem > 1 and t_1 > 0", [&](auto expect) {
    each(6, [&](const CurvatureOperator& r, Engine&, int n) {
      const SigmaInvariants s = sigma_invariants(r);
      const double tol = default_tolerance(r.norm());
      if (s.sigma1 > tol && s.sigma2 > tol * (1.0 + s.norm_sq))
        expect(riem_pointwise(r) > 1.0 && spectrum(newton_t1(r)).min() > 0, "n=" + std::to_string(n));
    });
  });
  rec.check("C_p = Scal/2 - s_p/2 on random frames", [&](auto expect) {
    each(7, [&](const CurvatureOperator& r, Engine& rng, int n) {
      const PlaneFrame f(haar_orthogonal(n, rng), 1 + static_cast<int>(rng() % static_cast<unsigned>(n - 2)));
      expect(detail::close(c_p(r, f), 0.5 * scalar(r) - 0.5 * p_curvature(r, f), 1e-9), "n=" + std::to_string(n));
    });
  });
  rec.check("t-positivity of Riem_t iff (N-t)-positivity of R", [&](auto expect) {
    each(8, [&](const CurvatureOperator& r, Engine&, int n) {
      if (n < 4) return;
      const int N = bivector_count(n);
      for (int t = 1; t < N; ++t)
        expect(k_positive(riem_t(r, t), t, 0.0) == k_positive(r, N - t, 0.0),
               "n=" + std::to_string(n) + " t=" + std::to_string(t));
    });
  });
  return rep;
}

inline SuiteReport run_models(std::uint64_t seed) {
  SuiteReport rep{"models", {}};
  detail::Recorder rec(rep);
  (void)seed;  // the model checks are deterministic

  rec.check("CP^n: Scal = 4n(n+1), lambda_max = 2n+2, Riem = n", [&](auto expect) {
    for (int n = 1; n <= 5; ++n) {
      const CurvatureOperator r = fubini_study_cp(n);
      expect(detail::close(scalar(r), 4.0 * n * (n + 1), 1e-9) && detail::close(spectrum(r).max(), 2.0 * n + 2, 1e-9) &&
                 detail::close(riem_pointwise(r), n, 1e-9) && bianchi_defect(r) < 1e-9,
             "n=" + std::to_string(n));
    }
  });
  rec.check("HP^n: Scal = 16n(n+2), lambda_max = 4n, Riem = 2n+4", [&](auto expect) {
    for (int n = 1; n <= 3; ++n) {
      const CurvatureOperator r = fubini_study_hp(n);
      expect(detail::close(scalar(r), 16.0 * n * (n + 2), 1e-9) && detail::close(spectrum(r).max(), 4.0 * n, 1e-9) &&
                 detail::close(riem_pointwise(r), 2.0 * n + 4, 1e-9) && bianchi_defect(r) < 1e-9,
             "n=" + std::to_string(n));
    }
  });
  rec.check("space forms and sphere x torus products", [&](auto expect) {
    for (int n = 3; n <= 8; ++n) {
      expect(detail::close(riem_pointwise(space_form(n, 1.0)), n * (n - 1) / 2.0, 1e-9), "S^" + std::to_string(n));
      for (int p = 1; p <= n - 2; ++p) {
        const double want = (n - p) * (n - p - 1) / 2.0;
        expect(detail::close(riem_pointwise(product(space_form(n - p, 1.0), flat(p))), want, 1e-9),
               "S^" + std::to_string(n - p) + "xT^" + std::to_string(p));
      }
    }
  });
  rec.check("sphere x hyperbolic: Riem = (n-1)(n-2p)/2", [&](auto expect) {
    for (int n = 5; n <= 8; ++n)
      for (int p = 2; 2 * p < n; ++p) {
        const CurvatureOperator r = product(space_form(n - p, 1.0), space_form(p, -1.0));
        expect(detail::close(riem_pointwise(r), (n - 1) * (n - 2 * p) / 2.0, 1e-9),
               "n=" + std::to_string(n) + " p=" + std::to_string(p));
      }
  });
  rec.check("cylinder threshold: Riem_t > 0 iff t < (q-1)(q-2)/2", [&](auto expect) {
    for (int n = 3; n <= 8; ++n)
      for (int q = 3; q <= n; ++q) {
        const CurvatureOperator r = cylinder(q, n);
        const double t0 = (q - 1) * (q - 2) / 2.0;
        for (double t : {0.5 * t0, 0.999 * t0, 1.001 * t0, 2.0 * t0})
          expect(positive_definite(riem_t(r, t).matrix()) == (t < t0),
                 "q=" + std::to_string(q) + " n=" + std::to_string(n));
      }
  });
  rec.check("Berger families: limits and the CH zero", [&](auto expect) {
    expect(std::abs(berger_cp_riem(2, 1e-4) - 3.0) < 1e-6, "cp r->0");
    expect(std::abs(berger_cp_riem(2, std::numbers::pi / 2 - 1e-4) - 1.0) < 1e-6, "cp r->pi/2");
    expect(std::abs(berger_ch_riem(2, std::atanh(std::sqrt(0.75)))) < 1e-9, "ch zero");
  });
  return rep;
}

inline SuiteReport run_weitzenbock(std::uint64_t seed, int triples = 100) {
  SuiteReport rep{"weitzenbock", {}};
  detail::Recorder rec(rep);

  rec.check("lift(1, p) = Id", [&](auto expect) {
    for (int n = 1; n <= 6; ++n)
      for (int p = 0; p <= std::min(n, 3); ++p) {
        const PFormOperator w = lift(DoubleForm(n, 1.0), p);
        expect(w.matrix().isIdentity(1e-12), "n=" + std::to_string(n) + " p=" + std::to_string(p));
      }
  });
  rec.check("W_1 = Ric", [&](auto expect) {
    for (int n = 3; n <= 6; ++n) {
      Engine rng = stream(detail::salt(seed, 11), static_cast<std::uint64_t>(n));
      const CurvatureOperator r = random_curvature_operator(n, rng);
      expect((weitzenbock(r, 1).matrix() - ricci(r).matrix()).norm() <= 1e-9 * (1 + r.norm()), "n=" + std::to_string(n));
    }
  });
  rec.check("space form: W_p = p(n-p) kappa Id", [&](auto expect) {
    for (int n : {4, 5})
      for (double kappa : {1.0, -0.5}) {
        const PFormOperator w = weitzenbock(space_form(n, kappa), 2);
        expect((w.matrix() - 2.0 * (n - 2) * kappa * Matrix::Identity(w.matrix().rows(), w.matrix().cols())).norm() < 1e-9,
               "n=" + std::to_string(n));
      }
  });
  rec.check("Weitzenboeck identity residual", [&](auto expect) {
    for (int s = 0; s < triples; ++s) {
      Engine rng = stream(detail::salt(seed, 12), static_cast<std::uint64_t>(s));
      const int n = 4 + static_cast<int>(rng() % 3);
      const int p = 2 + static_cast<int>(rng() % static_cast<unsigned>(std::min(n - 2, kMaxLiftDegree - 1)));
      std::uniform_real_distribution<double> ut(0.1, bivector_count(n));
      const double t = ut(rng);
      const CurvatureOperator r = random_mixed_operator(n, rng);
      const double scale = (1.0 + t) * (1.0 + r.norm());
      expect(weitzenbock_identity_residual(r, t, p) <= 1e-9 * scale, "case " + std::to_string(s));
    }
  });
  rec.check("vanishing witness: Riem above N - p(n-p)/2 gives W_k > 0", [&](auto expect) {
    int hits = 0;
    for (int s = 0; s < 20000 && hits < 100; ++s) {
      Engine rng = stream(detail::salt(seed, 13), static_cast<std::uint64_t>(s));
      const int n = 5 + static_cast<int>(rng() % 2);
      const CurvatureOperator r = random_mixed_operator(n, rng);
      if (scalar(r) <= 0) continue;
      for (int p = 2; p <= n - 2; ++p) {
        const VanishingWitness w = vanishing_witness(r, p);
        if (!w.hypothesis) continue;
        ++hits;
        expect(w.holds(), "sample " + std::to_string(s) + " p=" + std::to_string(p));
      }
    }
  });
  rec.check("Hodge symmetry of W_p on models", [&](auto expect) {
    const std::vector<CurvatureOperator> models = {fubini_study_cp(2), product(space_form(3, 1.0), space_form(2, -1.0)),
                                                   cylinder(4, 6), product(space_form(2, 1.0), flat(3))};
    for (const CurvatureOperator& r : models) {
      const int n = r.dim();
      for (int p = std::max(1, n - kMaxLiftDegree); 2 * p <= n; ++p) {
        const auto a = weitzenbock(r, p).spectrum().eigenvalues;
        const auto b = weitzenbock(r, n - p).spectrum().eigenvalues;
        bool ok = a.size() == b.size();
        for (std::size_t i = 0; ok && i < a.size(); ++i) ok = std::abs(a[i] - b[i]) < 1e-9;
        expect(ok, "n=" + std::to_string(n) + " p=" + std::to_string(p));
      }
    }
  });
  return rep;
}

inline SuiteReport run_engine(std::uint64_t seed) {
  SuiteReport rep{"engine", {}};
  detail::Recorder rec(rep);
  (void)seed;
  const engine::BoundsEngine eng;
  using engine::Rational;
  auto exact = [&](const std::string& expr, Rational want) {
    const engine::RiemInterval r = eng.infer(expr);
    return r.exact() && r.lower.value == want;
  };
  auto c2 = [](int k) { return engine::choose2(k); };
  auto sphere = [](int n) { return "sphere(" + std::to_string(n) + ")"; };

  rec.check("spheres and projective spaces", [&](auto expect) {
    for (int n = 2; n <= 10; ++n) {
      expect(exact(sphere(n), c2(n)), sphere(n));
      expect(exact("rp(" + std::to_string(n) + ")", c2(n)), "rp");
    }
  });
  rec.check("connected sums of projective spaces", [&](auto expect) {
    for (int n = 3; n <= 8; ++n) {
      const std::string rp = "rp(" + std::to_string(n) + ")";
      std::string e = rp;
      for (int r = 2; r <= 4; ++r) {
        e = "connsum(" + e + ", " + rp + ")";
        expect(exact(e, c2(n - 1)), e);
      }
    }
  });
  rec.check("S^(n-1) x S^1 and its connected sums", [&](auto expect) {
    for (int n = 3; n <= 8; ++n) {
      const std::string f = "product(" + sphere(n - 1) + ", circle)";
      expect(exact(f, c2(n - 1)), f);
      expect(exact("connsum(" + f + ", " + f + ")", c2(n - 1)), "connsum " + f);
    }
  });
  rec.check("S^(n-p) x T^p for n <= 7", [&](auto expect) {
    for (int n = 3; n <= 7; ++n)
      for (int p = 1; p <= n - 2; ++p) {
        const std::string e = "product(" + sphere(n - p) + ", torus(" + std::to_string(p) + "))";
        expect(exact(e, c2(n - p)), e);
      }
  });
  rec.check("intervals avoid the gap (N-2, N)", [&](auto expect) {
    const std::vector<std::string> exprs = {"cp(2)", "cp(3)", "hp(2)", "product(sphere(3), sphere(3))",
                                            "surgery(sphere(6), 4)", "bundle(cp(2), 3)",
                                            "product(sphere(5), circle)", "connsum(cp(2), cp(2))"};
    for (const std::string& s : exprs) {
      const engine::RiemInterval r = eng.infer(s);
      const Rational N = r.max_value();
      auto inside = [&](const Rational& v) { return v > N - 2 && v < N; };
      expect(!inside(r.lower.value) && !inside(r.upper.value) && r.lower.value <= r.upper.value, s);
    }
  });
  return rep;
}

inline SuiteReport run(const std::string& suite, std::uint64_t seed) {
  if (suite == "core") return run_core(seed);
  if (suite == "models") return run_models(seed);
  if (suite == "weitzenbock") return run_weitzenbock(seed);
  if (suite == "engine") return run_engine(seed);
  if (suite == "all") {
    SuiteReport all{"all", {}};
    for (const char* s : {"core", "models", "weitzenbock", "engine"}) {
      SuiteReport r = run(s, seed);
      for (CheckResult& c : r.checks) {
        c.name = r.suite + ": " + c.name;
        all.checks.push_back(std::move(c));
      }
    }
    return all;
  }
  throw DomainError("unknown suite '" + suite + "'");
}

}  // namespace curvlab::verify
