// curvlab: command-line front end.
//
//   curvlab riem <model>                 Scal, lambda_max, Riem and small riem of a model
//   curvlab spectrum <model>             eigenvalues of the curvature operator
//   curvlab cp <model> --p P             sampled minimum of the intermediate curvature C_p
//   curvlab bound <expr>                 rational bounds on Riem(M) for a construction
//   curvlab sweep <family> --n N ...     Riem along a Berger family, as CSV
//   curvlab verify <suite>               self-check suites
//
// Exit codes: 0 success, 1 verification failure, 2 usage or parse error.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "curvlab/curvlab.hpp"
#include "curvlab/io.hpp"
#include "curvlab/verify.hpp"

namespace {

using curvlab::Json;

enum class Format { Json, Csv, Text };

struct Globals {
  std::string out = "json";
  std::uint64_t seed = curvlab::kDefaultSeed;
  double tol = -1.0;

  Format format() const {
    if (out == "csv") return Format::Csv;
    if (out == "text") return Format::Text;
    return Format::Json;
  }
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string fmt(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return fmt(v.get<double>());
  if (v.is_array()) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + scalar_text(v[i]);
    return s;
  }
  return v.dump();
}

/// Emits a flat record in the requested format.
void emit(const Json& record, Format f) {
  switch (f) {
    case Format::Json:
      std::cout << record.dump(2) << "\n";
      break;
    case Format::Csv: {
      std::string head;
      std::string row;
      bool first = true;
      for (const auto& [k, v] : record.items()) {
        head += (first ? "" : ",") + k;
        row += (first ? "" : ",") + scalar_text(v);
        first = false;
      }
      std::cout << head << "\n" << row << "\n";
      break;
    }
    case Format::Text:
      for (const auto& [k, v] : record.items()) std::cout << k << ": " << scalar_text(v) << "\n";
      break;
  }
}

curvlab::ModelSpec read_model(const std::string& text) {
  try {
    return curvlab::read_model(text);
  } catch (const curvlab::DomainError& e) {
    throw UsageError(e.what());
  }
}

int cmd_riem(const std::string& model_text, const Globals& g) {
  const curvlab::ModelSpec spec = read_model(model_text);
  Json rec;
  rec["model"] = model_text;
  rec["n"] = spec.dim();
  if (spec.is_family()) {
    rec["Scal"] = nullptr;
    rec["lambda_max"] = nullptr;
    rec["riem"] = curvlab::number(curvlab::family_riem(spec));
    rec["riem_small"] = nullptr;
  } else {
    const curvlab::CurvatureOperator r = curvlab::build(spec);
    rec["Scal"] = curvlab::number(curvlab::scalar(r));
    rec["lambda_max"] = curvlab::number(curvlab::spectrum(r).max());
    rec["riem"] = curvlab::number(curvlab::riem_pointwise(r, g.tol));
    rec["riem_small"] = curvlab::number(curvlab::riem_small_pointwise(r, g.tol));
  }
  emit(rec, g.format());
  return 0;
}

int cmd_spectrum(const std::string& model_text, const Globals& g) {
  const curvlab::CurvatureOperator r = curvlab::build(read_model(model_text));
  Json ev = Json::array();
  for (double v : curvlab::spectrum(r).eigenvalues) ev.push_back(curvlab::number(v));
  emit({{"model", model_text}, {"n", r.dim()}, {"eigenvalues", ev}}, g.format());
  return 0;
}

int cmd_cp(const std::string& model_text, int p, int samples, const Globals& g) {
  const curvlab::CurvatureOperator r = curvlab::build(read_model(model_text));
  const curvlab::SampledMinimum m = curvlab::c_p_min(r, p, samples, g.seed);
  emit({{"model", model_text},
        {"n", r.dim()},
        {"p", p},
        {"c_p_min", curvlab::number(m.value)},
        {"coordinate_frames", m.coordinate_frames},
        {"samples", m.samples},
        {"seed", m.seed}},
       g.format());
  return 0;
}

int cmd_bound(const std::string& expr, const Globals& g) {
  const curvlab::engine::BoundsEngine engine;
  curvlab::engine::RiemInterval r;
  try {
    r = engine.infer(expr);
  } catch (const curvlab::DslError& e) {
    throw UsageError(std::string("parse error ") + e.what());
  } catch (const curvlab::FactConflictError& e) {
    throw UsageError(e.what());
  }
  if (g.format() == Format::Text) {
    std::cout << curvlab::engine::explain(r);
  } else if (g.format() == Format::Csv) {
    emit({{"expr", r.expr},
          {"dim", r.dim},
          {"lower", curvlab::engine::to_string(r.lower.value)},
          {"lower_open", r.lower.open},
          {"upper", curvlab::engine::to_string(r.upper.value)},
          {"upper_open", r.upper.open},
          {"exact", r.exact()}},
         Format::Csv);
  } else {
    Json j = curvlab::engine::to_json(r);
    j["explain"] = curvlab::engine::explain(r);
    std::cout << j.dump(2) << "\n";
  }
  return 0;
}

int cmd_sweep(const std::string& family, int n, double r_min, double r_max, int steps, const Globals& g) {
  curvlab::ModelSpec spec;
  if (family == "berger-cp" || family == "cp") {
    spec.kind = curvlab::ModelSpec::Kind::BergerCPFamily;
  } else if (family == "berger-ch" || family == "ch") {
    spec.kind = curvlab::ModelSpec::Kind::BergerCHFamily;
  } else {
    throw UsageError("unknown family '" + family + "' (expected berger-cp or berger-ch)");
  }
  if (steps < 2) throw UsageError("sweep needs --steps >= 2");
  if (!(r_min > 0 && r_min < r_max)) throw UsageError("sweep needs 0 < r-min < r-max");
  if (spec.kind == curvlab::ModelSpec::Kind::BergerCPFamily && !(r_max < std::numbers::pi / 2))
    throw UsageError("berger-cp radius must stay below pi/2");
  spec.n = n;
  Json rows = Json::array();
  std::ostringstream csv;
  csv << "r,riem\n";
  for (int i = 0; i < steps; ++i) {
    spec.r = r_min + (r_max - r_min) * i / (steps - 1);
    double v = 0.0;
    try {
      v = curvlab::family_riem(spec);
    } catch (const curvlab::DomainError& e) {
      throw UsageError(e.what());
    }
    csv << fmt(spec.r) << "," << fmt(v) << "\n";
    rows.push_back({{"r", curvlab::number(spec.r)}, {"riem", curvlab::number(v)}});
  }
  if (g.format() == Format::Json) std::cout << rows.dump(2) << "\n";
  else std::cout << csv.str();
  return 0;
}

int cmd_verify(const std::string& suite, const Globals& g) {
  const curvlab::verify::SuiteReport rep = curvlab::verify::run(suite, g.seed);
  if (g.format() == Format::Json) {
    Json checks = Json::array();
    for (const auto& c : rep.checks) {
      Json cj = {{"name", c.name}, {"cases", c.cases}, {"failures", c.failures}};
      if (c.failures) cj["first_failure"] = c.first_failure;
      checks.push_back(std::move(cj));
    }
    std::cout << Json{{"suite", rep.suite},
                      {"seed", g.seed},
                      {"cases", rep.cases()},
                      {"failures", rep.failures()},
                      {"passed", rep.ok()},
                      {"checks", checks}}
                     .dump(2)
              << "\n";
  } else {
    for (const auto& c : rep.checks) {
      std::cout << (c.failures ? "FAIL " : "ok   ") << c.name << " (" << c.cases - c.failures << "/" << c.cases
                << ")";
      if (c.failures) std::cout << " first failure: " << c.first_failure;
      std::cout << "\n";
    }
    std::cout << rep.suite << ": " << rep.cases() - rep.failures() << " passed, " << rep.failures()
              << " failed (seed " << g.seed << ")\n";
  }
  return rep.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral scalar curvature toolkit"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  Globals g;
  app.add_option("--out", g.out, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--seed", g.seed, "Random seed")->envname("CURVLAB_SEED");
  app.add_option("--tol", g.tol, "Positivity tolerance (default 1e-9*(1+norm))")->check(CLI::NonNegativeNumber);

  std::string model;
  auto* riem = app.add_subcommand("riem", "Riem of a model");
  riem->add_option("model", model, "Model shorthand (cp:3, product:sphere4,torus1) or JSON")->required();

  auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues of the curvature operator");
  spectrum->add_option("model", model, "Model")->required();

  int p = 1;
  int samples = 10000;
  auto* cp = app.add_subcommand("cp", "Sampled minimum of C_p");
  cp->add_option("model", model, "Model")->required();
  cp->add_option("--p", p, "Plane dimension")->required();
  cp->add_option("--samples", samples, "Random frames")->check(CLI::PositiveNumber);

  std::string expr;
  auto* bound = app.add_subcommand("bound", "Bounds on Riem(M) for a construction expression");
  bound->add_option("expr", expr, "Expression, e.g. \"connsum(rp(4), rp(4))\"")->required();

  std::string family;
  int n = 2;
  double r_min = 0.01;
  double r_max = 1.5;
  int steps = 50;
  auto* sweep = app.add_subcommand("sweep", "Riem along a Berger family (CSV r,riem)");
  sweep->add_option("family", family, "berger-cp or berger-ch")->required();
  sweep->add_option("--n", n, "Complex dimension");
  sweep->add_option("--r-min", r_min, "Smallest radius");
  sweep->add_option("--r-max", r_max, "Largest radius");
  sweep->add_option("--steps", steps, "Grid points");

  std::string suite;
  auto* verify = app.add_subcommand("verify", "Run self-check suites");
  verify->add_option("suite", suite, "core, models, weitzenbock, engine or all")
      ->required()
      ->check(CLI::IsMember(curvlab::verify::suite_names()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  if (sweep->parsed() && g.out == "json" && !app.get_option("--out")->count()) g.out = "csv";

  try {
    if (riem->parsed()) return cmd_riem(model, g);
    if (spectrum->parsed()) return cmd_spectrum(model, g);
    if (cp->parsed()) return cmd_cp(model, p, samples, g);
    if (bound->parsed()) return cmd_bound(expr, g);
    if (sweep->parsed()) return cmd_sweep(family, n, r_min, r_max, steps, g);
    if (verify->parsed()) return cmd_verify(suite, g);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const curvlab::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
