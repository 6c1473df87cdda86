#pragma once

// JSON serialization (nlohmann/json) for operators, model specs and engine
// results.

#include <cmath>
#include <cstdio>
#include <string>

#include "json.hpp"

#include "curvlab/engine/bounds.hpp"
#include "curvlab/model_spec.hpp"
#include "curvlab/weitzenbock.hpp"

namespace curvlab {

using Json = nlohmann::ordered_json;

/// x rounded to 12 significant digits.
inline double sig12(double x) {
  if (!std::isfinite(x)) return x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::stod(buf);
}

/// Number with 12 significant digits; infinities become the strings "inf"/"-inf".
inline Json number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return sig12(x);
}

inline Json matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(number(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json to_json(const CurvatureOperator& r) { return {{"n", r.dim()}, {"matrix", matrix_json(r.matrix())}}; }

inline Json to_json(const PFormOperator& w) {
  return {{"n", w.dim()}, {"p", w.degree()}, {"matrix", matrix_json(w.matrix())}};
}

inline Json to_json(const ModelSpec& s) {
  Json params = Json::object();
  switch (s.kind) {
    case ModelSpec::Kind::SpaceForm:
      params = {{"n", s.n}, {"kappa", s.kappa}};
      break;
    case ModelSpec::Kind::FubiniStudyCP:
    case ModelSpec::Kind::FubiniStudyHP:
      params = {{"n", s.n}};
      break;
    case ModelSpec::Kind::Cylinder:
      params = {{"q", s.q}, {"n", s.n}};
      break;
    case ModelSpec::Kind::BergerCPFamily:
    case ModelSpec::Kind::BergerCHFamily:
      params = {{"n", s.n}, {"r", s.r}};
      break;
    case ModelSpec::Kind::Product: {
      Json fs = Json::array();
      for (const ModelSpec& f : s.factors) fs.push_back(to_json(f));
      params = {{"factors", fs}};
      break;
    }
  }
  return {{"kind", kind_name(s.kind)}, {"params", params}};
}

inline ModelSpec model_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind")) throw DomainError("model JSON needs a \"kind\" field");
  const auto kind = kind_from_name(j.at("kind").get<std::string>());
  if (!kind) throw DomainError("unknown model kind " + j.at("kind").dump());
  const Json params = j.value("params", Json::object());
  ModelSpec s;
  s.kind = *kind;
  try {
    switch (s.kind) {
      case ModelSpec::Kind::SpaceForm:
        s.n = params.at("n").get<int>();
        s.kappa = params.value("kappa", 1.0);
        break;
      case ModelSpec::Kind::FubiniStudyCP:
      case ModelSpec::Kind::FubiniStudyHP:
        s.n = params.at("n").get<int>();
        break;
      case ModelSpec::Kind::Cylinder:
        s.q = params.at("q").get<int>();
        s.n = params.at("n").get<int>();
        break;
      case ModelSpec::Kind::BergerCPFamily:
      case ModelSpec::Kind::BergerCHFamily:
        s.n = params.at("n").get<int>();
        s.r = params.value("r", 0.0);
        break;
      case ModelSpec::Kind::Product:
        for (const Json& f : params.at("factors")) s.factors.push_back(model_from_json(f));
        break;
    }
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("bad model parameters: ") + e.what());
  }
  return s;
}

/// Shorthand or JSON (anything starting with '{').
inline ModelSpec read_model(const std::string& text) {
  const std::size_t first = text.find_first_not_of(" \t\n");
  if (first != std::string::npos && text[first] == '{') {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw DomainError(std::string("model JSON: ") + e.what());
    }
    return model_from_json(j);
  }
  return parse_model(text);
}

namespace engine {

inline Json to_json(const Bound& b) { return {{"value", to_string(b.value)}, {"open", b.open}}; }

inline Json to_json(const RiemInterval& r) {
  Json trace = Json::array();
  for (const TraceStep& s : r.trace) {
    Json step = {{"rule", s.rule},
                 {"cite", s.cite},
                 {"node", s.node},
                 {"applied", s.applied},
                 {"bounds", s.applied ? s.before + " -> " + s.after : s.before}};
    if (!s.note.empty()) step["note"] = s.note;
    trace.push_back(std::move(step));
  }
  return {{"expr", r.expr},
          {"dim", r.dim},
          {"lower", to_json(r.lower)},
          {"upper", to_json(r.upper)},
          {"exact", r.exact()},
          {"iterations", r.iterations},
          {"binomial_candidates", r.binomial_candidates()},
          {"trace", trace}};
}

}  // namespace engine

}  // namespace curvlab
