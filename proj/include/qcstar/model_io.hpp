#pragma once

#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qcstar/operator_model.hpp"
#include "qcstar/quasi_model.hpp"
#include "qcstar/report.hpp"
#include "qcstar/representation.hpp"

namespace qcstar {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace io {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

// Closed-form element expressions: products of factors drawn from
//   <number> | t | t^<q> | (1-t) | (1-t)^<q>
// e.g. "t^-0.5", "0.5*(1-t)^-0.25". Singular points evaluate to Infinity.
inline double eval_expr(const std::string& expr, double t) {
  double value = 1.0;
  std::size_t pos = 0;
  const std::string s = expr;
  auto fail = [&](const std::string& why) {
    throw ParseError("expr '" + expr + "': " + why);
  };
  while (pos < s.size()) {
    std::size_t star = s.find('*', pos);
    std::string f = s.substr(pos, star == std::string::npos ? std::string::npos
                                                            : star - pos);
    pos = star == std::string::npos ? s.size() : star + 1;
    if (f.empty()) fail("empty factor");
    double base;
    std::size_t caret_from = 0;
    if (f[0] == 't') {
      base = t;
      caret_from = 1;
    } else if (f.rfind("(1-t)", 0) == 0) {
      base = 1.0 - t;
      caret_from = 5;
    } else {
      // plain numeric factor
      try {
        std::size_t used = 0;
        base = std::stod(f, &used);
        if (used != f.size()) fail("trailing characters");
      } catch (const std::exception&) {
        fail("unrecognized factor '" + f + "'");
        return 0.0;
      }
      value *= base;
      continue;
    }
    double q = 1.0;
    if (caret_from < f.size()) {
      if (f[caret_from] != '^') fail("expected '^'");
      try {
        std::size_t used = 0;
        q = std::stod(f.substr(caret_from + 1), &used);
        if (used != f.size() - caret_from - 1) fail("bad exponent");
      } catch (const std::exception&) {
        fail("bad exponent");
      }
    }
    value *= std::pow(base, q);
  }
  return value;
}

inline ordered_json extended_to_json(const ExtendedValue& v) {
  if (v.is_infinite()) return ordered_json{{"inf", true}};
  complex c = v.value();
  if (c.imag() == 0.0) return ordered_json(c.real());
  return ordered_json::array({c.real(), c.imag()});
}

inline ExtendedValue extended_from_json(const json& j) {
  if (j.is_number()) return ExtendedValue::finite(complex(j.get<double>()));
  if (j.is_array() && j.size() == 2)
    return ExtendedValue::finite(
        complex(j[0].get<double>(), j[1].get<double>()));
  if (j.is_object() && j.value("inf", false)) return ExtendedValue::infinity();
  throw ParseError("bad extended value encoding");
}

inline ordered_json quasi_to_json(const QuasiElement& a) {
  ordered_json arr = ordered_json::array();
  for (const auto& v : a.values()) arr.push_back(extended_to_json(v));
  return ordered_json{{"values", arr}};
}

inline std::string quasi_to_csv(const CompactGrid& grid,
                                const QuasiElement& a) {
  std::string out = "t,value_re,value_im,inf\n";
  for (std::size_t i = 0; i < a.size(); ++i) {
    out += fmt_double(grid.point(i)) + ",";
    if (a[i].is_infinite()) {
      out += "0,0,1\n";
    } else {
      out += fmt_double(a[i].value().real()) + "," +
             fmt_double(a[i].value().imag()) + ",0\n";
    }
  }
  return out;
}

struct CommutativeLoaded {
  CommutativeModel model;
  std::map<std::string, QuasiElement> elements;
  std::map<std::string, SesquilinearForm> forms;
  double lipschitz_bound = 0.0;  // optional subalgebra constraint
};

struct OperatorLoaded {
  TruncatedDomain domain;
  std::map<std::string, Matrix> elements;
};

struct LoadedModel {
  std::optional<CommutativeLoaded> commutative;
  std::optional<OperatorLoaded> op;
};

inline QuasiElement element_from_json(const CommutativeModel& model,
                                      const json& spec) {
  const std::string kind = spec.value("kind", "");
  if (kind == "closed_form") {
    const std::string expr = spec.at("expr").get<std::string>();
    return model.sample([&](double t) { return eval_expr(expr, t); });
  }
  if (kind == "samples") {
    const auto& vals = spec.at("values");
    if (vals.size() != model.grid().size())
      throw ParseError("samples: length does not match the grid");
    std::vector<ExtendedValue> v;
    v.reserve(vals.size());
    for (const auto& j : vals) v.push_back(extended_from_json(j));
    QuasiElement a(std::move(v));
    model.validate(a);
    return a;
  }
  throw ParseError("element kind must be closed_form or samples");
}

inline LoadedModel load_model_json(const json& j) {
  if (j.value("schema", 0) != 1)
    throw ParseError("model: missing or unsupported \"schema\" (need 1)");
  LoadedModel out;
  if (j.contains("space")) {
    const auto& sp = j.at("space");
    if (sp.value("kind", "") != "interval")
      throw ParseError("space.kind must be \"interval\"");
    double a = sp.at("a").get<double>();
    double b = sp.at("b").get<double>();
    std::size_t n = sp.at("n").get<std::size_t>();
    CompactGrid grid = CompactGrid::interval(a, b, n);

    std::vector<SeminormSpec> specs;
    for (const auto& ts : j.at("topology").at("specs")) {
      SeminormSpec s;
      s.p = ts.at("p").get<double>();
      const auto& w = ts.at("weight");
      if (w.is_string()) {
        const std::string ws = w.get<std::string>();
        if (ws == "unit") {
          s.weight.assign(grid.size(), 1.0);
        } else {
          s.weight.resize(grid.size());
          for (std::size_t i = 0; i < grid.size(); ++i)
            s.weight[i] = eval_expr(ws, grid.point(i));
        }
      } else if (w.is_array()) {
        s.weight = w.get<std::vector<double>>();
      } else {
        throw ParseError("topology weight must be \"unit\", expr, or array");
      }
      specs.push_back(std::move(s));
    }
    CommutativeModel model(grid, SeminormFamily(grid, std::move(specs)));
    CommutativeLoaded loaded{std::move(model), {}, {}, 0.0};
    loaded.lipschitz_bound = j.value("lipschitz_bound", 0.0);
    if (j.contains("elements"))
      for (const auto& [name, spec] : j.at("elements").items())
        loaded.elements.emplace(name,
                                element_from_json(loaded.model, spec));
    if (j.contains("forms"))
      for (const auto& [name, spec] : j.at("forms").items()) {
        if (spec.value("kind", "") == "diagonal") {
          std::vector<double> fw;
          const auto& wspec = spec.at("weights");
          if (wspec.is_string() && wspec.get<std::string>() == "unit")
            fw.assign(loaded.model.grid().size(), 1.0);
          else
            fw = wspec.get<std::vector<double>>();
          loaded.forms.emplace(
              name, SesquilinearForm::diagonal(loaded.model, std::move(fw)));
        } else if (spec.value("kind", "") == "kernel") {
          const auto& rows = spec.at("matrix");
          Eigen::MatrixXcd k(rows.size(), rows.size());
          for (std::size_t r = 0; r < rows.size(); ++r)
            for (std::size_t c = 0; c < rows.size(); ++c)
              k(r, c) = rows[r][c].get<double>();
          loaded.forms.emplace(name,
                               SesquilinearForm::from_kernel(loaded.model, k));
        } else {
          throw ParseError("form kind must be diagonal or kernel");
        }
      }
    out.commutative = std::move(loaded);
    return out;
  }
  if (j.contains("dim")) {
    std::size_t dim = j.at("dim").get<std::size_t>();
    TruncatedDomain dom(dim, j.at("S").get<std::vector<double>>());
    OperatorLoaded loaded{dom, {}};
    if (j.contains("elements"))
      for (const auto& [name, spec] : j.at("elements").items()) {
        const auto& rows = spec.at("matrix");
        if (rows.size() != dim) throw ParseError("matrix: wrong row count");
        Matrix m(dim, dim);
        for (std::size_t r = 0; r < dim; ++r) {
          if (rows[r].size() != dim)
            throw ParseError("matrix: wrong column count");
          for (std::size_t c = 0; c < dim; ++c) {
            const auto& e = rows[r][c];
            if (e.is_number())
              m(r, c) = e.get<double>();
            else if (e.is_array() && e.size() == 2)
              m(r, c) = complex(e[0].get<double>(), e[1].get<double>());
            else
              throw ParseError("matrix entry must be number or [re,im]");
          }
        }
        loaded.elements.emplace(name, std::move(m));
      }
    out.op = std::move(loaded);
    return out;
  }
  throw ParseError("model: need either \"space\" or \"dim\"");
}

inline LoadedModel load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open model file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("model JSON: ") + e.what());
  }
  try {
    return load_model_json(j);
  } catch (const json::exception& e) {
    throw ParseError(std::string("model schema: ") + e.what());
  }
}

}  // namespace io
}  // namespace qcstar
