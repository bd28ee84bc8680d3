#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qcstar/model_io.hpp"

using namespace qcstar;
using nlohmann::json;

TEST_CASE("closed-form expression evaluator") {
  CHECK(io::eval_expr("t", 0.25) == doctest::Approx(0.25));
  CHECK(io::eval_expr("t^2", 0.5) == doctest::Approx(0.25));
  CHECK(io::eval_expr("t^-0.5", 0.25) == doctest::Approx(2.0));
  CHECK(io::eval_expr("(1-t)", 0.25) == doctest::Approx(0.75));
  CHECK(io::eval_expr("(1-t)^-0.5", 0.75) == doctest::Approx(2.0));
  CHECK(io::eval_expr("2*t", 0.5) == doctest::Approx(1.0));
  CHECK(io::eval_expr("t*(1-t)", 0.25) == doctest::Approx(0.1875));
  CHECK(io::eval_expr("0.5*t^2*(1-t)", 0.5) ==
        doctest::Approx(0.5 * 0.25 * 0.5));
  CHECK(std::isinf(io::eval_expr("t^-0.5", 0.0)));
  CHECK(io::eval_expr("1", 0.3) == doctest::Approx(1.0));
  CHECK_THROWS_AS(io::eval_expr("t^", 0.5), ParseError);
  CHECK_THROWS_AS(io::eval_expr("sin(t)", 0.5), ParseError);
  CHECK_THROWS_AS(io::eval_expr("t**2", 0.5), ParseError);
}

TEST_CASE("extended value JSON roundtrip") {
  auto chk = [](const ExtendedValue& v) {
    auto j = io::extended_to_json(v);
    auto back = io::extended_from_json(json::parse(j.dump()));
    CHECK(v.same_tag(back));
    if (v.is_finite()) CHECK(v.value() == back.value());
  };
  chk(ExtendedValue::finite(complex(1.5)));
  chk(ExtendedValue::finite(complex(-2.0, 3.25)));
  chk(ExtendedValue::infinity());
  CHECK_THROWS_AS(io::extended_from_json(json::parse("\"x\"")), ParseError);
  CHECK_THROWS_AS(io::extended_from_json(json::parse("[1,2,3]")), ParseError);
}

TEST_CASE("quasi element serialization") {
  auto g = CompactGrid::interval(0.0, 1.0, 4);
  CommutativeModel m(g, SeminormFamily::lp_unit(g, 1.0));
  std::vector<ExtendedValue> v = {
      ExtendedValue::infinity(), ExtendedValue::finite(complex(1.0)),
      ExtendedValue::finite(complex(0.0, 2.0)),
      ExtendedValue::finite(complex(3.0))};
  QuasiElement a(v);
  auto j = json::parse(io::quasi_to_json(a).dump());
  REQUIRE(j.contains("values"));
  CHECK(j["values"].size() == 4);
  CHECK(j["values"][0] == json{{"inf", true}});
  CHECK(j["values"][1] == json(1.0));
  CHECK(j["values"][2] == json::array({0.0, 2.0}));
  auto csv = io::quasi_to_csv(g, a);
  CHECK(csv.rfind("t,value_re,value_im,inf\n", 0) == 0);
  CHECK(csv.find("0,0,0,1\n") != std::string::npos);  // the infinity row
}

TEST_CASE("loading a commutative model document") {
  json j = json::parse(R"({
    "schema": 1,
    "space": {"kind": "interval", "a": 0.0, "b": 1.0, "n": 16},
    "topology": {"specs": [
      {"p": 1.0, "weight": "unit"},
      {"p": 2.0, "weight": "0.5"}
    ]},
    "lipschitz_bound": 8.0,
    "elements": {
      "one": {"kind": "closed_form", "expr": "1"},
      "sing": {"kind": "closed_form", "expr": "t^-0.5"}
    },
    "forms": {
      "lebesgue": {"kind": "diagonal", "weights": "unit"}
    }
  })");
  auto loaded = io::load_model_json(j);
  REQUIRE(loaded.commutative.has_value());
  CHECK_FALSE(loaded.op.has_value());
  const auto& c = *loaded.commutative;
  CHECK(c.model.grid().size() == 16);
  CHECK(c.model.family().size() == 2);
  CHECK(c.lipschitz_bound == 8.0);
  REQUIRE(c.elements.count("sing") == 1);
  CHECK(c.elements.at("sing")[0].is_infinite());
  CHECK(c.elements.at("one")[5].value() == complex(1.0));
  CHECK(c.forms.count("lebesgue") == 1);
}

TEST_CASE("loading sample-valued elements validates length and windows") {
  json base = json::parse(R"({
    "schema": 1,
    "space": {"kind": "interval", "a": 0.0, "b": 1.0, "n": 4},
    "topology": {"specs": [{"p": 1.0, "weight": "unit"}]},
    "elements": {"x": {"kind": "samples",
                       "values": [1.0, {"inf": true}, [0.5, -0.5], 2.0]}}
  })");
  auto loaded = io::load_model_json(base);
  const auto& x = loaded.commutative->elements.at("x");
  CHECK(x[1].is_infinite());
  CHECK(x[2].value() == complex(0.5, -0.5));

  base["elements"]["x"]["values"] = json::array({1.0, 2.0});
  CHECK_THROWS_AS(io::load_model_json(base), ParseError);
}

TEST_CASE("loading an operator model document") {
  json j = json::parse(R"({
    "schema": 1,
    "dim": 2,
    "S": [1.0, 4.0],
    "elements": {"x": {"matrix": [[1.0, [0.0, 1.0]], [[0.0, -1.0], 2.0]]}}
  })");
  auto loaded = io::load_model_json(j);
  REQUIRE(loaded.op.has_value());
  CHECK(loaded.op->domain.dim == 2);
  CHECK(loaded.op->elements.at("x")(0, 1) == complex(0.0, 1.0));
  CHECK(is_hermitian_matrix(loaded.op->elements.at("x")));
}

TEST_CASE("schema violations become ParseError") {
  CHECK_THROWS_AS(io::load_model_json(json::parse(R"({"schema": 2})")),
                  ParseError);
  CHECK_THROWS_AS(io::load_model_json(json::parse(R"({"schema": 1})")),
                  ParseError);
  CHECK_THROWS_AS(
      io::load_model_json(json::parse(
          R"({"schema": 1, "space": {"kind": "disk", "a": 0, "b": 1, "n": 4}})")),
      ParseError);
  // missing required keys surface as ParseError through the json wrapper
  CHECK_THROWS_AS(
      io::load_model_file("/nonexistent/path/model.json"), ParseError);
  json bad_matrix = json::parse(R"({
    "schema": 1, "dim": 2, "S": [1.0, 1.0],
    "elements": {"x": {"matrix": [[1.0, "y"], [0.0, 1.0]]}}
  })");
  CHECK_THROWS_AS(io::load_model_json(bad_matrix), ParseError);
}
