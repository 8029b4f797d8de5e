#include <doctest.h>

#include <Eigen/Dense>

#include "ellint/json_io.hpp"
#include "ellint/svg.hpp"
#include "ellint/verify.hpp"

using namespace ellint;

TEST_CASE("ellipsoid and spec JSON round-trip") {
  const IntersectionSpec spec = static_case_spec(9.5);
  const std::string text = spec_to_json(spec);
  const IntersectionSpec back = spec_from_json(text);
  REQUIRE(back.size() == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK((back.member(i).center() - spec.member(i).center()).norm() == 0.0);
    CHECK((back.member(i).shape().dense() - spec.member(i).shape().dense())
              .norm() == 0.0);
  }
}

TEST_CASE("json serialization keeps full precision") {
  SymMatrix p(1);
  p.set(0, 0, 1.0 / 3.0);
  const Ellipsoid e(Eigen::VectorXd::Constant(1, 0.1234567890123456), p);
  const Ellipsoid back = ellipsoid_from_json(ellipsoid_to_json(e));
  CHECK(back.center()[0] == e.center()[0]);
  CHECK(back.shape()(0, 0) == e.shape()(0, 0));
}

TEST_CASE("malformed JSON raises InvalidArgument") {
  CHECK_THROWS_AS(spec_from_json("{not json"), InvalidArgument);
  CHECK_THROWS_AS(spec_from_json("{\"ellipsoids\": []}"), InvalidArgument);
  CHECK_THROWS_AS(ellipsoid_from_json("{\"center\": [0]}"), InvalidArgument);
  // non-PD shape surfaces as the library's own validation error
  CHECK_THROWS_AS(
      ellipsoid_from_json("{\"center\": [0], \"shape\": [[-1]]}"),
      NotPositiveDefinite);
}

TEST_CASE("method result JSON carries the documented fields") {
  const MethodResult r =
      run_method(Method::DecoupledSdp, static_case_spec(9.5),
                 SizeCriterion::LogDet);
  const std::string text = result_to_json(r);
  CHECK(text.find("\"method\"") != std::string::npos);
  CHECK(text.find("\"decoupled\"") != std::string::npos);
  CHECK(text.find("\"objective\"") != std::string::npos);
  CHECK(text.find("\"weights\"") != std::string::npos);
  CHECK(text.find("\"diagnostics\"") != std::string::npos);
}

TEST_CASE("scenario JSON round-trip") {
  Scenario sc = paper_scenario();
  sc.steps = 12;
  sc.runs = 7;
  sc.seed = 42;
  const Scenario back = scenario_from_json(scenario_to_json(sc));
  CHECK(back.steps == 12);
  CHECK(back.runs == 7);
  CHECK(back.seed == 42);
  CHECK((back.dynamics.transition - sc.dynamics.transition).norm() == 0.0);
  CHECK(back.dynamics.sensor_noise.size() == 3);
}

TEST_CASE("svg output is well-formed and uses 256-point boundaries") {
  const IntersectionSpec spec = static_case_spec(9.5);
  std::vector<SvgEllipse> shapes;
  for (int i = 0; i < spec.size(); ++i)
    shapes.push_back(SvgEllipse{spec.member(i), "#123456", false, "m"});
  const std::string svg = render_ellipses_svg(shapes);
  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
  // three polylines with 257 joined points each (closed boundary)
  std::size_t count = 0, pos = 0;
  while ((pos = svg.find("<polyline", pos)) != std::string::npos) {
    ++count;
    pos += 1;
  }
  CHECK(count == 3);

  const std::string chart = render_line_chart_svg(
      {SvgSeries{{1.0, 2.0, 1.5}, "#000000", "series"}}, "x", "y");
  CHECK(chart.find("</svg>") != std::string::npos);
}

TEST_CASE("format_number gives 15 significant digits") {
  CHECK(format_number(1.0 / 3.0) == "0.333333333333333");
  CHECK(format_number(2.0) == "2");
}
