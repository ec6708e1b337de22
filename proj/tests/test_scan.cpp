#include "doctest.h"
#include "generators.hpp"
#include "qplane/model.hpp"
#include "qplane/scan.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace qplane;
using qtest::error_of;
using nlohmann::json;

namespace {

QPair model_pair() { return ModelParams{}.pair(); }

GridSpec points_grid(std::initializer_list<CharacterPoint> pts) {
  GridSpec g;
  g.kind = GridSpec::Kind::Points;
  g.axis = AxisSelection::Both;
  g.points = pts;
  return g;
}

GridSpec cartesian(AxisSelection axis, int res, double hw, int depth = 0) {
  GridSpec g;
  g.axis = axis;
  g.resolution = res;
  g.half_width = hw;
  g.refine_depth = depth;
  return g;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("qplane_test_scan_" + name);
}

}  // namespace

TEST_CASE("zero pair: only the origin is spectral") {
  const auto portrait = scan(qtest::zero_pair(), cartesian(AxisSelection::Both, 11, 1.0), ToleranceConfig{});
  CHECK(portrait.points.size() >= 11 * 11 * 2 - 1);
  std::size_t spectral = 0;
  for (const auto& p : portrait.points) {
    if (!p.in_sigma) continue;
    ++spectral;
    CHECK(p.point.value.is_zero());
    CHECK(p.h == std::array<std::size_t, 3>{1, 2, 1});
  }
  CHECK(spectral >= 1);
  CHECK(portrait.summary().sigma == spectral);
  const auto rep = verify_q_projection(portrait, qtest::zero_pair());
  CHECK(rep.q_projection_holds);
  CHECK(rep.naive_forward_holds);
  CHECK(rep.naive_backward_holds);
}

TEST_CASE("model axis Y: spectral exactly at 1") {
  const auto g = points_grid({{Axis::Y, Scalar(0.0)},
                              {Axis::Y, Scalar(0.25)},
                              {Axis::Y, Scalar(0.5)},
                              {Axis::Y, Scalar(1.0)},
                              {Axis::Y, Scalar(1.3)}});
  const auto portrait = scan(model_pair(), g, ToleranceConfig{});
  REQUIRE(portrait.points.size() == 5);
  for (const auto& p : portrait.points) {
    INFO(p.point.to_json().dump());
    CHECK(p.in_sigma == (p.point.value == Scalar(1.0)));
  }
  CHECK(portrait.summary().sigma_y == 1);
  CHECK(portrait.summary().sigma_e == 0);
}

TEST_CASE("model axis X: annulus between radii 1 and 2") {
  GridSpec g;
  g.kind = GridSpec::Kind::Polar;
  g.angles = 3;
  g.radii = 6;
  g.r_max = 2.5;  // radii 0, 0.5, ..., 2.5
  const auto portrait = scan(model_pair(), g, ToleranceConfig{});
  const ModelParams mp;
  std::size_t checked = 0;
  for (const auto& p : portrait.points) {
    const auto ref = reference_membership(mp, p.point, 1e-9);
    INFO(p.point.to_json().dump());
    if (ref == ReferenceClass::Spectral || ref == ReferenceClass::Essential) {
      CHECK(p.in_sigma);
      ++checked;
    } else if (ref == ReferenceClass::Resolvent) {
      CHECK_FALSE(p.in_sigma);
      ++checked;
    }
    const double r = p.point.value.abs();
    if (std::abs(r - 1.5) < 1e-9) CHECK_FALSE(p.in_sigma_e);
  }
  CHECK(checked >= 13);
  const auto s = portrait.summary();
  CHECK_FALSE(s.box_x.empty);
  CHECK(s.box_x.max_re <= 2.0 + 1e-9);
  const auto rep = verify_q_projection(portrait, model_pair());
  CHECK(rep.q_projection_holds);
  CHECK_FALSE(rep.naive_forward_holds);

  const std::string svg = portrait_svg(portrait);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("class=\"spectral\"") != std::string::npos);
  CHECK(svg.find("class=\"essential\"") != std::string::npos);
  CHECK(svg.find("class=\"resolvent\"") != std::string::npos);
  CHECK(svg.find("legend") != std::string::npos);
}

TEST_CASE("refinement adds midpoints where membership changes") {
  const auto base = scan(qtest::zero_pair(), cartesian(AxisSelection::X, 3, 1.0), ToleranceConfig{});
  const auto refined = scan(qtest::zero_pair(), cartesian(AxisSelection::X, 3, 1.0, 2), ToleranceConfig{});
  CHECK(base.points.size() == 9);
  CHECK(refined.points.size() > base.points.size());
  for (std::size_t i = 0; i < base.points.size(); ++i) {
    CHECK(csv_row(base.points[i]) == csv_row(refined.points[i]));
  }
  // Refinement on a uniform region adds nothing.
  GridSpec far = cartesian(AxisSelection::X, 3, 0.5, 2);
  far.center = Scalar(3.0);
  CHECK(scan(qtest::zero_pair(), far, ToleranceConfig{}).points.size() == 9);
}

TEST_CASE("portrait serialization") {
  SpectralPortrait empty;
  CHECK(portrait_csv(empty) == std::string(csv_header()) + "\n");
  CHECK(SpectralPortrait::from_json(empty.to_json()).points.empty());

  ToleranceConfig cfg;
  cfg.truncation_schedule = {10, 20, 40};
  const auto portrait = scan(qtest::nilpotent_pair(), points_grid({{Axis::Y, Scalar(1.0)},
                                                                    {Axis::Y, Scalar(3.0)},
                                                                    {Axis::X, Scalar(0.0)},
                                                                    {Axis::X, Scalar(Complex(0.5, -1.0))}}),
                             cfg);
  const json j = portrait.to_json();
  const auto back = SpectralPortrait::from_json(j);
  CHECK(back.to_json() == j);
  CHECK(portrait_csv(back) == portrait_csv(portrait));
  CHECK(back.summary() == portrait.summary());

  json tampered = j;
  tampered["summary"]["sigma"] = 99;
  CHECK(error_of([&] { SpectralPortrait::from_json(tampered); }) == ErrorCode::ParseError);

  const auto path = temp_path("roundtrip.json");
  emit(portrait, PortraitFormat::Json, path.string());
  CHECK(read_portrait(path.string()).to_json() == j);
  std::filesystem::remove(path);

  CHECK(error_of([&] { emit(portrait, PortraitFormat::Csv, "/nonexistent-dir/x/out.csv"); }) == ErrorCode::IoFailure);
  CHECK(error_of([] { read_portrait("/nonexistent-dir/p.json"); }) == ErrorCode::IoFailure);
  CHECK(format_from_path("a/b.svg") == PortraitFormat::Svg);
  CHECK(format_from_path("p.csv") == PortraitFormat::Csv);
  CHECK(error_of([] { format_from_path("p.txt"); }) == ErrorCode::BadParameter);
}

TEST_CASE("grid specs") {
  CHECK(error_of([] { cartesian(AxisSelection::X, 1, 1.0).validate(); }) == ErrorCode::BadParameter);
  CHECK(error_of([] { cartesian(AxisSelection::X, 5, 1.0, -1).validate(); }) == ErrorCode::BadParameter);
  GridSpec pts = points_grid({{Axis::X, Scalar(1.0)}});
  pts.refine_depth = 1;
  CHECK(error_of([&] { pts.validate(); }) == ErrorCode::BadParameter);
  CHECK(cartesian(AxisSelection::X, 11, 1.0).spacing() == doctest::Approx(0.2));

  const json one = json::parse(R"({"schema":1,"kind":"points","axis":"both","points":["X,1,0","Y,1/2,0"]})");
  CHECK(grids_from_json(one).size() == 1);
  CHECK(grids_from_json(one)[0].points[1].value.exact() == GaussRational(mpq_class(1, 2)));
  CHECK(grids_from_json(json::array({one, one})).size() == 2);
  CHECK(grids_from_json(json{{"schema", 1}, {"grids", json::array({one})}}).size() == 1);
  CHECK(error_of([] { GridSpec::from_json(json::parse(R"({"kind":"hex"})")); }) == ErrorCode::ParseError);
  const auto defaults = default_model_grids(Scalar(0.5));
  REQUIRE(defaults.size() == 3);
  CHECK(defaults[0].r_max == doctest::Approx(2.5));
  CHECK(defaults[1].points.size() == 14);
  for (const auto& g : defaults) CHECK(GridSpec::from_json(g.to_json()).to_json() == g.to_json());
}

TEST_CASE("worker count does not change the output") {
  GridSpec g;
  g.kind = GridSpec::Kind::Polar;
  g.angles = 4;
  g.radii = 5;
  g.refine_depth = 1;
  ToleranceConfig one;
  one.truncation_schedule = {10, 20, 40};
  ToleranceConfig many = one;
  many.workers = 3;
  const auto a = scan(model_pair(), g, one);
  const auto b = scan(model_pair(), g, many);
  CHECK(a.to_json() == b.to_json());
  CHECK(portrait_csv(a) == portrait_csv(b));
  CHECK(portrait_svg(a) == portrait_svg(b));
}
