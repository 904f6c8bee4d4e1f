#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "csf/result_io.hpp"

using namespace csf;

namespace {

ResultRecord sample_record() {
  ResultRecord r;
  r.instance = "toy";
  r.seed = 42;
  r.mode = "qq";
  r.legalizer = "la-csaq";
  r.kernel = "scalar";
  r.outline.width = 12.5;
  r.outline.height = 10.0;
  r.outline.gamma = 0.15;
  r.outline.aspect = 1.0;
  r.outline.generated = true;
  r.legal = true;
  r.hpwl = 123.456789012345;
  r.hpwl_before_compress = 130.0;
  r.t_g = 0.5;
  r.t_l = 0.25;
  r.t_w = 0.8;
  r.restarts = 1;
  r.module_names = {"a", "b"};
  r.widths = {3.0, 2.0};
  r.heights = {2.0, 4.0};
  r.placement = Placement::sized(2);
  r.placement.x = {1.5000000001, 9.25};
  r.placement.y = {1.0, 5.0 / 3.0};
  r.placement.rotated = {0, 1};
  return r;
}

} // namespace

TEST_CASE("result json round-trips coordinates") {
  const ResultRecord r = sample_record();
  const std::string text = emit_result_json(r);
  const ResultRecord back = read_result_json(text);
  CHECK(back.instance == r.instance);
  CHECK(back.seed == r.seed);
  CHECK(back.legal == r.legal);
  CHECK(std::fabs(back.hpwl - r.hpwl) <= 1e-9);
  REQUIRE(back.placement.size() == 2);
  for (int i = 0; i < 2; ++i) {
    CHECK(std::fabs(back.placement.x[i] - r.placement.x[i]) <= 1e-9);
    CHECK(std::fabs(back.placement.y[i] - r.placement.y[i]) <= 1e-9);
    CHECK(back.placement.rotated[i] == r.placement.rotated[i]);
  }
}

TEST_CASE("legal results advertise their fields") {
  const std::string text = emit_result_json(sample_record());
  CHECK(text.find("\"legal\": true") != std::string::npos);
  CHECK(text.find("\"hpwl\"") != std::string::npos);
}

TEST_CASE("empty placement is rejected") {
  ResultRecord r = sample_record();
  r.placement = Placement{};
  r.module_names.clear();
  r.widths.clear();
  r.heights.clear();
  CHECK_THROWS_AS(emit_result_json(r), std::invalid_argument);
  CHECK_THROWS_AS(emit_result_svg(r), std::invalid_argument);
}

TEST_CASE("svg draws the outline and every module") {
  const ResultRecord r = sample_record();
  const std::string svg = emit_result_svg(r);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find(">a</text>") != std::string::npos);
  CHECK(svg.find(">b</text>") != std::string::npos);
  // Outline rect plus one rect per module.
  std::size_t rects = 0, at = 0;
  while ((at = svg.find("<rect", at)) != std::string::npos) {
    ++rects;
    at += 5;
  }
  CHECK(rects == 3);
}

TEST_CASE("aggregate statistics") {
  SUBCASE("hand-computed mean, min and deviation") {
    std::vector<RunStats> rs = {{true, 10.0, 1, 2, 3}, {true, 20.0, 1, 2, 3}, {true, 30.0, 1, 2, 3}};
    AggregateStats a = aggregate(rs);
    CHECK(a.runs == 3);
    CHECK(a.sr_percent == 100.0);
    CHECK(*a.hpwl_mean == 20.0);
    CHECK(*a.hpwl_min == 10.0);
    CHECK(*a.hpwl_sd == 10.0);
    CHECK(a.mean_t_g == 1.0);
  }
  SUBCASE("single record has zero deviation") {
    AggregateStats a = aggregate({{true, 5.0, 0, 0, 0}});
    CHECK(*a.hpwl_sd == 0.0);
  }
  SUBCASE("wirelength stats cover successful runs only") {
    std::vector<RunStats> rs = {{true, 10.0, 0, 0, 1}, {false, 999.0, 0, 0, 1}};
    AggregateStats a = aggregate(rs);
    CHECK(a.sr_percent == 50.0);
    CHECK(*a.hpwl_mean == 10.0);
    CHECK(*a.hpwl_min == 10.0);
  }
  SUBCASE("zero successes report absent wirelength") {
    AggregateStats a = aggregate({{false, 1.0, 0, 0, 0}});
    CHECK(a.sr_percent == 0.0);
    CHECK_FALSE(a.hpwl_mean.has_value());
    const std::string j = aggregate_json(a, "x", "qq", "la-csaq");
    CHECK(j.find("hpwl_mean") == std::string::npos);
  }
  SUBCASE("empty input is rejected") { CHECK_THROWS_AS(aggregate({}), std::invalid_argument); }
}
