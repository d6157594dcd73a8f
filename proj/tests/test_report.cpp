#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "waring/report.hpp"

using namespace waring;

namespace {

Report sample() {
  Report r;
  r.kind = "sample";
  r.metadata = {{"P", ColumnType::Integer, std::int64_t{64}},
                {"mu", ColumnType::Real, 0.903677461029},
                {"label", ColumnType::Text, std::string("x,y")}};
  r.columns = {{"h", ColumnType::Integer},
               {"total", ColumnType::Exact},
               {"ratio", ColumnType::Real},
               {"ok", ColumnType::Boolean}};
  r.add_row({std::int64_t{1}, static_cast<i128>(-3), 0.25, true});
  return r;
}

}  // namespace

TEST_CASE("empty reports are rejected") {
  Report r;
  r.kind = "empty";
  r.columns = {{"a", ColumnType::Integer}};
  CHECK_THROWS_WITH_AS(emit_report(r, ReportFormat::Csv), "empty report", std::invalid_argument);
  CHECK_THROWS_AS(emit_report(r, ReportFormat::Json), std::invalid_argument);
}

TEST_CASE("single row csv") {
  CHECK(emit_report(sample(), ReportFormat::Csv) == "h,total,ratio,ok\n1,-3,0.25,true\n");
}

TEST_CASE("row shape is enforced") {
  auto r = sample();
  CHECK_THROWS(r.add_row({std::int64_t{1}}));
}

TEST_CASE("format_real") {
  CHECK(format_real(0.1) == "0.1");
  CHECK(format_real(1.0 / 3.0) == "0.333333333333");
  CHECK(format_real(std::numeric_limits<double>::quiet_NaN()) == "nan");
  CHECK(format_real(-std::numeric_limits<double>::infinity()) == "-inf");
}

TEST_CASE("json round trip") {
  std::mt19937_64 rng(40);
  std::uniform_real_distribution<double> unit(-1e6, 1e6);
  for (int trial = 0; trial < 100; ++trial) {
    Report r = sample();
    for (int i = 0; i < 20; ++i) {
      const double real = std::stod(format_real(unit(rng)));
      const i128 big = (static_cast<i128>(rng()) << 60) * (i % 2 ? 1 : -1);
      r.add_row({static_cast<std::int64_t>(rng() >> 2), big, i == 7 ? std::nan("") : real, i % 3 == 0});
    }
    const auto text = emit_report(r, ReportFormat::Json);
    const auto back = parse_json_report(text);
    REQUIRE(back == r);
    REQUIRE(emit_report(back, ReportFormat::Json) == text);
  }
}
