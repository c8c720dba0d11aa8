#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include <gtest/gtest.h>

#include "zonemv/gains.hpp"
#include "zonemv/pricing.hpp"
#include "zonemv/weather.hpp"

using namespace zonemv;
namespace fs = std::filesystem;

namespace {

fs::path write_temp(const std::string& name, const std::string& contents) {
  const fs::path dir = fs::temp_directory_path() / "zonemv_test_inputs";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  std::ofstream(p) << contents;
  return p;
}

std::string load_error(const fs::path& p, const TimeGrid& grid) {
  try {
    load_weather(p, grid);
  } catch (const WeatherFormatError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Cop, DefaultAnchors) {
  const CopCurve curve;
  EXPECT_DOUBLE_EQ(cop(curve, 8.3), 3.3);
  EXPECT_DOUBLE_EQ(cop(curve, -15.0), 1.8);
  EXPECT_NEAR(cop(curve, -3.35), 2.55, 1e-12);
}

TEST(Cop, ClampedOutsideTheAnchors) {
  const CopCurve curve;
  EXPECT_DOUBLE_EQ(cop(curve, 20.0), 3.3);
  // Linear extrapolation to -23 C gives 1.8 - 8 * 1.5 / 23.3, still above the floor.
  EXPECT_NEAR(cop(curve, -23.0), 1.8 - 8.0 * 1.5 / 23.3, 1e-12);
  EXPECT_DOUBLE_EQ(cop(curve, -100.0), 1.0);
  CopCurve bad;
  bad.cop_low = 4.0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(Tariff, ChicagoPeriods) {
  const auto t = Tariff::chicago_time_of_use();
  EXPECT_NO_THROW(t.validate());
  EXPECT_DOUBLE_EQ(t.price_at(23.0), 0.12);
  EXPECT_DOUBLE_EQ(t.price_at(0.0), 0.12);
  EXPECT_DOUBLE_EQ(t.price_at(5.99), 0.12);
  EXPECT_DOUBLE_EQ(t.price_at(6.0), 0.14);
  EXPECT_DOUBLE_EQ(t.price_at(14.0), 0.16);
  EXPECT_DOUBLE_EQ(t.price_at(18.75), 0.16);
  EXPECT_DOUBLE_EQ(t.price_at(19.0), 0.14);
  EXPECT_DOUBLE_EQ(t.price_at(22.0), 0.12);
}

TEST(Tariff, RejectsGapsAndOverlaps) {
  Tariff gap{{{0, 12, 0.1}, {13, 24, 0.1}}};
  EXPECT_THROW(gap.validate(), std::invalid_argument);
  Tariff overlap{{{0, 13, 0.1}, {12, 24, 0.1}}};
  EXPECT_THROW(overlap.validate(), std::invalid_argument);
  Tariff free{{{0, 24, 0.0}}};
  EXPECT_THROW(free.validate(), std::invalid_argument);
  EXPECT_NO_THROW(Tariff::flat(0.2).validate());
}

TEST(ThermalPrice, DefaultAnchors) {
  const auto tariff = Tariff::chicago_time_of_use();
  const TimeGrid grid{1.0, 24, 0.0};
  Eigen::VectorXd outdoor = Eigen::VectorXd::Constant(24, 8.3);
  outdoor(23) = -15.0;
  const auto a = thermal_price(tariff, CopCurve{}, outdoor, grid);
  EXPECT_NEAR(a(15), 0.16 / 3.3, 1e-12);
  EXPECT_NEAR(a(15), 0.04848, 1e-5);
  EXPECT_NEAR(a(23), 0.12 / 1.8, 1e-12);
  EXPECT_NEAR(a(23), 0.06667, 1e-5);
}

TEST(ThermalPrice, ConstantInputsAndMonotonicity) {
  const TimeGrid grid{0.25, 96, 0.0};
  const auto a = thermal_price(Tariff::flat(0.15), CopCurve{}, Eigen::VectorXd::Constant(96, 8.3), grid);
  EXPECT_LE((a.array() - 0.15 / 3.3).abs().maxCoeff(), 1e-15);

  const auto tariff = Tariff::chicago_time_of_use();
  double previous = INFINITY;
  for (double t0 = -30.0; t0 <= 15.0; t0 += 0.5) {
    const double now =
        thermal_price(tariff, CopCurve{}, Eigen::VectorXd::Constant(1, t0), {1.0, 1, 15.0})(0);
    EXPECT_LE(now, previous);
    previous = now;
  }
}

TEST(Weather, QuarterHourRows) {
  std::string csv = "timestamp,outdoor_temp_c,ghi_w_per_m2\n";
  for (int k = 0; k < 480; ++k) {
    const int day = 12 + k / 96;
    const int minutes = (k % 96) * 15;
    char row[80];
    std::snprintf(row, sizeof row, "2022-12-%02dT%02d:%02d:00,%d,%d\n", day, minutes / 60,
                  minutes % 60, -(k % 20), k % 7);
    csv += row;
  }
  const auto p = write_temp("quarter.csv", csv);
  const auto ws = load_weather(p, {0.25, 0, 0.0});
  EXPECT_EQ(ws.grid.steps, 480);
  EXPECT_DOUBLE_EQ(ws.grid.origin_hour, 0.0);
  EXPECT_DOUBLE_EQ(ws.outdoor(21), -1.0);
  EXPECT_DOUBLE_EQ(ws.ghi(13), 6.0);
}

TEST(Weather, HourlyRowsAreHeld) {
  const auto p = write_temp("hourly.csv",
                            "\xEF\xBB\xBFtimestamp,outdoor_temp_c,ghi_w_per_m2\n"
                            "2022-12-22T06:00:00Z,-10,0\n"
                            "2022-12-22T07:00:00Z,-11.5,50\n"
                            "2022-12-22T08:00:00Z,-12,120\n");
  const auto ws = load_weather(p, {0.25, 0, 0.0});
  ASSERT_EQ(ws.grid.steps, 12);
  EXPECT_DOUBLE_EQ(ws.grid.origin_hour, 6.0);
  for (int k = 0; k < 12; ++k) {
    EXPECT_DOUBLE_EQ(ws.outdoor(k), (Eigen::Vector3d(-10, -11.5, -12))(k / 4));
    EXPECT_DOUBLE_EQ(ws.ghi(k), (Eigen::Vector3d(0, 50, 120))(k / 4));
  }
  EXPECT_THROW(load_weather(p, {0.25, 13, 0.0}), WeatherFormatError);
}

TEST(Weather, ErrorsNameTheLine) {
  const auto missing = write_temp("missing.csv",
                                  "timestamp,outdoor_temp_c,ghi_w_per_m2\n"
                                  "2022-12-22T06:00,-10,0\n"
                                  "2022-12-22T07:00,-11,\n");
  const auto msg = load_error(missing, {1.0, 0, 0.0});
  EXPECT_NE(msg.find("missing.csv:3:"), std::string::npos) << msg;
  EXPECT_NE(msg.find("ghi_w_per_m2"), std::string::npos) << msg;

  const auto order = write_temp("order.csv",
                                "timestamp,outdoor_temp_c,ghi_w_per_m2\n"
                                "2022-12-22T07:00,-10,0\n"
                                "2022-12-22T06:00,-11,0\n");
  EXPECT_NE(load_error(order, {1.0, 0, 0.0}).find("order.csv:3:"), std::string::npos);

  const auto header = write_temp("header.csv", "time,t,ghi\n2022-12-22T07:00,-10,0\n");
  EXPECT_NE(load_error(header, {1.0, 0, 0.0}).find("header.csv:1:"), std::string::npos);

  const auto thousands = write_temp("thousands.csv",
                                    "timestamp,outdoor_temp_c,ghi_w_per_m2\n"
                                    "2022-12-22T07:00,-10,\"1,000\"\n");
  EXPECT_NE(load_error(thousands, {1.0, 0, 0.0}).find("thousands.csv:2:"), std::string::npos);

  EXPECT_THROW(load_weather(fs::temp_directory_path() / "zonemv_no_such_file.csv", {1.0, 0, 0.0}),
               WeatherFormatError);
}

TEST(Weather, Iso8601) {
  EXPECT_DOUBLE_EQ(parse_iso8601_hours("1970-01-02T03:30"), 27.5);
  EXPECT_DOUBLE_EQ(parse_iso8601_hours("1970-01-01T00:00:36Z"), 0.01);
  EXPECT_THROW(parse_iso8601_hours("2022-02-30T00:00"), std::invalid_argument);
  EXPECT_DOUBLE_EQ(parse_iso8601_hours("1970-01-01 06:00"), 6.0);
  EXPECT_THROW(parse_iso8601_hours("12/22/2022 06:00"), std::invalid_argument);
}

TEST(Weather, SyntheticColdSnap) {
  const TimeGrid grid{0.25, 480, 0.0};
  const auto ws = synthetic_weather({}, grid);
  EXPECT_NO_THROW(ws.validate());
  EXPECT_NEAR(ws.outdoor.minCoeff(), -23.0, 1e-12);
  EXPECT_LT(ws.outdoor.maxCoeff(), -3.0);
  EXPECT_NEAR(ws.ghi.maxCoeff(), 350.0, 1.0);
  // Night-time irradiance is zero.
  EXPECT_EQ(ws.ghi(0), 0.0);
  EXPECT_NEAR(ws.ghi.maxCoeff() / ws.ghi.mean(), 6.2667, 0.01);
}

TEST(Gains, ZeroInputsGiveZero) {
  const TimeGrid grid{0.25, 96, 0.0};
  WeatherSeries ws{grid, Eigen::VectorXd::Zero(96), Eigen::VectorXd::Zero(96)};
  GainSpec spec;
  spec.internal_kw_per_m2 = 0.0;
  const auto w = synthesize_gains(spec, ws, Eigen::Vector2d(30, 90), Eigen::Vector2d(25, 75));
  EXPECT_EQ(w.cwiseAbs().maxCoeff(), 0.0);
}

TEST(Gains, ZoneOneLevels) {
  const TimeGrid grid{0.25, 480, 0.0};
  const auto ws = synthetic_weather({}, grid);
  const double ratio = ws.ghi.maxCoeff() / ws.ghi.mean();

  GainSpec solar_only;
  solar_only.internal_kw_per_m2 = 0.0;
  const auto solar = synthesize_gains(solar_only, ws, Eigen::Vector2d(30, 90), Eigen::Vector2d(25, 75));
  // 30 m2 of wall at 25 % glazing, 10 W/m2 mean flux.
  EXPECT_NEAR(solar.col(0).maxCoeff(), 7.5 * 0.010 * ratio, 1e-12);
  EXPECT_NEAR(solar.col(0).maxCoeff(), 0.47, 0.005);
  EXPECT_NEAR(solar.col(1).maxCoeff(), 1.4, 0.02);

  GainSpec internal_only;
  internal_only.solar_mean_kw_per_m2 = 0.0;
  const auto internal =
      synthesize_gains(internal_only, ws, Eigen::Vector2d(30, 90), Eigen::Vector2d(25, 75));
  const double sigma = 0.1 * 0.25;
  EXPECT_NEAR(internal.col(0).mean(), 0.25, 3.0 * sigma / std::sqrt(480.0));
}

TEST(Gains, SeedDeterminism) {
  const TimeGrid grid{0.25, 480, 0.0};
  const auto ws = synthetic_weather({}, grid);
  GainSpec a;
  GainSpec b;
  b.seed = 7;
  const Eigen::Vector2d walls(30, 90), floors(25, 75);
  const auto w1 = synthesize_gains(a, ws, walls, floors);
  const auto w2 = synthesize_gains(a, ws, walls, floors);
  const auto w3 = synthesize_gains(b, ws, walls, floors);
  EXPECT_EQ(w1, w2);
  EXPECT_NE(w1, w3);
  for (int i = 0; i < 2; ++i) {
    const double sigma = 0.1 * 0.010 * floors(i);
    EXPECT_NEAR(w1.col(i).mean(), w3.col(i).mean(), 3.0 * std::sqrt(2.0) * sigma / std::sqrt(480.0));
  }
}
