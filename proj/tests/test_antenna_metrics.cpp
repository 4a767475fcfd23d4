#include <cmath>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "rangekit/antenna_metrics.hpp"
#include "rangekit/errors.hpp"
#include "rangekit/touchstone.hpp"
#include "support.hpp"

using namespace rangekit;

namespace {
SParamTrace parse(const std::string& text) {
  std::istringstream in(text);
  return parse_touchstone(in);
}
}  // namespace

TEST_CASE("touchstone formats") {
  auto t = parse("! measured\n# GHZ S DB R 50\n1.88 -24.70 0\n");
  REQUIRE(t.points.size() == 1);
  CHECK(t.points[0].frequency_hz == 1.88e9);
  CHECK(t.points[0].s11_db == -24.70);
  CHECK(t.source_format == TouchstoneFormat::DB);

  t = parse("# hz s ri r 75\n1e9 0.5 0.0\n2e9 0 -0.25 ! trailing\n");
  CHECK(t.points[0].s11_db == doctest::Approx(20.0 * std::log10(0.5)));
  CHECK(t.points[0].s11_db == doctest::Approx(-6.02).epsilon(1e-3));
  CHECK(t.points[1].angle_deg == doctest::Approx(-90.0));
  CHECK(t.reference_ohms == 75.0);

  t = parse("# R 50 MA MHZ S\n100 0.1 45\n");
  CHECK(t.points[0].frequency_hz == 100e6);
  CHECK(t.points[0].s11_db == doctest::Approx(-20.0));
  CHECK(t.points[0].angle_deg == 45.0);

  t = parse("#\n1 0.5 10\n");
  CHECK(t.points[0].frequency_hz == 1e9);
  CHECK(t.source_format == TouchstoneFormat::MA);
}

TEST_CASE("touchstone errors") {
  CHECK_THROWS_AS(parse("# GHZ S DB R 50\n"), ValidationError);
  CHECK_THROWS_AS(parse("# GHZ S XX R 50\n1 2 3\n"), ValidationError);
  CHECK_THROWS_AS(parse("# GHZ Y DB R 50\n1 2 3\n"), ValidationError);
  CHECK_THROWS_AS(parse("# GHZ S DB R 50\n2 -3 0\n1 -3 0\n"), ValidationError);
  CHECK_THROWS_AS(parse("# GHZ S DB R 50\n1 -3 0 -4 0 -5 0 -6 0\n"), ValidationError);
  CHECK_THROWS_AS(parse("[Version] 2.0\n# GHZ S DB R 50\n1 -3 0\n"), ValidationError);
  CHECK_THROWS_AS(parse("# GHZ S DB R 50\n1 -3\n"), ValidationError);
  CHECK_THROWS_AS(load_touchstone("/nonexistent/x.s1p"), IoError);
  testsupport::TempDir dir;
  std::ofstream(dir / "two.s2p") << "# GHZ S DB R 50\n1 -3 0\n";
  CHECK_THROWS_AS(load_touchstone(dir / "two.s2p"), ValidationError);
}

TEST_CASE("touchstone round trip") {
  auto t = parse("# MHZ S RI R 50\n100 0.1 0.2\n150.5 -0.3 0.01\n200 0.9 -0.05\n");
  std::stringstream ss;
  write_touchstone(ss, t);
  const auto back = parse_touchstone(ss);
  REQUIRE(back.points.size() == t.points.size());
  for (std::size_t i = 0; i < t.points.size(); ++i) {
    CHECK(back.points[i].frequency_hz == t.points[i].frequency_hz);
    CHECK(std::abs(back.points[i].s11_db - t.points[i].s11_db) < 1e-9);
    CHECK(std::abs(back.points[i].angle_deg - t.points[i].angle_deg) < 1e-9);
  }
}

TEST_CASE("single synthetic dip") {
  const auto trace = testsupport::three_dip_trace({{1.88e9, 0.0106, -24.70}}, 1500, 2300);
  const auto bands = find_bands(trace);
  REQUIRE(bands.size() == 1);
  CHECK(bands[0].f_resonance == 1.88e9);
  CHECK(bands[0].s11_min_db == -24.70);
  CHECK(std::abs(bands[0].fractional_bw - 0.0106) < 1e-5);
  CHECK_FALSE(bands[0].truncated_low);
  CHECK_FALSE(bands[0].truncated_high);
}

TEST_CASE("three dips") {
  const auto bands = find_bands(testsupport::three_dip_trace(testsupport::reference_dips()));
  REQUIRE(bands.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& d = testsupport::reference_dips()[i];
    CHECK(bands[i].f_resonance == d.fc);
    CHECK(bands[i].s11_min_db == d.smin);
    CHECK(std::abs(bands[i].fractional_bw - d.fbw) < 2e-4);
  }
}

TEST_CASE("no band and truncated bands") {
  SParamTrace t;
  for (int i = 0; i < 10; ++i) t.points.push_back({1e9 + i * 1e6, -9.0 + 0.1 * i, 0});
  CHECK(find_bands(t).empty());
  t.points.front().s11_db = -15.0;
  t.points.back().s11_db = -12.0;
  const auto bands = find_bands(t);
  REQUIRE(bands.size() == 2);
  CHECK(bands[0].truncated_low);
  CHECK(bands[1].truncated_high);
}

TEST_CASE("halving the grid barely moves the bandwidth") {
  const auto coarse = find_bands(testsupport::three_dip_trace(testsupport::reference_dips()));
  SParamTrace fine;
  for (long i = 2000; i <= 24000; ++i) {
    const double f = double(i) * 0.5e6;
    double s = -2.0;
    for (const auto& d : testsupport::reference_dips()) {
      const double u = (f - d.fc) / (d.fc * d.fbw / 2.0);
      s = std::min(s, d.smin + (-10.0 - d.smin) * u * u);
    }
    fine.points.push_back({f, s, 0});
  }
  const auto fb = find_bands(fine);
  REQUIRE(fb.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(std::abs(fb[i].fractional_bw - coarse[i].fractional_bw) < 1e6 / coarse[i].f_resonance);
    CHECK(std::abs(fb[i].fractional_bw - testsupport::reference_dips()[i].fbw) <=
          std::abs(coarse[i].fractional_bw - testsupport::reference_dips()[i].fbw) + 1e-12);
  }
}

TEST_CASE("gain statistics") {
  FarFieldCut cut;
  cut.frequency_hz = 1.88e9;
  for (int t = -90; t <= 90; t += 5) cut.samples.push_back({double(t), 3.0, 0.0});
  auto st = gain_beam_stats(cut);
  CHECK(st.max_gain_db == 3.0);
  CHECK(st.mean_gain_db == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(st.mean_gain_linear_db == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(st.samples == 13);

  cut.samples = {{-30, 3.0, 0}, {0, 4.8003, 0}, {30, 3.0, 0}};
  CHECK(gain_beam_stats(cut).max_gain_db == 4.8003);

  cut.samples.clear();
  for (int t = -30; t <= 30; ++t) cut.samples.push_back({double(t), 6.0 - 0.2 * std::abs(t), 0});
  st = gain_beam_stats(cut);
  CHECK(st.max_gain_db == 6.0);
  CHECK(st.mean_gain_db == doctest::Approx(3.0).epsilon(0.02));
  CHECK(st.mean_gain_linear_db > st.mean_gain_db);

  CHECK_THROWS_AS(gain_beam_stats(cut, {40.0, 50.0}), ValidationError);
}
