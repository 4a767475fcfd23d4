#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "rangekit/cli.hpp"
#include "rangekit/config.hpp"
#include "rangekit/errors.hpp"
#include "rangekit/geometry.hpp"
#include "rangekit/manifest.hpp"
#include "rangekit/plot_data.hpp"
#include "support.hpp"

using namespace rangekit;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("usage and exit codes") {
  auto r = run({});
  CHECK(r.code == 1);
  CHECK(r.err.find("Usage") != std::string::npos);
  CHECK(run({"bogus"}).code == 1);
  CHECK(run({"range-sim", "--no-such-flag"}).code == 1);
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"s11-bands", "--in", "/nonexistent/file.s1p"}).code == 2);
  CHECK(run({"range-sim", "--trials", "0"}).code == 1);
}

TEST_CASE("waveform subcommand") {
  testsupport::TempDir dir;
  auto r = run({"waveform", "--separation", "1e9", "--out", (dir / "spec.csv").string(), "--quiet"});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  CHECK(slurp(dir / "spec.csv").rfind("frequency_hz,energy_density\n", 0) == 0);
  CHECK(std::filesystem::exists(dir / "spec.csv.manifest.json"));
  r = run({"waveform", "--separation", "1e9"});
  const auto j = json::parse(r.out);
  CHECK(j["zeta_f2_analytic_rad2_s2"].get<double>() == two_tone_msb(1e9));
  CHECK(j["ratio_vs_rect"].get<double>() == doctest::Approx(3.0));
}

TEST_CASE("range-sim is reproducible") {
  testsupport::TempDir dir;
  const std::vector<std::string> base = {"range-sim", "--trials", "200", "--seed", "9", "--snr", "20"};
  auto a = base, b = base;
  a.insert(a.end(), {"--workers", "1", "--out", (dir / "a.json").string()});
  b.insert(b.end(), {"--workers", "3", "--out", (dir / "b.json").string()});
  REQUIRE(run(a).code == 0);
  REQUIRE(run(b).code == 0);
  CHECK(slurp(dir / "a.json") == slurp(dir / "b.json"));
  const auto j = json::parse(slurp(dir / "a.json"));
  CHECK(j["monte_carlo"]["trials"] == 200);
  CHECK(j.contains("snr_convention"));
  const auto m = json::parse(slurp(dir / "a.json.manifest.json"));
  CHECK(m["tool_version"] == kToolVersion);
  CHECK(m["parameters"]["seed"] == 9);
}

TEST_CASE("sweep grid") {
  testsupport::TempDir dir;
  auto r = run({"sweep", "--delta-f", "0.25e9:0.25e9:1.5e9", "--snr", "0:2:20", "--trials", "20", "--out",
                (dir / "s.csv").string(), "--quiet"});
  REQUIRE(r.code == 0);
  const auto text = slurp(dir / "s.csv");
  CHECK(text.rfind("delta_f_hz,snr_db,crlb_std_range_m,mc_rmse_range_m,crlb_ratio,failures\n", 0) == 0);
  CHECK(count_lines(text) == 1 + 6 * 11);
  CHECK(run({"sweep", "--delta-f", "1e9:0:2e9", "--trials", "2"}).code == 1);
}

TEST_CASE("phase-center subcommand") {
  testsupport::TempDir dir;
  auto a = testsupport::point_source_cut(0.002, 0.0141, 10.49e9, -40, 40);
  auto b = testsupport::point_source_cut(0.0018, 0.0000, 1.88e9, -40, 40);
  write_far_field_csv(dir / "a.csv", {a});
  write_far_field_csv(dir / "b.csv", {b});
  auto r = run({"phase-center", "--cut", (dir / "a.csv").string(), "--cut", (dir / "b.csv").string(), "--beam",
                "-30:30", "--out", (dir / "series.csv").string()});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["stats"]["mean_z0_m"].get<double>() == doctest::Approx(0.0141).epsilon(1e-4));
  CHECK(j["stats"]["count"] == 61);
  CHECK(slurp(dir / "series.csv").rfind("theta_deg,dx0_m,dz0_m\n", 0) == 0);
  CHECK(std::filesystem::exists(dir / "series.summary.csv"));
  CHECK(run({"phase-center", "--cut", (dir / "a.csv").string()}).code == 1);
}

TEST_CASE("s11-bands subcommand") {
  testsupport::TempDir dir;
  write_touchstone(dir / "t.s1p", testsupport::three_dip_trace(testsupport::reference_dips()));
  auto r = run({"s11-bands", "--in", (dir / "t.s1p").string(), "--csv", (dir / "bands.csv").string()});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  REQUIRE(j["bands"].size() == 3);
  CHECK(j["bands"][1]["s11_min_db"].get<double>() == -12.26);
  CHECK(slurp(dir / "bands.csv").rfind("f_res_hz,s11_min_db,f_low_hz,f_high_hz,fbw\n", 0) == 0);
  r = run({"s11-bands", "--in", (dir / "t.s1p").string(), "--threshold", "-30"});
  CHECK(json::parse(r.out)["bands"].empty());
}

TEST_CASE("gain-stats subcommand") {
  testsupport::TempDir dir;
  write_far_field_csv(dir / "g.csv", {testsupport::point_source_cut(0, 0, 1.88e9, -90, 90)});
  auto r = run({"gain-stats", "--cut", (dir / "g.csv").string(), "--region", "-30:30"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["cuts"][0]["max_gain_db"].get<double>() == 5.0);
  CHECK(j["cuts"][0]["samples"] == 61);
  CHECK(run({"gain-stats", "--cut", (dir / "g.csv").string(), "--region", "30:-30"}).code == 1);
}

TEST_CASE("coherence subcommand") {
  testsupport::TempDir dir;
  auto r = run({"coherence", "--nodes", "10", "--sigma-range", "0", "--trials", "100", "--sweep", "0:0.004:0.016",
                "--sweep-out", (dir / "sw.csv").string()});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["report"]["mean_gain_fraction"].get<double>() == 1.0);
  CHECK(count_lines(slurp(dir / "sw.csv")) == 6);
  CHECK(run({"coherence", "--sigma-range", "-1"}).code == 1);
}

TEST_CASE("geometry subcommand") {
  testsupport::TempDir dir;
  REQUIRE(run({"geometry", "reference", "--out", (dir / "t1.json").string()}).code == 0);
  CHECK(run({"geometry", "validate", "--in", (dir / "t1.json").string()}).code == 0);
  auto d = reference_dimensions();
  d.lengths_mm['B'] = 60.0;
  save_dimensions(dir / "bad.json", d);
  auto r = run({"geometry", "validate", "--in", (dir / "bad.json").string()});
  CHECK(r.code == 1);
  CHECK(r.out.find("largest") != std::string::npos);
}

TEST_CASE("scenario config") {
  auto cfg = parse_scenario(R"({"seed": 5, "waveform": {"separation_hz": 1e9}, "ranging": {"snr_db": 12}})");
  CHECK(cfg.seed == 5u);
  const auto s = cfg.ranging_scenario();
  CHECK(s.snr_db == 12.0);
  CHECK(s.seed == 5u);
  CHECK(s.true_delay_s == doctest::Approx(0.5e-9));
  CHECK(parse_scenario(cfg.resolved_json()).ranging_scenario().snr_db == 12.0);
  CHECK_THROWS_AS(parse_scenario(R"({"ranging": {"snr": 12}})"), ValidationError);
  CHECK_THROWS_AS(parse_scenario(R"({"colour": 1})"), ValidationError);
  CHECK_THROWS_AS(load_scenario("/nonexistent/s.json"), IoError);

  testsupport::TempDir dir;
  std::ofstream(dir / "s.json") << R"({"seed": 3, "ranging": {"trials": 50, "snr_db": 25}})";
  auto r = run({"range-sim", "--scenario", (dir / "s.json").string()});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["monte_carlo"]["trials"] == 50);
  CHECK(j["scenario"]["seed"] == 3);
}

TEST_CASE("plot data") {
  std::ostringstream out;
  write_csv(out, CsvTable{{"a", "b"}, {{0.1, 1e-300}, {2, -3}}});
  CHECK(out.str() == "a,b\n0.1,1e-300\n2,-3\n");
  CHECK_THROWS_AS(write_csv(out, CsvTable{{"a"}, {}}), ValidationError);
  CHECK_THROWS_AS(write_csv(out, CsvTable{{"a"}, {{1, 2}}}), ValidationError);
  CHECK_THROWS_AS(emit_plot_data(CsvTable{{"a"}, {{1}}}, "/nonexistent/dir/x.csv"), IoError);
}

TEST_CASE("manifest digests") {
  testsupport::TempDir dir;
  std::ofstream(dir / "abc.txt") << "abc";
  CHECK(sha256_file(dir / "abc.txt") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
