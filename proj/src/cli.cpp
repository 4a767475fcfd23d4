#include "rangekit/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "config_json.hpp"
#include "rangekit/antenna_metrics.hpp"
#include "rangekit/beamform.hpp"
#include "rangekit/config.hpp"
#include "rangekit/errors.hpp"
#include "rangekit/geometry.hpp"
#include "rangekit/manifest.hpp"
#include "rangekit/numfmt.hpp"
#include "rangekit/phase_center.hpp"
#include "rangekit/plot_data.hpp"
#include "rangekit/ranging.hpp"
#include "rangekit/rng.hpp"
#include "rangekit/touchstone.hpp"
#include "rangekit/waveform.hpp"

namespace rangekit {

using nlohmann::json;

namespace {

constexpr const char* kSnrConvention =
    "SNR = |alpha|^2/N0 with a unit-energy template; var(tau) >= 1/(2 SNR zeta_f^2). "
    "Absolute accuracies depend on this convention.";

/// start:step:stop, inclusive of stop.
std::vector<double> parse_grid(const std::string& text, const std::string& what) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() == 1) return {parse_double(parts[0], what)};
  if (parts.size() != 3) throw ValidationError(what + " must be 'value' or 'start:step:stop'");
  const double start = parse_double(parts[0], what);
  const double step = parse_double(parts[1], what);
  const double stop = parse_double(parts[2], what);
  if (!(step > 0.0) || !(stop >= start)) throw ValidationError(what + " needs step > 0 and stop >= start");
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  if (count > 100000) throw ValidationError(what + " grid is too large");
  std::vector<double> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(start + static_cast<double>(i) * step);
  return out;
}

BeamRegion parse_region(const std::string& text, const std::string& what) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ValidationError(what + " must be 'min:max' in degrees");
  BeamRegion r{parse_double(text.substr(0, colon), what), parse_double(text.substr(colon + 1), what)};
  if (!(r.max_deg > r.min_deg)) throw ValidationError(what + " needs max > min");
  return r;
}

json region_json(const BeamRegion& r) { return json::array({r.min_deg, r.max_deg}); }

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot write " + path.string());
  f << text;
  if (!f) throw IoError("error writing " + path.string());
}

struct RunContext {
  std::vector<std::string> args;
  std::string started = utc_timestamp();
  std::vector<InputDigest> inputs;

  void add_input(const std::string& path) { inputs.push_back({path, sha256_file(path)}); }

  void manifest_for(const std::filesystem::path& artifact, const json& params) const {
    RunManifest m;
    m.command = args;
    m.inputs = inputs;
    m.parameters_json = params.dump();
    m.started_utc = started;
    m.finished_utc = utc_timestamp();
    write_manifest(artifact, m);
  }
};

/// Emits `text` to the file (plus manifest) or, without a path, to stdout.
void deliver(const RunContext& ctx, const std::string& out_path, const std::string& text, const json& params,
             std::ostream& out, bool quiet) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  write_text(out_path, text);
  ctx.manifest_for(out_path, params);
  if (!quiet) out << "wrote " << out_path << "\n";
}

json report_json(const MonteCarloReport& r) {
  return {{"trials", r.trials},         {"failures", r.failures},       {"rmse_tau_s", r.rmse_tau},
          {"bias_tau_s", r.bias_tau},   {"crlb_var_tau_s2", r.crlb_var_tau}, {"crlb_ratio", r.crlb_ratio},
          {"rmse_range_m", r.rmse_range}, {"crlb_std_range_m", r.crlb_std_range}};
}

CsvTable accuracy_table() {
  return {{"delta_f_hz", "snr_db", "crlb_std_range_m", "mc_rmse_range_m", "crlb_ratio", "failures"}, {}};
}

std::vector<double> accuracy_row(double delta_f, double snr_db, const MonteCarloReport& r) {
  return {delta_f, snr_db, r.crlb_std_range, r.rmse_range, r.crlb_ratio, static_cast<double>(r.failures)};
}

// splitmix64 finalizer; decorrelates per-grid-point seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// CLI11 reads "-30:30" as a short flag; glue such values to their option.
std::vector<std::string> glue_negative_values(const std::vector<std::string>& args) {
  static const std::vector<std::string> takes_value = {"--beam", "--region", "--threshold", "--snr",
                                                       "--sweep", "--delta-f", "--phi"};
  std::vector<std::string> out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const bool glue = i + 1 < args.size() && args[i + 1].size() > 1 && args[i + 1][0] == '-' &&
                      (std::isdigit(static_cast<unsigned char>(args[i + 1][1])) || args[i + 1][1] == '.') &&
                      std::find(takes_value.begin(), takes_value.end(), args[i]) != takes_value.end();
    if (glue) {
      out.push_back(args[i] + "=" + args[i + 1]);
      ++i;
    } else {
      out.push_back(args[i]);
    }
  }
  return out;
}

const FarFieldCut& pick_cut(const std::vector<FarFieldCut>& cuts, std::optional<double> phi,
                            std::optional<double> frequency, const std::string& source) {
  const FarFieldCut* found = nullptr;
  std::size_t matches = 0;
  for (const auto& c : cuts) {
    if (phi && c.phi_cut_deg != *phi) continue;
    if (frequency && c.frequency_hz != *frequency) continue;
    found = &c;
    ++matches;
  }
  if (matches == 0) throw ValidationError(source + ": no cut matches the requested phi/frequency");
  if (matches > 1) throw ValidationError(source + ": several cuts match; select one with path@frequency_hz");
  return *found;
}

// ---------------------------------------------------------------------------
// Subcommands

struct Globals {
  std::string out;
  std::uint64_t seed = 1;
  bool seed_given = false;
  bool quiet = false;
  std::string scenario;
};

ScenarioConfig load_config(const Globals& g, RunContext& ctx) {
  if (g.scenario.empty()) return {};
  ctx.add_input(g.scenario);
  return load_scenario(g.scenario);
}

struct WaveformOpts {
  double separation = 0.0;
  double sample_rate = 0.0;
  double duration = 0.0;
  double snr_db = 16.0;
};

int run_waveform(const Globals& g, const WaveformOpts& o, RunContext& ctx, std::ostream& out) {
  const ScenarioConfig cfg = load_config(g, ctx);
  WaveformConfig w = cfg.waveform.value_or(WaveformConfig{});
  if (o.separation > 0.0) w.tones = ToneSet::two_tone(o.separation);
  if (o.sample_rate > 0.0) w.sample_rate_hz = o.sample_rate;
  if (o.duration > 0.0) w.duration_s = o.duration;
  const bool two_way = cfg.ranging.value_or(RangingConfig{}).two_way;

  const SampledSignal sig = synthesize(w.tones, w.duration_s, w.sample_rate_hz);
  const SpectrumModel spec = spectrum_of(sig);
  const double analytic = mean_squared_bandwidth(SpectrumModel::analytic(w.tones));
  const double discrete = mean_squared_bandwidth(spec);
  const double span = w.tones.tones().back().frequency_hz - w.tones.tones().front().frequency_hz;

  json params = {{"tones", to_json(w.tones)},
                 {"sample_rate_hz", w.sample_rate_hz},
                 {"duration_s", w.duration_s},
                 {"snr_db", o.snr_db},
                 {"two_way", two_way}};
  json j = {{"parameters", params},
            {"samples", sig.samples.size()},
            {"zeta_f2_analytic_rad2_s2", analytic},
            {"zeta_f2_discrete_rad2_s2", discrete},
            {"discrete_over_analytic", analytic > 0.0 ? discrete / analytic : std::nan("")},
            {"snr_convention", kSnrConvention}};
  if (span > 0.0) {
    j["occupied_span_hz"] = span;
    j["zeta_f2_rect_same_span_rad2_s2"] = rect_msb(span);
    j["ratio_vs_rect"] = analytic / rect_msb(span);
  }
  if (analytic > 0.0) {
    const CrlbResult c = crlb(analytic, o.snr_db, two_way);
    j["crlb"] = {{"var_tau_s2", c.var_tau}, {"std_tau_s", c.std_tau}, {"std_range_m", c.std_range}};
  }
  if (!g.out.empty()) {
    emit_plot_data(to_table(spec), g.out);
    ctx.manifest_for(g.out, params);
  }
  if (!g.quiet || g.out.empty()) out << dump(j);
  return kExitOk;
}

struct RangeSimOpts {
  std::optional<std::size_t> trials;
  unsigned workers = 0;
  std::optional<double> snr_db;
  std::string csv;
};

int run_range_sim(const Globals& g, const RangeSimOpts& o, RunContext& ctx, std::ostream& out) {
  const ScenarioConfig cfg = load_config(g, ctx);
  RangingScenario s = cfg.ranging_scenario();
  if (g.seed_given) s.seed = g.seed;
  if (o.snr_db) s.snr_db = *o.snr_db;
  const std::size_t trials = o.trials.value_or(cfg.ranging.value_or(RangingConfig{}).trials);

  const double zeta = mean_squared_bandwidth(SpectrumModel::analytic(s.tones));
  const CrlbResult bound = crlb(zeta, s.snr_db, s.two_way);
  const MonteCarloReport rep = monte_carlo(s, trials, o.workers);

  json params = to_json(s);
  params["trials"] = trials;
  json j = {{"scenario", params},
            {"snr_convention", kSnrConvention},
            {"zeta_f2_rad2_s2", zeta},
            {"crlb", {{"var_tau_s2", bound.var_tau}, {"std_tau_s", bound.std_tau}, {"std_range_m", bound.std_range}}},
            {"monte_carlo", report_json(rep)}};
  if (auto spacing = s.tones.ambiguity_spacing()) j["ambiguity_spacing_s"] = *spacing;

  if (!o.csv.empty()) {
    CsvTable t = accuracy_table();
    const double df = s.tones.tones().back().frequency_hz - s.tones.tones().front().frequency_hz;
    t.rows.push_back(accuracy_row(df, s.snr_db, rep));
    emit_plot_data(t, o.csv);
    ctx.manifest_for(o.csv, params);
  }
  deliver(ctx, g.out, dump(j), params, out, g.quiet);
  return kExitOk;
}

struct SweepOpts {
  std::string delta_f = "0.25e9:0.25e9:1.5e9";
  std::string snr = "0:2:20";
  std::size_t trials = 1000;
  unsigned workers = 0;
  double sample_rate = 0.0;
  double duration = 0.0;
  double delay_fraction = 0.5;
  bool one_way = false;
};

int run_sweep(const Globals& g, const SweepOpts& o, RunContext& ctx, std::ostream& out) {
  const ScenarioConfig cfg = load_config(g, ctx);
  const WaveformConfig w = cfg.waveform.value_or(WaveformConfig{});
  const double fs = o.sample_rate > 0.0 ? o.sample_rate : w.sample_rate_hz;
  const double duration = o.duration > 0.0 ? o.duration : w.duration_s;
  const bool two_way = !o.one_way && cfg.ranging.value_or(RangingConfig{}).two_way;
  const std::uint64_t seed = g.seed_given ? g.seed : cfg.seed.value_or(1);
  if (!(o.delay_fraction >= 0.0 && o.delay_fraction < 1.0)) {
    throw ValidationError("--delay-fraction must lie in [0, 1)");
  }
  const auto dfs = parse_grid(o.delta_f, "--delta-f");
  const auto snrs = parse_grid(o.snr, "--snr");

  CsvTable table = accuracy_table();
  std::uint64_t index = 0;
  for (double df : dfs) {
    for (double snr : snrs) {
      RangingScenario s;
      s.tones = ToneSet::two_tone(df);
      s.sample_rate_hz = fs;
      s.duration_s = duration;
      s.snr_db = snr;
      s.two_way = two_way;
      s.true_delay_s = o.delay_fraction / df;
      s.seed = mix_seed(seed, index++);
      table.rows.push_back(accuracy_row(df, snr, monte_carlo(s, o.trials, o.workers)));
    }
  }
  json params = {{"delta_f", o.delta_f},           {"snr", o.snr},        {"trials", o.trials},
                 {"sample_rate_hz", fs},           {"duration_s", duration}, {"delay_fraction", o.delay_fraction},
                 {"two_way", two_way},             {"seed", seed}};
  std::ostringstream csv;
  write_csv(csv, table);
  deliver(ctx, g.out, csv.str(), params, out, g.quiet);
  return kExitOk;
}

struct PhaseCenterOpts {
  std::vector<std::string> cuts;
  double window = -1.0;
  std::string beam;
  double phi = 0.0;
};

int run_phase_center(const Globals& g, const PhaseCenterOpts& o, RunContext& ctx, std::ostream& out) {
  const ScenarioConfig cfg = load_config(g, ctx);
  PhaseCenterConfig pc = cfg.phase_center.value_or(PhaseCenterConfig{});
  if (o.window > 0.0) pc.window_deg = o.window;
  if (!o.beam.empty()) pc.beam = parse_region(o.beam, "--beam");
  if (o.cuts.size() != 2) throw ValidationError("phase-center needs exactly two --cut inputs");

  std::vector<FarFieldCut> picked;
  for (const auto& spec : o.cuts) {
    std::string path = spec;
    std::optional<double> freq;
    if (auto at = spec.rfind('@'); at != std::string::npos) {
      path = spec.substr(0, at);
      freq = parse_double(spec.substr(at + 1), "cut frequency");
    }
    ctx.add_input(path);
    picked.push_back(pick_cut(read_far_field_csv(path), o.phi, freq, path));
  }
  const FarFieldCut& a = picked[0];
  const FarFieldCut& b = picked[1];
  const PhaseCenterFit fa = fit_phase_center(a, pc.beam);
  const PhaseCenterFit fb = fit_phase_center(b, pc.beam);
  const DisplacementSeries series = displacement_series(a, b, pc.window_deg, pc.beam);
  const DisplacementStats st = displacement_stats(series);
  const double f_action = std::min(a.frequency_hz, b.frequency_hz);
  const double total = std::hypot(st.mean_x0, st.mean_z0);

  auto fit_json = [](const FarFieldCut& c, const PhaseCenterFit& f) {
    return json{{"frequency_hz", c.frequency_hz}, {"x0_m", f.x0}, {"z0_m", f.z0}, {"phi0_rad", f.phi0},
                {"rms_residual_rad", f.rms_residual}, {"samples", f.samples_used}};
  };
  json params = {{"cuts", o.cuts}, {"phi_deg", o.phi}, {"window_deg", pc.window_deg}, {"beam_deg", region_json(pc.beam)}};
  json j = {{"parameters", params},
            {"fit_a", fit_json(a, fa)},
            {"fit_b", fit_json(b, fb)},
            {"stats",
             {{"mean_x0_m", st.mean_x0},
              {"sd_x0_m", st.sd_x0},
              {"mean_z0_m", st.mean_z0},
              {"sd_z0_m", st.sd_z0},
              {"count", st.count},
              {"sd_defined", st.sd_defined}}},
            {"action_frequency_hz", f_action},
            {"mean_displacement_m", total},
            {"wavelength_fraction", wavelength_fraction(total, f_action)}};

  if (!g.out.empty()) {
    emit_plot_data(to_table(series), g.out);
    ctx.manifest_for(g.out, params);
    CsvTable summary{{"mean_x0_m", "sd_x0_m", "mean_z0_m", "sd_z0_m", "wavelength_fraction"},
                     {{st.mean_x0, st.sd_x0, st.mean_z0, st.sd_z0, wavelength_fraction(total, f_action)}}};
    std::filesystem::path summary_path = g.out;
    summary_path.replace_extension(".summary.csv");
    emit_plot_data(summary, summary_path);
  }
  if (!g.quiet || g.out.empty()) out << dump(j);
  return kExitOk;
}

struct BandsOpts {
  std::string in;
  double threshold = -10.0;
  std::string csv;
};

int run_s11_bands(const Globals& g, const BandsOpts& o, RunContext& ctx, std::ostream& out) {
  ctx.add_input(o.in);
  const SParamTrace trace = load_touchstone(o.in);
  const auto bands = find_bands(trace, o.threshold);
  json arr = json::array();
  for (const auto& b : bands) {
    arr.push_back({{"f_res_hz", b.f_resonance},
                   {"s11_min_db", b.s11_min_db},
                   {"f_low_hz", b.f_low},
                   {"f_high_hz", b.f_high},
                   {"fbw", b.fractional_bw},
                   {"truncated_low", b.truncated_low},
                   {"truncated_high", b.truncated_high}});
  }
  json params = {{"in", o.in}, {"threshold_db", o.threshold}};
  json j = {{"source", o.in},
            {"source_format", to_string(trace.source_format)},
            {"points", trace.points.size()},
            {"threshold_db", o.threshold},
            {"bands", arr}};
  if (!o.csv.empty() && !bands.empty()) {
    emit_plot_data(to_table(bands), o.csv);
    ctx.manifest_for(o.csv, params);
  }
  deliver(ctx, g.out, dump(j), params, out, g.quiet);
  return kExitOk;
}

struct GainOpts {
  std::string cut;
  std::string region = "-30:30";
  std::optional<double> phi;
  bool linear_mean = false;
};

int run_gain_stats(const Globals& g, const GainOpts& o, RunContext& ctx, std::ostream& out) {
  const BeamRegion region = parse_region(o.region, "--region");
  ctx.add_input(o.cut);
  const auto cuts = read_far_field_csv(o.cut);
  json arr = json::array();
  for (const auto& c : cuts) {
    if (o.phi && c.phi_cut_deg != *o.phi) continue;
    const GainStats st = gain_beam_stats(c, region);
    arr.push_back({{"frequency_hz", st.frequency_hz},
                   {"phi_deg", c.phi_cut_deg},
                   {"max_gain_db", st.max_gain_db},
                   {"mean_gain_db", o.linear_mean ? st.mean_gain_linear_db : st.mean_gain_db},
                   {"mean_gain_db_domain", st.mean_gain_db},
                   {"mean_gain_linear_domain", st.mean_gain_linear_db},
                   {"samples", st.samples}});
  }
  if (arr.empty()) throw ValidationError(o.cut + ": no cut matches --phi");
  json params = {{"cut", o.cut}, {"region_deg", region_json(region)}, {"averaging", o.linear_mean ? "linear" : "db"}};
  if (o.phi) params["phi_deg"] = *o.phi;
  json j = {{"parameters", params}, {"region_deg", region_json(region)},
            {"averaging", o.linear_mean ? "linear power" : "dB values"}, {"cuts", arr}};
  deliver(ctx, g.out, dump(j), params, out, g.quiet);
  return kExitOk;
}

struct CoherenceOpts {
  std::optional<std::size_t> nodes;
  std::optional<double> f_action;
  std::optional<double> sigma_range;
  std::optional<std::size_t> trials;
  bool two_way = false;
  unsigned workers = 0;
  std::string sweep;
  std::string sweep_out;
};

json coherence_json(const CoherentGainReport& r) {
  return {{"sigma_phi_rad", r.sigma_phi},
          {"mean_gain_fraction", r.mean_gain_fraction},
          {"std_error", r.std_error},
          {"analytic_gain_fraction", r.analytic_gain_fraction},
          {"p_gain_above_90pct", r.p_gain_above_90pct},
          {"trials", r.trials}};
}

int run_coherence(const Globals& g, const CoherenceOpts& o, RunContext& ctx, std::ostream& out) {
  const ScenarioConfig cfg = load_config(g, ctx);
  CoherenceScenario s = cfg.coherence_scenario();
  if (o.nodes) s.n_nodes = *o.nodes;
  if (o.f_action) s.f_action_hz = *o.f_action;
  if (o.sigma_range) s.sigma_range_m = *o.sigma_range;
  if (o.trials) s.trials = *o.trials;
  if (o.two_way) s.two_way = true;
  if (g.seed_given) s.seed = g.seed;

  json params = {{"n_nodes", s.n_nodes}, {"f_action_hz", s.f_action_hz}, {"sigma_range_m", s.sigma_range_m},
                 {"trials", s.trials},   {"seed", s.seed},               {"two_way", s.two_way}};
  const CoherentGainReport rep = coherent_gain(s, o.workers);
  json j = {{"parameters", params}, {"report", coherence_json(rep)}};

  if (!o.sweep.empty()) {
    if (o.sweep_out.empty()) throw ValidationError("--sweep needs --sweep-out");
    CsvTable t{{"sigma_range_m", "sigma_phi_rad", "mean_gain_fraction", "analytic_gain_fraction", "p_gain_above_90pct"},
               {}};
    for (double sr : parse_grid(o.sweep, "--sweep")) {
      CoherenceScenario p = s;
      p.sigma_range_m = sr;
      const CoherentGainReport r = coherent_gain(p, o.workers);
      t.rows.push_back({sr, r.sigma_phi, r.mean_gain_fraction, r.analytic_gain_fraction, r.p_gain_above_90pct});
    }
    json sweep_params = params;
    sweep_params["sweep"] = o.sweep;
    emit_plot_data(t, o.sweep_out);
    ctx.manifest_for(o.sweep_out, sweep_params);
  }
  deliver(ctx, g.out, dump(j), params, out, g.quiet);
  return kExitOk;
}

int run_geometry_validate(const Globals& g, const std::string& in, RunContext& ctx, std::ostream& out) {
  ctx.add_input(in);
  const PatchDimensions dims = load_dimensions(in);
  const auto violations = validate(dims);
  json arr = json::array();
  for (const auto& v : violations) arr.push_back({{"rule", v.rule}, {"message", v.message}});
  json j = {{"source", in}, {"violations", arr}, {"valid", violations.empty()}};
  deliver(ctx, g.out, dump(j), json{{"in", in}}, out, g.quiet);
  return violations.empty() ? kExitOk : kExitValidation;
}

int run_geometry_reference(const Globals& g, RunContext& ctx, std::ostream& out) {
  deliver(ctx, g.out, dimensions_to_json(reference_dimensions()), json::object(), out, g.quiet);
  return kExitOk;
}

}  // namespace

int dispatch(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-tone ranging accuracy and antenna measurement toolkit", "rangekit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  Globals g;
  auto add_globals = [&](CLI::App* sub, bool with_scenario) {
    sub->add_option("--out", g.out, "Output file (stdout if omitted)");
    sub->add_option("--seed", g.seed, "Master seed")->each([&](const std::string&) { g.seed_given = true; });
    sub->add_flag("--quiet", g.quiet, "Suppress the stdout summary when writing files");
    if (with_scenario) sub->add_option("--scenario", g.scenario, "Scenario JSON file");
  };

  WaveformOpts wo;
  auto* waveform = app.add_subcommand("waveform", "Synthesize a tone set, report zeta_f^2 and export its spectrum");
  add_globals(waveform, true);
  waveform->add_option("--separation", wo.separation, "Two-tone separation in Hz (overrides scenario tones)");
  waveform->add_option("--sample-rate", wo.sample_rate, "Sample rate in Hz");
  waveform->add_option("--duration", wo.duration, "Record length in s");
  waveform->add_option("--snr", wo.snr_db, "SNR in dB for the reported bound");

  RangeSimOpts ro;
  double range_snr = 0.0;
  std::size_t range_trials = 0;
  auto* range_sim = app.add_subcommand("range-sim", "Monte Carlo delay estimation against the bound");
  add_globals(range_sim, true);
  auto* range_trials_opt = range_sim->add_option("--trials", range_trials, "Number of trials");
  range_sim->add_option("--workers", ro.workers, "Worker threads (0 = all cores)");
  auto* range_snr_opt = range_sim->add_option("--snr", range_snr, "SNR in dB (overrides scenario)");
  range_sim->add_option("--csv", ro.csv, "Also write the accuracy CSV row here");

  SweepOpts so;
  auto* sweep = app.add_subcommand("sweep", "Accuracy surface over tone separation and SNR");
  add_globals(sweep, true);
  sweep->add_option("--delta-f", so.delta_f, "Separation grid start:step:stop in Hz");
  sweep->add_option("--snr", so.snr, "SNR grid start:step:stop in dB");
  sweep->add_option("--trials", so.trials, "Trials per grid point");
  sweep->add_option("--workers", so.workers, "Worker threads (0 = all cores)");
  sweep->add_option("--sample-rate", so.sample_rate, "Sample rate in Hz");
  sweep->add_option("--duration", so.duration, "Record length in s");
  sweep->add_option("--delay-fraction", so.delay_fraction, "True delay as a fraction of 1/delta_f");
  sweep->add_flag("--one-way", so.one_way, "Report one-way range accuracy");

  PhaseCenterOpts po;
  auto* phase = app.add_subcommand("phase-center", "Phase-center displacement between two far-field cuts");
  add_globals(phase, true);
  phase->add_option("--cut", po.cuts, "Far-field CSV, optionally path@frequency_hz (give twice)")->required();
  phase->add_option("--window", po.window, "Sliding window width in deg");
  phase->add_option("--beam", po.beam, "Beam region min:max in deg");
  phase->add_option("--phi", po.phi, "Cut plane phi in deg");

  BandsOpts bo;
  auto* bands = app.add_subcommand("s11-bands", "Resonances and fractional bandwidth from a .s1p sweep");
  add_globals(bands, false);
  bands->add_option("--in", bo.in, "Touchstone .s1p file")->required();
  bands->add_option("--threshold", bo.threshold, "Threshold in dB");
  bands->add_option("--csv", bo.csv, "Also write band rows as CSV");

  GainOpts go;
  double gain_phi = 0.0;
  auto* gain = app.add_subcommand("gain-stats", "Max and mean gain inside the main-beam region");
  add_globals(gain, false);
  gain->add_option("--cut", go.cut, "Far-field CSV")->required();
  gain->add_option("--region", go.region, "Region min:max in deg");
  auto* gain_phi_opt = gain->add_option("--phi", gain_phi, "Only cuts at this phi");
  gain->add_flag("--linear-mean", go.linear_mean, "Average linear power instead of dB values");

  CoherenceOpts co;
  std::size_t nodes = 0;
  std::size_t coh_trials = 0;
  double f_action = 0.0;
  double sigma_range = 0.0;
  auto* coherence = app.add_subcommand("coherence", "Coherent-gain loss from per-node ranging error");
  add_globals(coherence, true);
  auto* nodes_opt = coherence->add_option("--nodes", nodes, "Number of nodes");
  auto* f_action_opt = coherence->add_option("--f-action", f_action, "Coherent action frequency in Hz");
  auto* sigma_opt = coherence->add_option("--sigma-range", sigma_range, "Per-node ranging std in m");
  auto* coh_trials_opt = coherence->add_option("--trials", coh_trials, "Number of trials");
  coherence->add_flag("--two-way", co.two_way, "Position error enters the path twice");
  coherence->add_option("--workers", co.workers, "Worker threads (0 = all cores)");
  coherence->add_option("--sweep", co.sweep, "sigma_range grid start:step:stop in m");
  coherence->add_option("--sweep-out", co.sweep_out, "CSV for the sigma_range sweep");

  std::string geometry_in;
  auto* geometry = app.add_subcommand("geometry", "Patch dimension records");
  geometry->require_subcommand(1);
  auto* geo_validate = geometry->add_subcommand("validate", "Check a dimensions JSON file");
  add_globals(geo_validate, false);
  geo_validate->add_option("--in", geometry_in, "Dimensions JSON")->required();
  auto* geo_reference = geometry->add_subcommand("reference", "Print the reference dimension record");
  add_globals(geo_reference, false);

  RunContext ctx;
  ctx.args = raw_args;
  std::vector<std::string> args = glue_negative_values(raw_args);
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    if (raw_args.empty()) err << app.help();
    return kExitValidation;
  }

  try {
    if (*waveform) return run_waveform(g, wo, ctx, out);
    if (*range_sim) {
      if (*range_snr_opt) ro.snr_db = range_snr;
      if (*range_trials_opt) ro.trials = range_trials;
      return run_range_sim(g, ro, ctx, out);
    }
    if (*sweep) return run_sweep(g, so, ctx, out);
    if (*phase) return run_phase_center(g, po, ctx, out);
    if (*bands) return run_s11_bands(g, bo, ctx, out);
    if (*gain) {
      if (*gain_phi_opt) go.phi = gain_phi;
      return run_gain_stats(g, go, ctx, out);
    }
    if (*coherence) {
      if (*nodes_opt) co.nodes = nodes;
      if (*f_action_opt) co.f_action = f_action;
      if (*sigma_opt) co.sigma_range = sigma_range;
      if (*coh_trials_opt) co.trials = coh_trials;
      return run_coherence(g, co, ctx, out);
    }
    if (*geo_validate) return run_geometry_validate(g, geometry_in, ctx, out);
    if (*geo_reference) return run_geometry_reference(g, ctx, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  err << app.help();
  return kExitValidation;
}

}  // namespace rangekit
