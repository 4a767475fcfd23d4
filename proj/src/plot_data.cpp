#include "rangekit/plot_data.hpp"

#include <fstream>

#include "rangekit/errors.hpp"
#include "rangekit/numfmt.hpp"

namespace rangekit {

CsvTable to_table(const DisplacementSeries& series) {
  CsvTable t{{"theta_deg", "dx0_m", "dz0_m"}, {}};
  for (const auto& p : series.points) t.rows.push_back({p.theta_deg, p.dx0, p.dz0});
  return t;
}

CsvTable to_table(const std::vector<BandMetrics>& bands) {
  CsvTable t{{"f_res_hz", "s11_min_db", "f_low_hz", "f_high_hz", "fbw"}, {}};
  for (const auto& b : bands) t.rows.push_back({b.f_resonance, b.s11_min_db, b.f_low, b.f_high, b.fractional_bw});
  return t;
}

CsvTable to_table(const SpectrumModel& spectrum) {
  CsvTable t{{"frequency_hz", "energy_density"}, {}};
  for (const auto& b : spectrum.bins()) t.rows.push_back({b.frequency_hz, b.energy_density});
  return t;
}

void write_csv(std::ostream& out, const CsvTable& table) {
  if (table.rows.empty()) throw ValidationError("nothing to write: series is empty");
  for (std::size_t i = 0; i < table.header.size(); ++i) out << (i ? "," : "") << table.header[i];
  out << '\n';
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size()) throw ValidationError("CSV row width does not match header");
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_double(row[i]);
    out << '\n';
  }
}

void emit_plot_data(const CsvTable& table, const std::filesystem::path& path) {
  if (table.rows.empty()) throw ValidationError("nothing to write: series is empty");
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  write_csv(out, table);
  if (!out) throw IoError("error writing " + path.string());
}

}  // namespace rangekit
