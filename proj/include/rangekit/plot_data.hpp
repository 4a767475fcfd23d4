#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "rangekit/antenna_metrics.hpp"
#include "rangekit/phase_center.hpp"
#include "rangekit/waveform.hpp"

namespace rangekit {

/// Column-named numeric table, written as CSV with shortest round-trip numbers.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

CsvTable to_table(const DisplacementSeries& series);         // theta_deg,dx0_m,dz0_m
CsvTable to_table(const std::vector<BandMetrics>& bands);    // f_res_hz,s11_min_db,f_low_hz,f_high_hz,fbw
CsvTable to_table(const SpectrumModel& spectrum);            // frequency_hz,energy_density

/// Throws ValidationError for an empty table or ragged rows.
void write_csv(std::ostream& out, const CsvTable& table);
/// Same, to a file; IoError if the path is not writable.
void emit_plot_data(const CsvTable& table, const std::filesystem::path& path);

}  // namespace rangekit
