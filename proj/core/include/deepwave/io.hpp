#pragma once

// Run configuration (JSON) and result files: CSV snapshots and error/quotient
// tables, JSON-lines per-step diagnostics. Floats are written with 17
// significant digits so every double reads back bit-exactly.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "deepwave/experiments.hpp"

namespace deepwave {

struct RunConfig {
  struct GridSection {
    double half_length = 30.0;
    std::size_t n_points = 256;
  } grid;
  PhysicalParams params;
  BathymetrySpec bathymetry;
  InitialSpec initial;
  struct TimeSection {
    double t_final = 0.0;
    StepConfig step;  ///< dt_max is always resolved after parsing
  } time;
  struct OutputSection {
    std::vector<double> snapshot_times;
    std::string out_dir = ".";
  } output;

  Grid make_grid() const { return Grid(grid.half_length, grid.n_points); }
};

/// Throws ParseError (with line/column) on malformed JSON and ValidationError
/// naming the offending field otherwise. Defaults: cfl_sigma 0.5, dt_max from
/// default_dt_max(grid, mu), bathymetry flat, initial sech_pulse, out_dir ".".
RunConfig parse_config_text(std::string_view text);
RunConfig parse_config(const std::filesystem::path& path);

/// Serialises every field; parse_config_text(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& config);

bool operator==(const RunConfig& a, const RunConfig& b);

/// `value` in general notation with 17 significant digits.
std::string format_double(double value);

/// Header `x,zeta,v`, one row per node, LF endings. Throws IoError.
void write_snapshot_csv(const WaveState& state, const std::filesystem::path& path);

struct SnapshotTable {
  std::vector<double> x;
  std::vector<double> zeta;
  std::vector<double> v;
};

/// Reads a file produced by write_snapshot_csv. Throws IoError.
SnapshotTable read_snapshot_csv(const std::filesystem::path& path);

/// Header `dt,error`, rows in table order, then `# slope=<value>`.
void write_error_table_csv(const ErrorTable& table, const std::filesystem::path& path);

/// Header `<parameter_name>,quotient`.
void write_quotient_table_csv(const QuotientTable& table, std::string_view parameter_name,
                              const std::filesystem::path& path);

/// One object per step with keys t, dt, energy0, max_zeta, max_v, mass, momentum.
void write_diagnostics_jsonl(const Diagnostics& diagnostics, const std::filesystem::path& path);

}  // namespace deepwave
