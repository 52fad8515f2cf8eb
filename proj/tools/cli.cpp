#include "cli.hpp"

#include <filesystem>
#include <sstream>

#include "CLI11.hpp"
#include "deepwave/io.hpp"

namespace deepwave::cli {

namespace fs = std::filesystem;

namespace {

std::string join(const std::vector<double>& values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += ',';
    s += format_double(values[i]);
  }
  return s;
}

std::vector<double> quotients(const QuotientTable& table) {
  std::vector<double> q;
  for (const QuotientRow& r : table.rows) q.push_back(r.quotient);
  return q;
}

// Error class name for the single-line diagnostic.
const char* error_kind(const std::exception& e) {
  if (dynamic_cast<const InsufficientPoints*>(&e)) return "InsufficientPoints";
  if (dynamic_cast<const ValidationError*>(&e)) return "ValidationError";
  if (dynamic_cast<const ParseError*>(&e)) return "ParseError";
  if (dynamic_cast<const CflViolation*>(&e)) return "CflViolation";
  if (dynamic_cast<const NonFiniteError*>(&e)) return "NonFinite";
  if (dynamic_cast<const NoConvergence*>(&e)) return "NoConvergence";
  if (dynamic_cast<const SymmetryViolation*>(&e)) return "SymmetryViolation";
  if (dynamic_cast<const GridMismatch*>(&e)) return "GridMismatch";
  if (dynamic_cast<const UnknownKind*>(&e)) return "UnknownKind";
  if (dynamic_cast<const InvalidParam*>(&e)) return "InvalidParam";
  if (dynamic_cast<const IoError*>(&e)) return "IoError";
  return "error";
}

fs::path prepare_dir(const std::string& dir) {
  fs::path p(dir);
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec) throw IoError("cannot create output directory '" + dir + "': " + ec.message());
  return p;
}

void cmd_run(const std::string& config_path, std::ostream& out) {
  const RunConfig cfg = parse_config(config_path);
  const Grid grid = cfg.make_grid();
  const Bathymetry bathy = make_bathymetry(cfg.bathymetry, grid);
  const WaveState initial = make_initial(cfg.initial, grid);

  const RunResult result = run(initial, cfg.params, bathy, cfg.time.step, cfg.time.t_final,
                               cfg.output.snapshot_times);

  const fs::path dir = prepare_dir(cfg.output.out_dir);
  for (std::size_t k = 0; k < result.snapshots.size(); ++k) {
    write_snapshot_csv(result.snapshots[k], dir / ("snapshot_" + std::to_string(k) + ".csv"));
  }
  write_diagnostics_jsonl(result.diagnostics, dir / "diagnostics.jsonl");

  const WaveState& end = result.final_state;
  out << "run: t=" << format_double(end.time)
      << " steps=" << result.diagnostics.records.size()
      << " snapshots=" << result.snapshots.size()
      << " max_zeta=" << format_double(end.zeta.max_abs())
      << " energy0=" << format_double(energy(end, 0, cfg.params.mu)) << '\n';
}

void cmd_converge(const std::string& config_path, const std::vector<double>& dts,
                  std::ostream& out) {
  const RunConfig cfg = parse_config(config_path);
  const Grid grid = cfg.make_grid();
  const Scenario scenario{cfg.params, make_bathymetry(cfg.bathymetry, grid),
                          make_initial(cfg.initial, grid), cfg.time.t_final};
  const ErrorTable table = convergence_study(scenario, dts);
  write_error_table_csv(table, prepare_dir(cfg.output.out_dir) / "convergence.csv");
  out << "slope=" << format_double(table.slope) << '\n';
}

struct StudyGrid {
  double half_length = 30.0;
  std::size_t n_points = 512;
  double t_final = 10.0;
  std::string out_dir = ".";
};

void add_grid_options(CLI::App* cmd, StudyGrid& g) {
  cmd->add_option("--half-length", g.half_length, "Domain half-length L")->capture_default_str();
  cmd->add_option("--n", g.n_points, "Number of grid points (power of two)")->capture_default_str();
  cmd->add_option("--t-final", g.t_final, "Final time")->capture_default_str();
  cmd->add_option("--out-dir", g.out_dir, "Directory for CSV output")->capture_default_str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Split-step solver for deep-water waves over variable bathymetry", "deepwave"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<double> dts;

  auto* run_cmd = app.add_subcommand("run", "Simulate a configured scenario");
  run_cmd->add_option("config", config_path, "JSON run configuration")->required();

  auto* converge_cmd = app.add_subcommand("converge", "Self-convergence study of the splitting");
  converge_cmd->add_option("config", config_path, "JSON run configuration")->required();
  converge_cmd->add_option("--dts", dts, "Comma-separated time steps")->delimiter(',')->required();

  std::vector<double> eps_list;
  StudyGrid kdv_grid;
  auto* kdv_cmd = app.add_subcommand("kdv", "Compare against the KdV soliton for eps = mu");
  kdv_cmd->add_option("--eps", eps_list, "Comma-separated eps values")->delimiter(',')->required();
  add_grid_options(kdv_cmd, kdv_grid);

  std::vector<double> alphas;
  StudyGrid homog_grid;
  PhysicalParams homog_params{0.05, 1.0, 0.5};
  auto* homog_cmd = app.add_subcommand("homogenize", "Rapidly varying bottom cos(alpha x) vs flat");
  homog_cmd->add_option("--alphas", alphas, "Comma-separated bottom frequencies")
      ->delimiter(',')
      ->required();
  homog_cmd->add_option("--epsilon", homog_params.epsilon, "Nonlinearity")->capture_default_str();
  homog_cmd->add_option("--mu", homog_params.mu, "Shallowness")->capture_default_str();
  homog_cmd->add_option("--beta", homog_params.beta, "Bottom amplitude")->capture_default_str();
  add_grid_options(homog_cmd, homog_grid);

  StudyGrid linear_grid{30.0, 256, 1.0, "."};
  double linear_mu = 1.0;
  auto* linear_cmd = app.add_subcommand("linear-check", "Linear solver vs exact propagator");
  linear_cmd->add_option("--dts", dts, "Comma-separated time steps")->delimiter(',')->required();
  linear_cmd->add_option("--mu", linear_mu, "Shallowness")->capture_default_str();
  add_grid_options(linear_cmd, linear_grid);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    if (*run_cmd) {
      cmd_run(config_path, out);
    } else if (*converge_cmd) {
      cmd_converge(config_path, dts, out);
    } else if (*kdv_cmd) {
      const Grid grid(kdv_grid.half_length, kdv_grid.n_points);
      const QuotientTable table = kdv_comparison(eps_list, grid, kdv_grid.t_final);
      write_quotient_table_csv(table, "epsilon", prepare_dir(kdv_grid.out_dir) / "kdv_quotients.csv");
      out << "quotients=" << join(quotients(table)) << '\n';
    } else if (*homog_cmd) {
      const Grid grid(homog_grid.half_length, homog_grid.n_points);
      const QuotientTable table =
          homogenization_sweep(alphas, homog_params, grid, homog_grid.t_final);
      write_quotient_table_csv(table, "alpha",
                               prepare_dir(homog_grid.out_dir) / "homogenization.csv");
      out << "quotients=" << join(quotients(table)) << '\n';
    } else if (*linear_cmd) {
      const Grid grid(linear_grid.half_length, linear_grid.n_points);
      const ErrorTable table = linear_oracle_check(grid, linear_mu, dts, linear_grid.t_final);
      write_error_table_csv(table, prepare_dir(linear_grid.out_dir) / "linear_check.csv");
      out << "slope=" << format_double(table.slope) << '\n';
    }
  } catch (const std::exception& e) {
    std::string msg = e.what();
    for (char& c : msg) {
      if (c == '\n') c = ' ';
    }
    err << "error: " << error_kind(e) << ": " << msg << '\n';
    return 1;
  }
  return 0;
}

}  // namespace deepwave::cli
