#include "deepwave/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace deepwave {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

// 1-based line and column of a byte offset (nlohmann reports one past the
// offending character).
std::pair<std::size_t, std::size_t> locate(std::string_view text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  const std::size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

const json* member(const json& section, const char* key) {
  auto it = section.find(key);
  return it == section.end() ? nullptr : &*it;
}

void reject_unknown_keys(const json& section, const std::string& path,
                         std::initializer_list<const char*> known) {
  for (auto it = section.begin(); it != section.end(); ++it) {
    bool ok = false;
    for (const char* k : known) ok = ok || it.key() == k;
    if (!ok) throw ValidationError(path.empty() ? it.key() : path + "." + it.key(), "unknown key");
  }
}

const json& object_at(const json& root, const char* key, bool required) {
  static const json empty = json::object();
  const json* node = member(root, key);
  if (node == nullptr) {
    if (required) throw ValidationError(key, "missing section");
    return empty;
  }
  if (!node->is_object()) throw ValidationError(key, "must be an object");
  return *node;
}

double number_at(const json& section, const std::string& path, const char* key,
                 std::optional<double> fallback = std::nullopt) {
  const json* node = member(section, key);
  const std::string field = path + "." + key;
  if (node == nullptr) {
    if (fallback) return *fallback;
    throw ValidationError(field, "missing");
  }
  if (!node->is_number()) throw ValidationError(field, "must be a number");
  const double value = node->get<double>();
  if (!std::isfinite(value)) throw ValidationError(field, "must be finite");
  return value;
}

std::string string_at(const json& section, const std::string& path, const char* key,
                      std::string fallback) {
  const json* node = member(section, key);
  if (node == nullptr) return fallback;
  if (!node->is_string()) throw ValidationError(path + "." + key, "must be a string");
  return node->get<std::string>();
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

void finish_write(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace

RunConfig parse_config_text(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, column] = locate(text, e.byte);
    throw ParseError("malformed JSON at line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + e.what(),
                     line, column);
  }
  if (!root.is_object()) throw ValidationError("(root)", "must be a JSON object");
  reject_unknown_keys(root, "", {"grid", "params", "bathymetry", "initial", "time", "output"});

  RunConfig cfg;

  const json& grid = object_at(root, "grid", true);
  reject_unknown_keys(grid, "grid", {"half_length", "n_points"});
  cfg.grid.half_length = number_at(grid, "grid", "half_length");
  if (!(cfg.grid.half_length > 0.0)) throw ValidationError("grid.half_length", "must be positive");
  {
    const json* n = member(grid, "n_points");
    if (n == nullptr) throw ValidationError("grid.n_points", "missing");
    if (!n->is_number_integer() || n->get<long long>() < 4) {
      throw ValidationError("grid.n_points", "must be an integer >= 4");
    }
    cfg.grid.n_points = n->get<std::size_t>();
    if ((cfg.grid.n_points & (cfg.grid.n_points - 1)) != 0) {
      throw ValidationError("grid.n_points", "must be a power of two");
    }
  }

  const json& params = object_at(root, "params", true);
  reject_unknown_keys(params, "params", {"epsilon", "mu", "beta"});
  cfg.params.epsilon = number_at(params, "params", "epsilon");
  cfg.params.mu = number_at(params, "params", "mu");
  cfg.params.beta = number_at(params, "params", "beta");
  if (!(cfg.params.epsilon >= 0.0 && cfg.params.epsilon <= 1.0)) {
    throw ValidationError("params.epsilon", "must lie in [0, 1]");
  }
  if (!(cfg.params.mu > 0.0)) throw ValidationError("params.mu", "must be positive");
  if (!(cfg.params.beta >= 0.0 && cfg.params.beta <= 1.0)) {
    throw ValidationError("params.beta", "must lie in [0, 1]");
  }

  const json& bathy = object_at(root, "bathymetry", false);
  reject_unknown_keys(bathy, "bathymetry", {"kind", "alpha", "beta"});
  try {
    cfg.bathymetry.kind = parse_bathymetry_kind(string_at(bathy, "bathymetry", "kind", "flat"));
  } catch (const UnknownKind& e) {
    throw ValidationError("bathymetry.kind", e.what());
  }
  cfg.bathymetry.alpha = number_at(bathy, "bathymetry", "alpha", 1.0);
  if (!(cfg.bathymetry.alpha > 0.0)) throw ValidationError("bathymetry.alpha", "must be positive");
  cfg.bathymetry.beta = number_at(bathy, "bathymetry", "beta", cfg.params.beta);

  const json& initial = object_at(root, "initial", false);
  reject_unknown_keys(initial, "initial", {"kind", "alpha"});
  try {
    cfg.initial.kind = parse_initial_kind(string_at(initial, "initial", "kind", "sech_pulse"));
  } catch (const UnknownKind& e) {
    throw ValidationError("initial.kind", e.what());
  }
  cfg.initial.alpha = number_at(initial, "initial", "alpha", 1.0);
  if (!(cfg.initial.alpha > 0.0)) throw ValidationError("initial.alpha", "must be positive");

  const json& time = object_at(root, "time", true);
  reject_unknown_keys(time, "time", {"t_final", "dt_mode", "dt_fixed", "cfl_sigma", "dt_max"});
  cfg.time.t_final = number_at(time, "time", "t_final");
  if (!(cfg.time.t_final >= 0.0)) throw ValidationError("time.t_final", "must be >= 0");
  const std::string mode = string_at(time, "time", "dt_mode", "cfl");
  if (mode == "cfl") {
    cfg.time.step.dt_mode = DtMode::cfl;
  } else if (mode == "fixed") {
    cfg.time.step.dt_mode = DtMode::fixed;
  } else {
    throw ValidationError("time.dt_mode", "must be 'cfl' or 'fixed'");
  }
  cfg.time.step.dt_fixed = number_at(time, "time", "dt_fixed", 0.0);
  if (cfg.time.step.dt_mode == DtMode::fixed && !(cfg.time.step.dt_fixed > 0.0)) {
    throw ValidationError("time.dt_fixed", "must be positive in fixed mode");
  }
  cfg.time.step.cfl_sigma = number_at(time, "time", "cfl_sigma", 0.5);
  if (!(cfg.time.step.cfl_sigma > 0.0 && cfg.time.step.cfl_sigma < 1.0)) {
    throw ValidationError("time.cfl_sigma", "must lie in (0, 1)");
  }
  const Grid g = cfg.make_grid();
  cfg.time.step.dt_max = number_at(time, "time", "dt_max", default_dt_max(g, cfg.params.mu));
  if (!(cfg.time.step.dt_max > 0.0)) throw ValidationError("time.dt_max", "must be positive");

  const json& output = object_at(root, "output", false);
  reject_unknown_keys(output, "output", {"snapshot_times", "out_dir"});
  if (const json* times = member(output, "snapshot_times")) {
    if (!times->is_array()) throw ValidationError("output.snapshot_times", "must be an array");
    for (const json& t : *times) {
      if (!t.is_number()) throw ValidationError("output.snapshot_times", "entries must be numbers");
      const double value = t.get<double>();
      if (!(value >= 0.0 && value <= cfg.time.t_final)) {
        throw ValidationError("output.snapshot_times", "entries must lie in [0, t_final]");
      }
      if (!cfg.output.snapshot_times.empty() && value < cfg.output.snapshot_times.back()) {
        throw ValidationError("output.snapshot_times", "must be sorted");
      }
      cfg.output.snapshot_times.push_back(value);
    }
  }
  cfg.output.out_dir = string_at(output, "output", "out_dir", ".");
  return cfg;
}

RunConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config_text(text.str());
}

std::string serialize_config(const RunConfig& c) {
  ordered_json root;
  root["grid"] = {{"half_length", c.grid.half_length}, {"n_points", c.grid.n_points}};
  root["params"] = {{"epsilon", c.params.epsilon}, {"mu", c.params.mu}, {"beta", c.params.beta}};
  root["bathymetry"] = {{"kind", std::string(to_string(c.bathymetry.kind))},
                        {"alpha", c.bathymetry.alpha},
                        {"beta", c.bathymetry.beta}};
  root["initial"] = {{"kind", std::string(to_string(c.initial.kind))}, {"alpha", c.initial.alpha}};
  root["time"] = {{"t_final", c.time.t_final},
                  {"dt_mode", c.time.step.dt_mode == DtMode::fixed ? "fixed" : "cfl"},
                  {"dt_fixed", c.time.step.dt_fixed},
                  {"cfl_sigma", c.time.step.cfl_sigma},
                  {"dt_max", c.time.step.dt_max}};
  root["output"] = {{"snapshot_times", c.output.snapshot_times}, {"out_dir", c.output.out_dir}};
  return root.dump(2) + "\n";
}

bool operator==(const RunConfig& a, const RunConfig& b) {
  return a.grid.half_length == b.grid.half_length && a.grid.n_points == b.grid.n_points &&
         a.params.epsilon == b.params.epsilon && a.params.mu == b.params.mu &&
         a.params.beta == b.params.beta && a.bathymetry.kind == b.bathymetry.kind &&
         a.bathymetry.alpha == b.bathymetry.alpha && a.bathymetry.beta == b.bathymetry.beta &&
         a.initial.kind == b.initial.kind && a.initial.alpha == b.initial.alpha &&
         a.time.t_final == b.time.t_final && a.time.step.dt_mode == b.time.step.dt_mode &&
         a.time.step.dt_fixed == b.time.step.dt_fixed &&
         a.time.step.cfl_sigma == b.time.step.cfl_sigma &&
         a.time.step.dt_max == b.time.step.dt_max &&
         a.output.snapshot_times == b.output.snapshot_times &&
         a.output.out_dir == b.output.out_dir;
}

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_snapshot_csv(const WaveState& state, const std::filesystem::path& path) {
  std::ofstream out = open_for_write(path);
  out << "x,zeta,v\n";
  const auto x = state.grid().nodes();
  for (std::size_t j = 0; j < x.size(); ++j) {
    out << format_double(x[j]) << ',' << format_double(state.zeta[j]) << ','
        << format_double(state.v[j]) << '\n';
  }
  finish_write(out, path);
}

SnapshotTable read_snapshot_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line) || line != "x,zeta,v") {
    throw IoError("'" + path.string() + "' does not start with the x,zeta,v header");
  }
  SnapshotTable table;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double cols[3];
    const char* p = line.data();
    const char* end = line.data() + line.size();
    for (int c = 0; c < 3; ++c) {
      const auto res = std::from_chars(p, end, cols[c]);
      if (res.ec != std::errc{}) throw IoError("bad number in '" + path.string() + "': " + line);
      p = res.ptr;
      if (c < 2) {
        if (p == end || *p != ',') throw IoError("expected ',' in '" + path.string() + "': " + line);
        ++p;
      }
    }
    if (p != end) throw IoError("trailing text in '" + path.string() + "': " + line);
    table.x.push_back(cols[0]);
    table.zeta.push_back(cols[1]);
    table.v.push_back(cols[2]);
  }
  return table;
}

void write_error_table_csv(const ErrorTable& table, const std::filesystem::path& path) {
  std::ofstream out = open_for_write(path);
  out << "dt,error\n";
  for (const ErrorRow& r : table.rows) out << format_double(r.dt) << ',' << format_double(r.error) << '\n';
  out << "# slope=" << format_double(table.slope) << '\n';
  finish_write(out, path);
}

void write_quotient_table_csv(const QuotientTable& table, std::string_view parameter_name,
                              const std::filesystem::path& path) {
  std::ofstream out = open_for_write(path);
  out << parameter_name << ",quotient\n";
  for (const QuotientRow& r : table.rows) {
    out << format_double(r.parameter) << ',' << format_double(r.quotient) << '\n';
  }
  finish_write(out, path);
}

void write_diagnostics_jsonl(const Diagnostics& diagnostics, const std::filesystem::path& path) {
  std::ofstream out = open_for_write(path);
  for (const StepRecord& r : diagnostics.records) {
    ordered_json line = {{"t", r.time},          {"dt", r.dt},       {"energy0", r.energy0},
                         {"max_zeta", r.max_zeta}, {"max_v", r.max_v}, {"mass", r.mass},
                         {"momentum", r.momentum}};
    out << line.dump() << '\n';
  }
  finish_write(out, path);
}

}  // namespace deepwave
