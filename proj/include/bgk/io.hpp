#pragma once

#include <charconv>
#include <chrono>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "bgk/config.hpp"
#include "bgk/error.hpp"
#include "bgk/field.hpp"
#include "bgk/moments.hpp"
#include "bgk/stepper.hpp"

namespace bgk {

inline constexpr std::string_view kToolVersion = "1.0.0";

/// Failure to read or write a file; the message carries the path.
class IoError : public Error {
 public:
  IoError(const std::filesystem::path& path, const std::string& what)
      : Error(path.string() + ": " + what), path_(path) {}
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

/// 17 significant digits, shortest "%g"-style spelling. Round-trips binary64.
inline std::string format_real(double x) {
  char buf[40];
  const auto r = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, r.ptr);
}

inline double parse_real(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double x = 0.0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), x);
  if (r.ec != std::errc{} || r.ptr != s.data() + s.size() || s.empty())
    throw Error("not a number: '" + std::string(s) + "'");
  return x;
}

// ---------------------------------------------------------------------------
// Config files: `key = value` per line, `#` starts a comment.

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

inline std::size_t parse_count(std::string_view s) {
  std::size_t n = 0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), n);
  if (r.ec != std::errc{} || r.ptr != s.data() + s.size() || s.empty())
    throw Error("not a non-negative integer: '" + std::string(s) + "'");
  return n;
}

inline bool parse_bool(std::string_view s) {
  if (s == "true") return true;
  if (s == "false") return false;
  throw Error("expected true or false, got '" + std::string(s) + "'");
}

}  // namespace detail

/// Parses a config document; missing keys keep their defaults (the Riemann
/// problem on [-1.25, 1.25] x [-7, 7]). Throws ConfigError with the line
/// number for syntax errors and unknown keys, and for range violations.
inline SolverConfig parse_config(std::string_view text) {
  SolverConfig c;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("expected 'key = value'", line_no);
    const auto key = detail::trim(line.substr(0, eq));
    const auto value = detail::trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("missing key", line_no);
    if (value.empty()) throw ConfigError("missing value for '" + std::string(key) + "'", line_no);

    try {
      auto& r = c.run;
      auto& g = c.grid;
      if (key == "nx") g.n_x = detail::parse_count(value);
      else if (key == "nv") g.n_v = detail::parse_count(value);
      else if (key == "x_low") g.x_low = parse_real(value);
      else if (key == "x_high") g.x_high = parse_real(value);
      else if (key == "v_low") g.v_low = parse_real(value);
      else if (key == "v_high") g.v_high = parse_real(value);
      else if (key == "epsilon") r.epsilon = parse_real(value);
      else if (key == "cfl") r.cfl = parse_real(value);
      else if (key == "final_time") r.final_time = parse_real(value);
      else if (key == "inner_halfwidth") r.ic.inner_halfwidth = parse_real(value);
      else if (key == "rho_inner") r.ic.inner.rho = parse_real(value);
      else if (key == "u_inner") r.ic.inner.u = parse_real(value);
      else if (key == "T_inner") r.ic.inner.T = parse_real(value);
      else if (key == "rho_outer") r.ic.outer.rho = parse_real(value);
      else if (key == "u_outer") r.ic.outer.u = parse_real(value);
      else if (key == "T_outer") r.ic.outer.T = parse_real(value);
      else if (key == "correction") r.correction_enabled = detail::parse_bool(value);
      else if (key == "output_every") r.output_every = detail::parse_count(value);
      else if (key == "output_dir") c.output_dir = std::string(value);
      else throw ConfigError("unknown key '" + std::string(key) + "'", line_no);
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      throw ConfigError(std::string(key) + ": " + e.what(), line_no);
    }
  }
  validate(c);
  return c;
}

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path, "cannot open for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline SolverConfig load_config(const std::filesystem::path& path) {
  return parse_config(read_text_file(path));
}

namespace detail {

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path, "cannot open for writing");
  out << text;
  out.flush();
  if (!out) throw IoError(path, "write failed");
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const auto next = s.find(sep, pos);
    out.push_back(s.substr(pos, next == s.npos ? s.npos : next - pos));
    if (next == s.npos) break;
    pos = next + 1;
  }
  return out;
}

inline std::vector<std::string_view> lines(std::string_view s) {
  auto out = split(s, '\n');
  if (!out.empty() && out.back().empty()) out.pop_back();
  for (auto& l : out)
    if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Phase-space snapshots: `#` header lines, then one line per spatial cell
// (ascending i) holding the n_v values in ascending j.

inline std::string format_snapshot(const DistributionField& f, double time) {
  const auto& g = f.grid();
  std::string s;
  s += "# time = " + format_real(time) + "\n";
  s += "# n_x = " + std::to_string(g.n_x) + "\n";
  s += "# n_v = " + std::to_string(g.n_v) + "\n";
  s += "# x_low = " + format_real(g.x_low) + "\n";
  s += "# x_high = " + format_real(g.x_high) + "\n";
  s += "# v_low = " + format_real(g.v_low) + "\n";
  s += "# v_high = " + format_real(g.v_high) + "\n";
  for (std::size_t i = 0; i < g.n_x; ++i) {
    for (std::size_t j = 0; j < g.n_v; ++j) {
      if (j) s += ',';
      s += format_real(f(i, j));
    }
    s += '\n';
  }
  return s;
}

inline void write_snapshot(const DistributionField& f, double time,
                           const std::filesystem::path& path) {
  detail::write_text_file(path, format_snapshot(f, time));
}

struct SnapshotData {
  double time;
  GridSpec grid;
  std::vector<double> values;  ///< row-major, velocity index fastest
};

inline SnapshotData parse_snapshot(std::string_view text) {
  SnapshotData d{0.0, {}, {}};
  bool seen[7] = {};
  std::size_t line_no = 0;
  std::size_t rows = 0;
  for (auto line : detail::lines(text)) {
    ++line_no;
    if (line.starts_with('#')) {
      const auto body = detail::trim(line.substr(1));
      const auto eq = body.find('=');
      if (eq == body.npos) continue;
      const auto key = detail::trim(body.substr(0, eq));
      const auto value = detail::trim(body.substr(eq + 1));
      try {
        if (key == "time") d.time = parse_real(value), seen[0] = true;
        else if (key == "n_x") d.grid.n_x = detail::parse_count(value), seen[1] = true;
        else if (key == "n_v") d.grid.n_v = detail::parse_count(value), seen[2] = true;
        else if (key == "x_low") d.grid.x_low = parse_real(value), seen[3] = true;
        else if (key == "x_high") d.grid.x_high = parse_real(value), seen[4] = true;
        else if (key == "v_low") d.grid.v_low = parse_real(value), seen[5] = true;
        else if (key == "v_high") d.grid.v_high = parse_real(value), seen[6] = true;
      } catch (const Error& e) {
        throw ConfigError(e.what(), line_no);
      }
      continue;
    }
    for (bool s : seen)
      if (!s) throw ConfigError("snapshot header incomplete before data", line_no);
    const auto cells = detail::split(line, ',');
    if (cells.size() != d.grid.n_v)
      throw ConfigError("expected " + std::to_string(d.grid.n_v) + " values", line_no);
    try {
      for (auto c : cells) d.values.push_back(parse_real(c));
    } catch (const Error& e) {
      throw ConfigError(e.what(), line_no);
    }
    ++rows;
  }
  if (rows != d.grid.n_x)
    throw ConfigError("expected " + std::to_string(d.grid.n_x) + " data rows, found " +
                      std::to_string(rows));
  return d;
}

inline SnapshotData read_snapshot(const std::filesystem::path& path) {
  return parse_snapshot(read_text_file(path));
}

// ---------------------------------------------------------------------------
// Moments: `# time = ...`, then CSV with header x,rho,u,T,m,E.

inline std::string format_moments(const FluidMoments& m, const PhaseSpaceGrid& g, double time) {
  require_matching(m, g);
  std::string s = "# time = " + format_real(time) + "\nx,rho,u,T,m,E\n";
  for (std::size_t i = 0; i < g.n_x; ++i) {
    s += format_real(g.x_centers[i]) + ',' + format_real(m.rho[i]) + ',' + format_real(m.u[i]) +
         ',' + format_real(m.T[i]) + ',' + format_real(m.mom[i]) + ',' +
         format_real(m.energy[i]) + '\n';
  }
  return s;
}

inline void write_moments(const FluidMoments& m, const PhaseSpaceGrid& g, double time,
                          const std::filesystem::path& path) {
  detail::write_text_file(path, format_moments(m, g, time));
}

struct MomentsData {
  double time = 0.0;
  std::vector<double> x;
  FluidMoments moments;
};

inline MomentsData parse_moments(std::string_view text) {
  MomentsData d;
  bool header = false;
  std::size_t line_no = 0;
  for (auto line : detail::lines(text)) {
    ++line_no;
    if (line.starts_with('#')) {
      const auto body = detail::trim(line.substr(1));
      if (body.starts_with("time")) {
        const auto eq = body.find('=');
        if (eq != body.npos) d.time = parse_real(body.substr(eq + 1));
      }
      continue;
    }
    if (!header) {
      if (line != "x,rho,u,T,m,E") throw ConfigError("expected header x,rho,u,T,m,E", line_no);
      header = true;
      continue;
    }
    const auto cells = detail::split(line, ',');
    if (cells.size() != 6) throw ConfigError("expected 6 columns", line_no);
    try {
      d.x.push_back(parse_real(cells[0]));
      d.moments.rho.push_back(parse_real(cells[1]));
      d.moments.u.push_back(parse_real(cells[2]));
      d.moments.T.push_back(parse_real(cells[3]));
      d.moments.mom.push_back(parse_real(cells[4]));
      d.moments.energy.push_back(parse_real(cells[5]));
    } catch (const Error& e) {
      throw ConfigError(e.what(), line_no);
    }
  }
  if (!header) throw ConfigError("missing header x,rho,u,T,m,E");
  return d;
}

// ---------------------------------------------------------------------------
// Conservation series: step,time,drho,dm,dE,min_f,min_mtilde

inline std::string format_conservation(const ConservationSeries& series) {
  std::string s = "step,time,drho,dm,dE,min_f,min_mtilde\n";
  for (const auto& r : series.records) {
    s += std::to_string(r.step) + ',' + format_real(r.time) + ',' + format_real(r.drho) + ',' +
         format_real(r.dm) + ',' + format_real(r.dE) + ',' + format_real(r.min_f) + ',' +
         format_real(r.min_mtilde) + '\n';
  }
  return s;
}

inline void write_conservation(const ConservationSeries& series,
                               const std::filesystem::path& path) {
  detail::write_text_file(path, format_conservation(series));
}

inline std::vector<ConservationRecord> parse_conservation(std::string_view text) {
  std::vector<ConservationRecord> out;
  std::size_t line_no = 0;
  for (auto line : detail::lines(text)) {
    ++line_no;
    if (line_no == 1) {
      if (line != "step,time,drho,dm,dE,min_f,min_mtilde")
        throw ConfigError("unexpected conservation header", line_no);
      continue;
    }
    const auto c = detail::split(line, ',');
    if (c.size() != 7) throw ConfigError("expected 7 columns", line_no);
    try {
      out.push_back({detail::parse_count(c[0]), parse_real(c[1]), parse_real(c[2]),
                     parse_real(c[3]), parse_real(c[4]), parse_real(c[5]), parse_real(c[6])});
    } catch (const Error& e) {
      throw ConfigError(e.what(), line_no);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Run metadata: the resolved parameters actually used by the stepper.

struct RunMetadata {
  SolverConfig config;
  TimeStepping timestepping;
  double dx;
  double dv;
  double v_max_abs;
  double wall_seconds = 0.0;
};

inline nlohmann::ordered_json to_json(const RunMetadata& m) {
  const auto& g = m.config.grid;
  const auto& r = m.config.run;
  nlohmann::ordered_json j;
  j["tool"] = "bgk-solver";
  j["version"] = std::string(kToolVersion);
  j["grid"] = {{"n_x", g.n_x},       {"n_v", g.n_v},       {"x_low", g.x_low},
               {"x_high", g.x_high}, {"v_low", g.v_low},   {"v_high", g.v_high},
               {"dx", m.dx},         {"dv", m.dv},         {"v_max_abs", m.v_max_abs}};
  j["epsilon"] = r.epsilon;
  j["cfl_requested"] = r.cfl;
  j["cfl_effective"] = m.timestepping.cfl_effective;
  j["final_time"] = r.final_time;
  j["dt"] = m.timestepping.dt;
  j["n_steps"] = m.timestepping.n_steps;
  j["theta_half"] = m.timestepping.theta_half;
  j["theta_formula"] = std::string(describe(m.timestepping.theta_formula));
  j["correction_enabled"] = r.correction_enabled;
  j["output_every"] = r.output_every;
  j["diagnostic_summation"] = "plain double, i ascending then j ascending";
  j["initial_condition"] = {
      {"kind", "piecewise_maxwellian"},
      {"inner_halfwidth", r.ic.inner_halfwidth},
      {"inner", {{"rho", r.ic.inner.rho}, {"u", r.ic.inner.u}, {"T", r.ic.inner.T}}},
      {"outer", {{"rho", r.ic.outer.rho}, {"u", r.ic.outer.u}, {"T", r.ic.outer.T}}}};
  j["wall_seconds"] = m.wall_seconds;
  return j;
}

inline void write_metadata(const RunMetadata& m, const std::filesystem::path& path) {
  detail::write_text_file(path, to_json(m).dump(2) + "\n");
}

}  // namespace bgk
