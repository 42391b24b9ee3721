#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "nhwigner/grid.hpp"

namespace nhwigner {

/// Shortest decimal form that round-trips a double exactly.
inline std::string fmt_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// csv-matrix: one header row "# q_grid: L N", then N rows of N values.
// Row j holds p_j = -L + j h scanning from -L to +L; column i holds q_i.
// ---------------------------------------------------------------------------

inline void write_csv_matrix(std::ostream& os, const WignerGridd& g) {
  os << "# q_grid: " << fmt_g17(g.half_width) << ' ' << g.n_points << '\n';
  for (Eigen::Index j = 0; j < g.n_points; ++j) {
    for (Eigen::Index i = 0; i < g.n_points; ++i) {
      if (i) os << ',';
      os << fmt_g17(g.values(i, j));
    }
    os << '\n';
  }
}

inline void write_csv_matrix(const std::string& path, const WignerGridd& g) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  write_csv_matrix(os, g);
  if (!os) throw std::runtime_error("write failed: " + path);
}

inline WignerGridd read_csv_matrix(std::istream& is, const std::string& what = "csv-matrix") {
  std::string header;
  if (!std::getline(is, header))
    throw std::invalid_argument(what + ": empty input");
  double half_width = 0;
  long n = 0;
  if (std::sscanf(header.c_str(), "# q_grid: %lf %ld", &half_width, &n) != 2)
    throw std::invalid_argument(what + ": bad header line: " + header);
  auto g = make_grid(half_width, n);
  std::string line;
  for (long j = 0; j < n; ++j) {
    if (!std::getline(is, line))
      throw std::invalid_argument(what + ": truncated matrix");
    std::stringstream ss(line);
    std::string cell;
    for (long i = 0; i < n; ++i) {
      if (!std::getline(ss, cell, ','))
        throw std::invalid_argument(what + ": short row");
      const double v = std::strtod(cell.c_str(), nullptr);
      if (!std::isfinite(v))
        throw std::invalid_argument(what + ": non-finite value in row " + std::to_string(j));
      g.values(i, j) = v;
    }
  }
  return g;
}

inline WignerGridd read_csv_matrix(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("cannot open: " + path);
  return read_csv_matrix(is, path);
}

// ---------------------------------------------------------------------------
// csv-series: a comma-separated header naming the columns, then one row per
// record.  Non-finite values print as nan/inf and parse back as such.
// ---------------------------------------------------------------------------

inline void write_csv_series(std::ostream& os, const std::vector<std::string>& columns,
                             const std::vector<std::vector<double>>& rows) {
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (c) os << ',';
    os << columns[c];
  }
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) os << ',';
      os << fmt_g17(row[c]);
    }
    os << '\n';
  }
}

inline void write_csv_series(const std::string& path, const std::vector<std::string>& columns,
                             const std::vector<std::vector<double>>& rows) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  write_csv_series(os, columns, rows);
}

inline std::vector<std::vector<double>> read_csv_series(std::istream& is,
                                                        std::vector<std::string>* columns) {
  std::string line;
  if (!std::getline(is, line)) throw std::invalid_argument("csv-series: empty input");
  while (!line.empty() && line.front() == '#') {  // optional comment rows
    if (columns) columns->push_back(line);
    if (!std::getline(is, line)) throw std::invalid_argument("csv-series: header only");
  }
  if (columns) {
    std::stringstream ss(line);
    std::string name;
    // the last pushed entries are comments; real column names follow
    std::vector<std::string> names;
    while (std::getline(ss, name, ',')) names.push_back(name);
    columns->insert(columns->end(), names.begin(), names.end());
  }
  std::vector<std::vector<double>> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::strtod(cell.c_str(), nullptr));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline std::vector<std::vector<double>> read_csv_series(const std::string& path,
                                                        std::vector<std::string>* columns = nullptr) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("cannot open: " + path);
  return read_csv_series(is, columns);
}

// ---------------------------------------------------------------------------
// PGM (P5) heatmap: 8-bit, mapped linearly from [-max|W|, +max|W|] so that
// byte = round(255 (v + m) / (2 m)) and zero lands on the 127/128 boundary.
// Image rows run from p = +L (top) down to p = -L.
// ---------------------------------------------------------------------------

inline void write_pgm(const std::string& path, const WignerGridd& g) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  const Eigen::Index n = g.n_points;
  os << "P5\n" << n << ' ' << n << "\n255\n";
  const double m = g.values.abs().maxCoeff();
  std::vector<std::uint8_t> row(static_cast<std::size_t>(n));
  for (Eigen::Index j = n - 1; j >= 0; --j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double v = g.values(i, j);
      // 255 (v + m) / (2 m), written so v = 0 lands exactly on 127.5
      const long byte = (m == 0.0) ? 128 : std::lround(127.5 + 127.5 * (v / m));
      row[static_cast<std::size_t>(i)] =
          static_cast<std::uint8_t>(std::min(255L, std::max(0L, byte)));
    }
    os.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(n));
  }
  if (!os) throw std::runtime_error("write failed: " + path);
}

// ---------------------------------------------------------------------------
// Flat "key = value" configuration files; '#' starts a comment line.
// ---------------------------------------------------------------------------

inline std::map<std::string, std::string> parse_config_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("cannot open config: " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  auto trim = [](std::string s) {
    const auto a = s.find_first_not_of(" \t\r");
    const auto b = s.find_last_not_of(" \t\r");
    return (a == std::string::npos) ? std::string() : s.substr(a, b - a + 1);
  };
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected key = value");
    kv[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
  }
  return kv;
}

/// Everything a single command-line run needs.  Serializes to the flat
/// config format with 17 significant digits, so save/load round-trips are
/// lossless.
struct RunConfig {
  std::string model = "elliptic";  // elliptic | hyperbolic | general
  double alpha = 1.0;
  double beta = 1.0;
  double gamma = 0.0;
  double grid_l = 6.0;
  long grid_n = 257;
  double dt = 0.0;  // 0 = half the stability bound
  double t_end = 1.0;
  int record_every = 16;
  bool normalized = false;
  int order = 4;                     // evolver spatial order (2 or 4)
  bool force_long = false;           // lift the anti-diffusive horizon cap
  std::string init = "mode";         // mode | gaussian | coeffs
  std::string modes = "0,0,+";       // n,nu,parity triples joined by ';'
  double center_q = 0.0;
  double center_p = 0.0;
  double width = 1.0;
  std::string coeffs;                // coefficient csv for init = coeffs
  int n_max = 12;
  int nu_max = 12;
  double t = 0.0;                    // sampling time for basis rendering
  double e_min = 0.0;                // energy window (0,0 = auto)
  double e_max = 0.0;
  long samples = 1001;
  bool compare_numerical = false;
  std::string input;                 // csv-matrix path for project
  std::string out;                   // output directory ("" = stdout only where sensible)
  std::string format = "csv-matrix,csv-series";

  void save(std::ostream& os) const {
    os << "model = " << model << '\n'
       << "alpha = " << fmt_g17(alpha) << '\n'
       << "beta = " << fmt_g17(beta) << '\n'
       << "gamma = " << fmt_g17(gamma) << '\n'
       << "L = " << fmt_g17(grid_l) << '\n'
       << "N = " << grid_n << '\n'
       << "dt = " << fmt_g17(dt) << '\n'
       << "t_end = " << fmt_g17(t_end) << '\n'
       << "record_every = " << record_every << '\n'
       << "normalized = " << (normalized ? "true" : "false") << '\n'
       << "order = " << order << '\n'
       << "force_long = " << (force_long ? "true" : "false") << '\n'
       << "init = " << init << '\n'
       << "modes = " << modes << '\n'
       << "center_q = " << fmt_g17(center_q) << '\n'
       << "center_p = " << fmt_g17(center_p) << '\n'
       << "width = " << fmt_g17(width) << '\n'
       << "coeffs = " << coeffs << '\n'
       << "n_max = " << n_max << '\n'
       << "nu_max = " << nu_max << '\n'
       << "t = " << fmt_g17(t) << '\n'
       << "e_min = " << fmt_g17(e_min) << '\n'
       << "e_max = " << fmt_g17(e_max) << '\n'
       << "samples = " << samples << '\n'
       << "compare_numerical = " << (compare_numerical ? "true" : "false") << '\n'
       << "input = " << input << '\n'
       << "out = " << out << '\n'
       << "format = " << format << '\n';
  }

  void save(const std::string& path) const {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    save(os);
  }

  static RunConfig load(const std::string& path) {
    RunConfig cfg;
    cfg.apply(parse_config_file(path), path);
    return cfg;
  }

  void apply(const std::map<std::string, std::string>& kv, const std::string& where) {
    auto as_double = [&](const std::string& s) { return std::strtod(s.c_str(), nullptr); };
    auto as_long = [&](const std::string& s) { return std::strtol(s.c_str(), nullptr, 10); };
    auto as_bool = [&](const std::string& s) {
      if (s == "true" || s == "1") return true;
      if (s == "false" || s == "0") return false;
      throw std::invalid_argument(where + ": bad boolean value: " + s);
    };
    for (const auto& [key, value] : kv) {
      if (key == "model") model = value;
      else if (key == "alpha") alpha = as_double(value);
      else if (key == "beta") beta = as_double(value);
      else if (key == "gamma") gamma = as_double(value);
      else if (key == "L") grid_l = as_double(value);
      else if (key == "N") grid_n = as_long(value);
      else if (key == "dt") dt = as_double(value);
      else if (key == "t_end") t_end = as_double(value);
      else if (key == "record_every") record_every = static_cast<int>(as_long(value));
      else if (key == "normalized") normalized = as_bool(value);
      else if (key == "order") order = static_cast<int>(as_long(value));
      else if (key == "force_long") force_long = as_bool(value);
      else if (key == "init") init = value;
      else if (key == "modes") modes = value;
      else if (key == "center_q") center_q = as_double(value);
      else if (key == "center_p") center_p = as_double(value);
      else if (key == "width") width = as_double(value);
      else if (key == "coeffs") coeffs = value;
      else if (key == "n_max") n_max = static_cast<int>(as_long(value));
      else if (key == "nu_max") nu_max = static_cast<int>(as_long(value));
      else if (key == "t") t = as_double(value);
      else if (key == "e_min") e_min = as_double(value);
      else if (key == "e_max") e_max = as_double(value);
      else if (key == "samples") samples = as_long(value);
      else if (key == "compare_numerical") compare_numerical = as_bool(value);
      else if (key == "input") input = value;
      else if (key == "out") out = value;
      else if (key == "format") format = value;
      else throw std::invalid_argument(where + ": unknown config key: " + key);
    }
  }
};

}  // namespace nhwigner
