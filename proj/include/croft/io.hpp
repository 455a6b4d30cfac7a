#pragma once

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iterator>
#include <limits>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <nlohmann/json.hpp>

#include "croft/ansatz.hpp"
#include "croft/lattice.hpp"
#include "croft/tortoise.hpp"

namespace croft::io {

using nlohmann::json;

/// Shortest decimal form that parses back to the same double.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, res.ptr};
}

inline double parse_double(std::string_view s) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw ValidationError("not a number: '" + std::string(s) + "'");
  }
  return v;
}

/// Fixed 15-significant-digit rendering for human-readable tables.
inline std::string fixed15(double v) {
  std::ostringstream os;
  os << std::setprecision(15) << v;
  return os.str();
}

// ---- q-spec ---------------------------------------------------------------

/// {"breaks": [[num, den], …] (multiples of π), "values": […], "shift": [x, y]}
inline json family_to_json(const Family& f) {
  json breaks = json::array();
  for (const auto& b : f.q.breaks()) breaks.push_back({b.num(), b.den()});
  json values = json::array();
  for (double v : f.q.values()) values.push_back(v);
  return {{"breaks", breaks}, {"values", values}, {"shift", {f.shift.x, f.shift.y}}};
}

inline Family family_from_json(const json& j) {
  try {
    std::vector<PiMultiple> breaks;
    for (const auto& b : j.at("breaks")) {
      if (!b.is_array() || b.size() != 2) throw ValidationError("break must be [num, den]");
      breaks.emplace_back(b[0].get<std::int64_t>(), b[1].get<std::int64_t>());
    }
    auto values = j.at("values").get<std::vector<double>>();
    Vec2 shift;
    if (j.contains("shift")) {
      const auto s = j.at("shift").get<std::vector<double>>();
      if (s.size() != 2) throw ValidationError("shift must have two components");
      shift = {s[0], s[1]};
    }
    return {make_step_function(std::move(breaks), std::move(values)), shift};
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed q-spec: ") + e.what());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
  if (!out) throw Error("write failed for " + path);
}

inline Family load_family(const std::string& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw ValidationError(path + ": " + e.what());
  }
  return family_from_json(j);
}

// ---- density records ------------------------------------------------------

inline std::string csv_header() {
  std::string h = "epsilon,mode,area,density";
  for (int k = 0; k < 3; ++k) {
    const auto s = std::to_string(k);
    h += ",s_min" + s + ",delta_min" + s + ",cap_area" + s;
  }
  return h + ",error";
}

inline std::string csv_quote(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string to_csv(const std::vector<DensityRecord>& records) {
  std::string out = csv_header() + "\n";
  for (const auto& r : records) {
    out += format_double(r.epsilon) + "," + std::string(mode_name(r.mode)) + "," + format_double(r.area) +
           "," + format_double(r.density);
    for (const auto& e : r.edges) {
      out += "," + format_double(e.shift) + "," + format_double(e.tilt) + "," + format_double(e.cap_area);
    }
    out += "," + csv_quote(r.error) + "\n";
  }
  return out;
}

namespace detail {

inline std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> cells(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cells.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cells.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.emplace_back();
    } else {
      cells.back() += c;
    }
  }
  return cells;
}

inline Mode mode_or_throw(std::string_view s) {
  const auto m = parse_mode(s);
  if (!m) throw ValidationError("unknown mode '" + std::string(s) + "'");
  return *m;
}

}  // namespace detail

inline std::vector<DensityRecord> records_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != csv_header()) throw ValidationError("unexpected CSV header");
  std::vector<DensityRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = detail::split_csv_line(line);
    if (cells.size() != 14) throw ValidationError("CSV row has " + std::to_string(cells.size()) + " cells");
    DensityRecord r;
    r.epsilon = parse_double(cells[0]);
    r.mode = detail::mode_or_throw(cells[1]);
    r.area = parse_double(cells[2]);
    r.density = parse_double(cells[3]);
    for (std::size_t k = 0; k < 3; ++k) {
      r.edges[k] = {parse_double(cells[4 + 3 * k]), parse_double(cells[5 + 3 * k]),
                    parse_double(cells[6 + 3 * k])};
    }
    r.error = cells[13];
    out.push_back(std::move(r));
  }
  return out;
}

/// Doubles are stored as strings so that non-finite values and exact round
/// trips survive JSON.
inline json to_json(const DensityRecord& r) {
  json edges = json::array();
  for (const auto& e : r.edges) {
    edges.push_back({{"s_min", format_double(e.shift)},
                     {"delta_min", format_double(e.tilt)},
                     {"cap_area", format_double(e.cap_area)}});
  }
  json j{{"epsilon", format_double(r.epsilon)},
         {"mode", mode_name(r.mode)},
         {"area", format_double(r.area)},
         {"density", format_double(r.density)},
         {"edges", edges}};
  if (!r.ok()) j["error"] = r.error;
  return j;
}

inline json to_json(const std::vector<DensityRecord>& records) {
  json a = json::array();
  for (const auto& r : records) a.push_back(to_json(r));
  return a;
}

inline std::vector<DensityRecord> records_from_json(const std::string& text) {
  try {
    std::vector<DensityRecord> out;
    for (const auto& j : json::parse(text)) {
      DensityRecord r;
      r.epsilon = parse_double(j.at("epsilon").get<std::string>());
      r.mode = detail::mode_or_throw(j.at("mode").get<std::string>());
      r.area = parse_double(j.at("area").get<std::string>());
      r.density = parse_double(j.at("density").get<std::string>());
      const auto& edges = j.at("edges");
      if (edges.size() != 3) throw ValidationError("record needs three edges");
      for (std::size_t k = 0; k < 3; ++k) {
        r.edges[k] = {parse_double(edges[k].at("s_min").get<std::string>()),
                      parse_double(edges[k].at("delta_min").get<std::string>()),
                      parse_double(edges[k].at("cap_area").get<std::string>())};
      }
      if (j.contains("error")) r.error = j.at("error").get<std::string>();
      out.push_back(std::move(r));
    }
    return out;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed records: ") + e.what());
  }
}

// ---- reports --------------------------------------------------------------

inline json to_json(const AvoidanceReport& rep) {
  json edges = json::array();
  for (const auto& m : rep.edges) {
    edges.push_back({{"left", {m.left_i, m.left_j}},
                     {"right", {m.right_i, m.right_j}},
                     {"class", m.k},
                     {"gap", m.gap},
                     {"min_cross_distance", m.min_cross}});
  }
  return {{"epsilon", rep.epsilon},
          {"ok", rep.ok()},
          {"max_self_distance", rep.max_self_distance},
          {"edges", edges},
          {"violations", rep.violations}};
}

inline json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

inline json to_json(const QuadraticForm& Q, const Spectrum& s) {
  const AnsatzVector top = ansatz_direction(Q, s);
  const AnsatzVector ref = reference_ansatz_vector();
  json compare = json::array();
  for (Eigen::Index i = 0; i < top.size(); ++i) {
    compare.push_back({{"index", i}, {"eigenvector", top(i)}, {"reference", ref(i)}, {"difference", top(i) - ref(i)}});
  }
  return {{"mode", mode_name(Q.mode)},
          {"step", Q.step},
          {"asymmetry", Q.asymmetry},
          {"step_error", Q.step_error},
          {"basis", "orthonormal null space of the 2 closure constraints in 12 q values, plus 2 shifts"},
          {"matrix", matrix_to_json(Q.matrix)},
          {"eigenvalues", s.values},
          {"eigenvectors", matrix_to_json(s.vectors)},
          {"signature", {{"positive", s.positive}, {"negative", s.negative}, {"zero", s.zero}}},
          {"top_direction", compare}};
}

/// index, eigenvector entry, reference constant, difference.
inline std::string eigenvector_csv(const QuadraticForm& Q, const Spectrum& s) {
  const AnsatzVector top = ansatz_direction(Q, s);
  const AnsatzVector ref = reference_ansatz_vector();
  std::string out = "index,eigenvector,reference,difference\n";
  for (Eigen::Index i = 0; i < top.size(); ++i) {
    out += std::to_string(i) + "," + format_double(top(i)) + "," + format_double(ref(i)) + "," +
           format_double(top(i) - ref(i)) + "\n";
  }
  return out;
}

}  // namespace croft::io
