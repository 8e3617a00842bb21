#include "helastic/curve_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "helastic/errors.hpp"

namespace helastic {

std::string format_real(double v) {
  char buf[64];
  const int n = std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf, static_cast<std::size_t>(n));
}

std::string serialize_curve_json(const DiscreteCurve& c) {
  std::string out = "[\n";
  for (std::size_t i = 0; i < c.size(); ++i) {
    out += "  [" + format_real(c[i].y1()) + ", " + format_real(c[i].y2()) + "]";
    out += (i + 1 < c.size()) ? ",\n" : "\n";
  }
  out += "]\n";
  return out;
}

namespace {

std::vector<HPoint> to_points(const std::vector<std::pair<double, double>>& rows) {
  std::vector<HPoint> pts;
  pts.reserve(rows.size());
  for (const auto& [a, b] : rows) {
    try {
      pts.emplace_back(a, b);
    } catch (const DomainError& e) {
      throw ContractError(std::string("curve sample outside the half-plane: ") + e.what());
    }
  }
  return pts;
}

double parse_number(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ContractError("not a number: '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

DiscreteCurve parse_curve_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ContractError(std::string("curve JSON: ") + e.what());
  }
  if (!j.is_array()) throw ContractError("curve JSON: expected an array of [y1, y2] pairs");
  std::vector<std::pair<double, double>> rows;
  rows.reserve(j.size());
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != 2 || !row[0].is_number() || !row[1].is_number()) {
      throw ContractError("curve JSON: every row must be [y1, y2]");
    }
    rows.emplace_back(row[0].get<double>(), row[1].get<double>());
  }
  return DiscreteCurve(to_points(rows));
}

std::string serialize_curve_csv(const DiscreteCurve& c) {
  std::string out = "y1,y2\n";
  for (const auto& p : c.points()) out += format_real(p.y1()) + "," + format_real(p.y2()) + "\n";
  return out;
}

DiscreteCurve parse_curve_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw ContractError("curve CSV: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "y1,y2") throw ContractError("curve CSV: header must be 'y1,y2'");
  std::vector<std::pair<double, double>> rows;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ContractError("curve CSV: expected two columns in '" + line + "'");
    const std::string_view sv(line);
    rows.emplace_back(parse_number(sv.substr(0, comma)), parse_number(sv.substr(comma + 1)));
  }
  return DiscreteCurve(to_points(rows));
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

DiscreteCurve read_curve(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  if (path.extension() == ".csv") return parse_curve_csv(text);
  return parse_curve_json(text);
}

void write_curve(const DiscreteCurve& c, const std::filesystem::path& path) {
  write_text_file(path, path.extension() == ".csv" ? serialize_curve_csv(c) : serialize_curve_json(c));
}

}  // namespace helastic
