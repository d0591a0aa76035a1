#include "fracbv/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "fracbv/errors.hpp"

namespace fracbv {

std::string format_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& text, const std::string& where) {
  const std::string t = trim(text);
  if (t == "inf" || t == "+inf" || t == "Infinity" || t == "+Infinity") return kInf;
  if (t == "-inf" || t == "-Infinity") return -kInf;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw ValidationError(where + ": cannot parse number '" + t + "'");
  }
  if (used != t.size() || std::isnan(v)) throw ValidationError(where + ": cannot parse number '" + t + "'");
  return v;
}

}  // namespace

StepFunction parse_step_csv(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  std::vector<double> xr;
  std::vector<double> values;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      if (t != "x_right,value") throw ValidationError(source + ": expected header 'x_right,value'");
      continue;
    }
    const auto comma = t.find(',');
    const std::string where = source + ":" + std::to_string(line_no);
    if (comma == std::string::npos || t.find(',', comma + 1) != std::string::npos) {
      throw ValidationError(where + ": expected two columns");
    }
    xr.push_back(parse_real(t.substr(0, comma), where));
    values.push_back(parse_real(t.substr(comma + 1), where));
    if (!std::isfinite(values.back())) throw ValidationError(where + ": value must be finite");
  }
  if (!header_seen) throw ValidationError(source + ": empty file");
  std::size_t first = 0;
  if (!xr.empty() && xr.front() == -kInf) {
    // The leading -inf row names the left tail; the next row must agree.
    if (xr.size() < 2 || values[1] != values[0]) {
      throw ValidationError(source + ": left-tail row disagrees with the next row");
    }
    first = 1;
  }
  if (xr.size() <= first || xr.back() != kInf) throw ValidationError(source + ": last row must be '+inf,<value>'");
  std::vector<double> bps;
  std::vector<double> lv;
  for (std::size_t i = first; i + 1 < xr.size(); ++i) {
    if (!std::isfinite(xr[i])) throw ValidationError(source + ": interior x_right values must be finite");
    if (!bps.empty() && !(xr[i] > bps.back())) throw ValidationError(source + ": x_right must increase strictly");
    bps.push_back(xr[i]);
    lv.push_back(values[i]);
  }
  lv.push_back(values.back());
  if (bps.empty()) return StepFunction::constant(lv.back());
  return StepFunction(std::move(bps), std::move(lv));
}

StepFunction read_step_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open step CSV '" + path.string() + "'");
  return parse_step_csv(in, path.string());
}

void write_step_csv(std::ostream& out, const StepFunction& u) {
  out << "x_right,value\n";
  const auto bps = u.breakpoints();
  const auto lv = u.levels();
  out << "-inf," << format_double(lv.front()) << '\n';
  for (std::size_t i = 0; i < bps.size(); ++i) out << format_double(bps[i]) << ',' << format_double(lv[i]) << '\n';
  out << "+inf," << format_double(lv.back()) << '\n';
}

void write_grid_csv(std::ostream& out, const GridFunction& u) {
  out << "x,value\n";
  for (std::size_t i = 0; i < u.size(); ++i) out << format_double(u.x(i)) << ',' << format_double(u.samples()[i]) << '\n';
}

std::vector<double> parse_real_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (trim(item).empty()) throw ValidationError(what + ": empty entry in list '" + text + "'");
    out.push_back(parse_real(item, what));
  }
  if (out.empty()) throw ValidationError(what + ": empty list");
  return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write '" + path.string() + "'");
  out << content;
}

}  // namespace fracbv
