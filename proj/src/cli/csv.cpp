#include "fde/cli/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "fde/errors.hpp"

namespace fde::cli {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string format_shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const auto comma = line.find(',', pos);
    out.push_back(line.substr(pos, comma == std::string_view::npos ? line.npos : comma - pos));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::string_view chomp(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.remove_suffix(1);
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  return s;
}

}  // namespace

double parse_double(std::string_view field, std::string_view what) {
  field = chomp(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (field.empty() || res.ec != std::errc() || res.ptr != field.data() + field.size() ||
      !std::isfinite(v))
    throw ValidationError("cannot parse " + std::string(what) + " value '" + std::string(field) +
                          "'");
  return v;
}

void write_trajectory(std::ostream& out, const DengueSeries& series) {
  out << "t";
  for (auto name : dengue::kCompartmentNames) out << ',' << name;
  out << '\n';
  for (std::size_t i = 0; i < series.size(); ++i) {
    out << format_double(series.times[i]);
    for (double v : series.states[i].to_array()) out << ',' << format_double(v);
    out << '\n';
  }
}

void write_trajectory(std::ostream& out, const RawSeries& augmented, int order_n) {
  out << "t";
  for (auto name : dengue::kCompartmentNames) out << ',' << name;
  for (auto name : dengue::kCompartmentNames)
    for (int p = 2; p <= order_n; ++p) out << ",V" << p << '_' << name;
  out << '\n';
  for (std::size_t i = 0; i < augmented.size(); ++i) {
    out << format_double(augmented.times[i]);
    for (double v : augmented.states[i]) out << ',' << format_double(v);
    out << '\n';
  }
}

TrajectoryTable read_table(std::istream& in, std::string_view source) {
  TrajectoryTable table;
  std::string line;
  std::size_t line_no = 0;
  const std::string where(source);
  while (std::getline(in, line)) {
    ++line_no;
    const auto view = chomp(line);
    if (view.empty()) continue;
    const auto fields = split(view);
    if (table.header.empty()) {
      for (auto f : fields) table.header.emplace_back(chomp(f));
      continue;
    }
    if (fields.size() != table.header.size())
      throw ValidationError(where + ":" + std::to_string(line_no) + ": expected " +
                            std::to_string(table.header.size()) + " fields");
    std::vector<double> row;
    row.reserve(fields.size());
    for (std::size_t c = 0; c < fields.size(); ++c) {
      try {
        row.push_back(parse_double(fields[c], table.header[c]));
      } catch (const ValidationError& e) {
        throw ValidationError(where + ":" + std::to_string(line_no) + ": " + e.what());
      }
    }
    table.rows.push_back(std::move(row));
  }
  if (table.header.empty())
    throw ValidationError(where + ": empty file");
  return table;
}

DengueSeries read_trajectory(std::istream& in, std::string_view source) {
  const auto table = read_table(in, source);
  const std::vector<std::string> expected{"t", "S_h", "I_h", "R_h", "S_m", "I_m"};
  if (table.header.size() < expected.size() ||
      !std::equal(expected.begin(), expected.end(), table.header.begin()))
    throw ValidationError(std::string(source) + ": header must start with t,S_h,I_h,R_h,S_m,I_m");
  DengueSeries out;
  for (const auto& row : table.rows) {
    out.times.push_back(row[0]);
    out.states.push_back(dengue::StateVector::from_span(std::span(row).subspan(1, 5)));
  }
  if (out.times.size() >= 2) {
    out.grid = {out.times.front(), out.times.back(), out.times[1] - out.times[0]};
  }
  return out;
}

void write_observed(std::ostream& out, const fitting::ObservedSeries& obs) {
  out << "t,I_h_obs\n";
  for (std::size_t i = 0; i < obs.times.size(); ++i)
    out << format_double(obs.times[i]) << ',' << format_double(obs.infected[i]) << '\n';
}

fitting::ObservedSeries read_observed(std::istream& in, std::string_view source) {
  const auto table = read_table(in, source);
  if (table.header != std::vector<std::string>{"t", "I_h_obs"})
    throw ValidationError(std::string(source) + ": header must be t,I_h_obs");
  fitting::ObservedSeries obs;
  for (const auto& row : table.rows) {
    obs.times.push_back(row[0]);
    obs.infected.push_back(row[1]);
  }
  try {
    obs.validate();
  } catch (const ValidationError& e) {
    throw ValidationError(std::string(source) + ": " + e.what());
  }
  return obs;
}

fitting::ObservedSeries load_observed(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw ValidationError("cannot read observed data file " + path.string());
  return read_observed(in, path.string());
}

void write_error_curve(std::ostream& out, const std::vector<fitting::CurvePoint>& curve) {
  out << "alpha,error_pct,status\n";
  for (const auto& pt : curve) {
    out << format_shortest(pt.alpha) << ',' << format_double(pt.error_pct) << ','
        << (pt.status == fitting::RunStatus::ok ? "ok" : "failed") << '\n';
  }
}

}  // namespace fde::cli
