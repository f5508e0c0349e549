#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "fde/fitting.hpp"
#include "fde/integrator.hpp"

namespace fde::cli {

/// %.17g, independent of the C locale.
std::string format_double(double v);

/// Shortest text that reads back to the same double (0.95, not 0.94999999999999996).
std::string format_shortest(double v);
/// Parses a whole field as a double. Throws ValidationError.
double parse_double(std::string_view field, std::string_view what);

/// Header `t,S_h,I_h,R_h,S_m,I_m`, one row per node. With aux, the
/// auxiliary columns V<p>_<state> of the augmented trajectory follow.
void write_trajectory(std::ostream& out, const DengueSeries& series);
void write_trajectory(std::ostream& out, const RawSeries& augmented, int order_n);

struct TrajectoryTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

TrajectoryTable read_table(std::istream& in, std::string_view source);
/// Reads back the t and five compartment columns.
DengueSeries read_trajectory(std::istream& in, std::string_view source = "<trajectory>");

/// Header `t,I_h_obs`.
void write_observed(std::ostream& out, const fitting::ObservedSeries& obs);
fitting::ObservedSeries read_observed(std::istream& in, std::string_view source = "<observed>");
fitting::ObservedSeries load_observed(const std::filesystem::path& path);

/// Header `alpha,error_pct,status`; status is ok or failed.
void write_error_curve(std::ostream& out, const std::vector<fitting::CurvePoint>& curve);

}  // namespace fde::cli
