#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "rmt/scaled_real.hpp"

namespace rmt {

struct ReportRow {
  std::uint64_t n = 0;
  ScaledReal raw;
  double scaled = 0.0;
  double limit = 0.0;
  double abs_err = 0.0;
  double condition = 1.0;
  std::vector<double> extra;  // one value per RunReport::extra_columns
  std::string flag;           // nonempty: row refused, numeric fields are not meaningful
};

struct RunReport {
  std::string command;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  std::vector<std::string> extra_columns;
  std::vector<ReportRow> rows;
  nlohmann::ordered_json diagnostics = nlohmann::ordered_json::object();
  std::optional<double> wall_seconds;  // left empty under --deterministic

  bool has_flags() const;
};

inline constexpr const char* kReportVersion = "1.0.0";

/// Locale-independent 17-significant-digit rendering.
std::string format_double(double v);

/// Header `N,log10_f,sign,scaled,limit,abs_err,condition` followed by any
/// extra columns and, when some row is flagged, a trailing `flag` column.
/// Refused rows leave their numeric fields empty. LF line endings.
std::string to_csv(const RunReport& r);

/// {params, rows, diagnostics, version}; refused rows carry null numerics.
std::string to_json(const RunReport& r);

/// Least-squares slope of log(abs_err) against log(N) over unflagged rows
/// with positive error; empty when fewer than two such rows exist.
std::optional<double> loglog_slope(const std::vector<ReportRow>& rows);

}  // namespace rmt
