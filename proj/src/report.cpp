#include "rmt/report.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace rmt {
namespace {

using nlohmann::ordered_json;

ordered_json number_or_null(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

}  // namespace

bool RunReport::has_flags() const {
  for (const ReportRow& row : rows) {
    if (!row.flag.empty()) return true;
  }
  return false;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  if (res.ec != std::errc{}) throw std::logic_error("format_double: buffer too small");
  return std::string(buf, res.ptr);
}

std::string to_csv(const RunReport& r) {
  const bool flags = r.has_flags();
  std::ostringstream out;
  out << "N,log10_f,sign,scaled,limit,abs_err,condition";
  for (const std::string& c : r.extra_columns) out << ',' << c;
  if (flags) out << ",flag";
  out << '\n';
  for (const ReportRow& row : r.rows) {
    out << row.n << ',';
    if (row.flag.empty()) {
      out << format_double(row.raw.log10_mag()) << ',' << row.raw.sign() << ',' << format_double(row.scaled) << ','
          << format_double(row.limit) << ',' << format_double(row.abs_err) << ',' << format_double(row.condition);
      for (double x : row.extra) out << ',' << format_double(x);
    } else {
      out << ",,," << format_double(row.limit) << ",,";
      for (std::size_t i = 0; i < r.extra_columns.size(); ++i) out << ',';
    }
    if (flags) out << ',' << row.flag;
    out << '\n';
  }
  return out.str();
}

std::string to_json(const RunReport& r) {
  ordered_json doc;
  ordered_json params = r.params;
  params["command"] = r.command;
  doc["params"] = params;
  ordered_json rows = ordered_json::array();
  for (const ReportRow& row : r.rows) {
    ordered_json j;
    j["N"] = row.n;
    const bool ok = row.flag.empty();
    j["log10_f"] = ok ? number_or_null(row.raw.log10_mag()) : nullptr;
    j["sign"] = ok ? ordered_json(row.raw.sign()) : nullptr;
    j["scaled"] = ok ? number_or_null(row.scaled) : nullptr;
    j["limit"] = number_or_null(row.limit);
    j["abs_err"] = ok ? number_or_null(row.abs_err) : nullptr;
    j["condition"] = ok ? number_or_null(row.condition) : nullptr;
    for (std::size_t i = 0; i < r.extra_columns.size(); ++i) {
      j[r.extra_columns[i]] = ok && i < row.extra.size() ? number_or_null(row.extra[i]) : nullptr;
    }
    if (!ok) j["flag"] = row.flag;
    rows.push_back(std::move(j));
  }
  doc["rows"] = std::move(rows);
  ordered_json diag = r.diagnostics;
  if (r.wall_seconds) diag["wall_seconds"] = *r.wall_seconds;
  doc["diagnostics"] = std::move(diag);
  doc["version"] = kReportVersion;
  return doc.dump(2) + "\n";
}

std::optional<double> loglog_slope(const std::vector<ReportRow>& rows) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int k = 0;
  for (const ReportRow& row : rows) {
    if (!row.flag.empty() || !(row.abs_err > 0.0) || row.n == 0) continue;
    const double x = std::log(static_cast<double>(row.n)), y = std::log(row.abs_err);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++k;
  }
  if (k < 2) return std::nullopt;
  const double den = k * sxx - sx * sx;
  if (den == 0.0) return std::nullopt;
  return (k * sxy - sx * sy) / den;
}

}  // namespace rmt
