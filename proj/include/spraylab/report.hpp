#ifndef SPRAYLAB_REPORT_HPP
#define SPRAYLAB_REPORT_HPP

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace spraylab {

inline constexpr int kReportFormatVersion = 1;

struct BadReport : std::runtime_error {
  explicit BadReport(const std::string& what) : std::runtime_error(what) {}
};

// One line of the report: a named residual for one check at one point.
struct CheckRecord {
  std::string check;
  std::vector<double> point_x, point_y;
  std::string residual_name;
  double residual_value = 0;
  double tol = 0;
  bool verdict = false;
  bool skipped = false;
};

struct Report {
  int format_version = kReportFormatVersion;
  std::string config_echo;
  std::vector<CheckRecord> records;
  double wall_seconds = 0;

  int pass_count() const;
  int fail_count() const;
  int skip_count() const;
  bool all_pass() const { return fail_count() == 0; }
};

// Line-delimited JSON: one object per record, one trailing aggregate object.
void emit_report(const Report& r, std::ostream& os);
Report parse_report(std::istream& is);

}  // namespace spraylab

#endif  // SPRAYLAB_REPORT_HPP
