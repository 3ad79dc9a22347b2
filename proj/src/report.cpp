#include "spraylab/report.hpp"

#include <istream>
#include <ostream>

#include "json.hpp"

namespace spraylab {

using nlohmann::json;

int Report::pass_count() const {
  int c = 0;
  for (const auto& r : records) c += (!r.skipped && r.verdict) ? 1 : 0;
  return c;
}
int Report::fail_count() const {
  int c = 0;
  for (const auto& r : records) c += (!r.skipped && !r.verdict) ? 1 : 0;
  return c;
}
int Report::skip_count() const {
  int c = 0;
  for (const auto& r : records) c += r.skipped ? 1 : 0;
  return c;
}

void emit_report(const Report& r, std::ostream& os) {
  for (const auto& rec : r.records) {
    json j{{"check", rec.check},
           {"point_x", rec.point_x},
           {"point_y", rec.point_y},
           {"residual_name", rec.residual_name},
           {"residual_value", rec.residual_value},
           {"tol", rec.tol},
           {"verdict", rec.skipped ? "skip" : (rec.verdict ? "pass" : "fail")}};
    os << j.dump() << '\n';
  }
  json agg{{"format_version", r.format_version},
           {"config", r.config_echo},
           {"pass_count", r.pass_count()},
           {"fail_count", r.fail_count()},
           {"skipped", r.skip_count()},
           {"wall_seconds", r.wall_seconds}};
  os << agg.dump() << '\n';
}

Report parse_report(std::istream& is) {
  Report out;
  std::string line;
  bool saw_aggregate = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw BadReport(std::string("bad report line: ") + e.what());
    }
    if (j.contains("format_version")) {
      out.format_version = j["format_version"].get<int>();
      if (out.format_version != kReportFormatVersion)
        throw BadReport("unsupported report format_version " +
                        std::to_string(out.format_version));
      out.config_echo = j.value("config", "");
      out.wall_seconds = j.value("wall_seconds", 0.0);
      saw_aggregate = true;
      continue;
    }
    CheckRecord rec;
    rec.check = j.at("check").get<std::string>();
    rec.point_x = j.at("point_x").get<std::vector<double>>();
    rec.point_y = j.at("point_y").get<std::vector<double>>();
    rec.residual_name = j.at("residual_name").get<std::string>();
    rec.residual_value = j.at("residual_value").get<double>();
    rec.tol = j.at("tol").get<double>();
    std::string v = j.at("verdict").get<std::string>();
    rec.skipped = v == "skip";
    rec.verdict = v == "pass";
    out.records.push_back(std::move(rec));
  }
  if (!saw_aggregate) throw BadReport("missing aggregate record");
  return out;
}

}  // namespace spraylab
