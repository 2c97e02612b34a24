#include "afval/report.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

#include "afval/error.hpp"

namespace afval {

nlohmann::ordered_json report_json(const InequalityReport& r) {
  nlohmann::ordered_json j;
  j["name"] = r.name;
  j["kind"] = r.kind == CheckKind::identity ? "identity" : "inequality";
  j["params"] = r.params;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["gap"] = r.gap;
  j["se"] = r.se;
  j["tolerance"] = r.tolerance;
  j["verdict"] = to_string(r.verdict);
  j["passed"] = r.passed();
  if (!r.extra.empty()) j["extra"] = r.extra;
  return j;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string csv_line(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += csv_field(fields[i]);
  }
  return out + '\n';
}

std::string report_csv_header() {
  return csv_line({"name", "params", "lhs", "rhs", "gap", "se", "tolerance", "verdict"});
}

std::string report_csv_row(const InequalityReport& r) {
  return csv_line({r.name, r.params.dump(), format_double(r.lhs), format_double(r.rhs), format_double(r.gap),
                   format_double(r.se), format_double(r.tolerance), to_string(r.verdict)});
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw Error(ErrorKind::invalid_argument, "cannot write " + path);
}

}  // namespace afval
