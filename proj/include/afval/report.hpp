#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "afval/inequalities.hpp"

namespace afval {

/// Report as a JSON object; runtime is left out so reruns compare equal.
nlohmann::ordered_json report_json(const InequalityReport& r);

/// %.17g
std::string format_double(double v);

/// RFC 4180 quoting when the field needs it.
std::string csv_field(const std::string& s);
std::string csv_line(const std::vector<std::string>& fields);

std::string report_csv_header();
std::string report_csv_row(const InequalityReport& r);

/// Writes to `path`, or stdout for "" / "-". Throws invalid_argument on I/O failure.
void write_text(const std::string& path, const std::string& text);

}  // namespace afval
