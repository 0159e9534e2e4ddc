#ifndef FEXTREM_JSON_WRITER_HPP
#define FEXTREM_JSON_WRITER_HPP

#include <string>

namespace fextrem {

/// Escapes for use inside a JSON string literal (quotes not included).
std::string json_escape(const std::string& text);

/// Number with 17 significant digits: enough to round-trip any double.
std::string json_number(double value);

inline std::string json_string(const std::string& text) {
  return "\"" + json_escape(text) + "\"";
}

}  // namespace fextrem

#endif
