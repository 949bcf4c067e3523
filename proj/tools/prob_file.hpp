#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "ulc/cost_dsl.hpp"
#include "ulc/error.hpp"

namespace ulc::io {

/// Probabilities from text: either a JSON array of numbers, or one decimal
/// per line with '#' starting a comment.
inline std::vector<double> parse_probabilities(std::string_view text) {
  const auto start = text.find_first_not_of(" \t\r\n");
  if (start != std::string_view::npos && text[start] == '[') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw Error(Reason::parse_error, std::string("bad JSON probability array: ") + e.what());
    }
    if (!j.is_array()) throw Error(Reason::parse_error, "JSON probabilities must be an array");
    std::vector<double> out;
    for (const auto& x : j) {
      if (!x.is_number()) throw Error(Reason::parse_error, "JSON probabilities must be numbers");
      out.push_back(x.get<double>());
    }
    return out;
  }
  std::vector<double> out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    try {
      out.push_back(detail::parse_number(line, "line " + std::to_string(line_no)));
    } catch (const Error&) {
      throw Error(Reason::parse_error,
                  "line " + std::to_string(line_no) + ": '" + std::string(line) + "' is not a number");
    }
  }
  return out;
}

inline std::vector<double> read_probabilities(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(Reason::parse_error, "cannot open probability file '" + path + "'");
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_probabilities(buf.str());
}

}  // namespace ulc::io
