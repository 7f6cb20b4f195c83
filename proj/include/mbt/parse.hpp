#pragma once

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace mbt {

// Raised by the text readers; line is 1-based within the input.
struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

inline std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

inline long long parse_int(const std::string& tok, int line) {
  size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(tok, &used);
  } catch (const std::exception&) {
    throw ParseError(line, "expected integer, got '" + tok + "'");
  }
  if (used != tok.size()) throw ParseError(line, "expected integer, got '" + tok + "'");
  return v;
}

}  // namespace mbt
