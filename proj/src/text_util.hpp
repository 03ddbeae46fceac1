#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ecw::detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

inline std::vector<std::string_view> lines(std::string_view s) { return split(s, '\n'); }

inline std::string_view strip_comment(std::string_view line) {
  return trim(line.substr(0, line.find('#')));
}

// Consumes a leading "[tag]" and returns the tag (empty if absent).
inline std::string take_tag(std::string_view& s) {
  s = trim(s);
  if (s.empty() || s.front() != '[') return {};
  const auto close = s.find(']');
  if (close == std::string_view::npos) throw std::invalid_argument("unterminated '[' tag");
  std::string tag(trim(s.substr(1, close - 1)));
  s = trim(s.substr(close + 1));
  return tag;
}

}  // namespace ecw::detail
