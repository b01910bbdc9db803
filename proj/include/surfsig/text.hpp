#pragma once

// Small helpers shared by the line-oriented file readers.

#include "surfsig/errors.hpp"

#include <cctype>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace surfsig::text {

struct Line {
  int number;
  std::string text;  // comment removed, otherwise untouched so columns stay valid
};

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

/// Non-blank lines with '#' comments stripped.
inline std::vector<Line> lines(std::string_view source) {
  std::vector<Line> out;
  int number = 0;
  std::size_t start = 0;
  while (start <= source.size()) {
    auto end = source.find('\n', start);
    if (end == std::string_view::npos) end = source.size();
    ++number;
    std::string s(source.substr(start, end - start));
    if (auto hash = s.find('#'); hash != std::string::npos) s.erase(hash);
    if (!s.empty() && s.back() == '\r') s.pop_back();
    if (!trim(s).empty()) out.push_back({number, s});
    start = end + 1;
  }
  return out;
}

inline std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline long to_int(const std::string& s, int line) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw ParseError(line, 1, {"integer"}, s);
  return v;
}

inline std::pair<std::string, std::string> key_value(const std::string& tok, int line) {
  const auto eq = tok.find('=');
  if (eq == std::string::npos) throw ParseError(line, 1, {"key=value"}, tok);
  return {tok.substr(0, eq), tok.substr(eq + 1)};
}

/// File name without directories and extension.
inline std::string stem(const std::string& path) {
  auto slash = path.find_last_of('/');
  std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
  if (auto dot = base.rfind('.'); dot != std::string::npos && dot > 0) base.erase(dot);
  return base;
}

}  // namespace surfsig::text
