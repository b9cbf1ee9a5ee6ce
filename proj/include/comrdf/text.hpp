#pragma once

// Small line/token helpers shared by the DL_POLY readers.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace comrdf::text {

inline std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])))
      ++j;
    if (j > i)
      out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::string_view trim(std::string_view s) {
  auto issp = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
  while (!s.empty() && issp(s.front()))
    s.remove_prefix(1);
  while (!s.empty() && issp(s.back()))
    s.remove_suffix(1);
  return s;
}

inline bool is_blank(std::string_view s) { return trim(s).empty(); }

inline std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

inline bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && lower(a) == lower(b);
}

// DL_POLY keyword matching: the first four characters, case-insensitive.
// Tokens shorter than four characters must match exactly.
inline bool keyword_matches(std::string_view token, std::string_view keyword) {
  std::size_t n = std::min<std::size_t>(4, keyword.size());
  if (token.size() < n)
    return false;
  return iequals(token.substr(0, n), keyword.substr(0, n));
}

inline std::optional<double> to_double(std::string_view tok) {
  if (tok.empty())
    return std::nullopt;
  // Fortran writers may emit 1.0D+01.
  std::string buf(tok);
  for (char& c : buf)
    if (c == 'd' || c == 'D')
      c = 'e';
  const char* first = buf.data();
  const char* last = buf.data() + buf.size();
  if (*first == '+')
    ++first;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last)
    return std::nullopt;
  return v;
}

inline std::optional<long long> to_integer(std::string_view tok) {
  if (tok.empty())
    return std::nullopt;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (*first == '+')
    ++first;
  long long v = 0;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last)
    return std::nullopt;
  return v;
}

// Splits a whole text buffer into lines, dropping a trailing '\r'.
inline std::vector<std::string_view> lines(std::string_view textbuf) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < textbuf.size()) {
    std::size_t nl = textbuf.find('\n', pos);
    if (nl == std::string_view::npos)
      nl = textbuf.size();
    std::string_view l = textbuf.substr(pos, nl - pos);
    if (!l.empty() && l.back() == '\r')
      l.remove_suffix(1);
    out.push_back(l);
    pos = nl + 1;
  }
  return out;
}

} // namespace comrdf::text
