#pragma once

// Analysis directives embedded in a DL_POLY CONTROL file.
//
// The block lives after the `finish` directive that closes the DL_POLY
// input and looks like
//
//     polyana
//       start  1001
//       stop   5000
//       rmax   10.0
//       dr     0.2
//       smooth
//     end polyana
//
// Keywords are case-insensitive and may appear in any order. Anything
// outside the block is ignored.

#include <cmath>
#include <limits>
#include <string>
#include <string_view>

#include "comrdf/error.hpp"
#include "comrdf/text.hpp"

namespace comrdf {

struct Directives {
  long long start = 1;
  long long stop = std::numeric_limits<int>::max();
  double rmax = 12.5;
  double dr = 0.1;
  bool smooth = false;

  friend bool operator==(const Directives&, const Directives&) = default;
};

inline void validate(const Directives& d, const std::string& source = "CONTROL") {
  auto fail = [&](const std::string& what) { throw InputError(source + ": " + what); };
  if (d.start < 1)
    fail("start must be >= 1");
  if (d.stop < d.start)
    fail("stop must be >= start");
  if (!(d.dr > 0.0))
    fail("dr must be positive");
  if (!(d.rmax > 0.0))
    fail("rmax must be positive");
  if (!(d.rmax > d.dr))
    fail("rmax must exceed dr");
}

inline Directives parse_directives(std::string_view control_text,
                                   const std::string& source = "CONTROL") {
  Directives out;
  const auto all = text::lines(control_text);

  // Everything after the DL_POLY `finish` line. Files without one are
  // scanned from the top so a bare directive block still works.
  std::size_t begin = 0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    auto toks = text::split(all[i]);
    if (!toks.empty() && text::iequals(toks[0], "finish")) {
      begin = i + 1;
      break;
    }
  }

  bool inside = false;
  bool closed = false;
  std::size_t open_line = 0;
  for (std::size_t i = begin; i < all.size(); ++i) {
    const std::size_t lineno = i + 1;
    auto toks = text::split(all[i]);
    if (toks.empty())
      continue;
    const std::string key = text::lower(toks[0]);

    if (!inside) {
      if (key == "polyana" && !closed) {
        inside = true;
        open_line = lineno;
      }
      continue;
    }

    if (key == "end") {
      if (toks.size() >= 2 && text::iequals(toks[1], "polyana")) {
        inside = false;
        closed = true;
        continue;
      }
      throw ParseError(source, lineno, "expected 'end polyana'");
    }

    auto need_value = [&]() -> std::string_view {
      if (toks.size() < 2)
        throw ParseError(source, lineno, "directive '" + key + "' needs a value");
      if (toks.size() > 2)
        throw ParseError(source, lineno, "trailing text after directive '" + key + "'");
      return toks[1];
    };
    auto integer = [&]() {
      auto tok = need_value();
      auto v = text::to_integer(tok);
      if (!v)
        throw ParseError(source, lineno,
                         "malformed integer '" + std::string(tok) + "' for '" + key + "'");
      return *v;
    };
    auto real = [&]() {
      auto tok = need_value();
      auto v = text::to_double(tok);
      if (!v || !std::isfinite(*v))
        throw ParseError(source, lineno,
                         "malformed number '" + std::string(tok) + "' for '" + key + "'");
      return *v;
    };

    if (key == "start")
      out.start = integer();
    else if (key == "stop")
      out.stop = integer();
    else if (key == "rmax")
      out.rmax = real();
    else if (key == "dr")
      out.dr = real();
    else if (key == "smooth") {
      if (toks.size() > 1)
        throw ParseError(source, lineno, "directive 'smooth' takes no value");
      out.smooth = true;
    } else
      throw ParseError(source, lineno, "unknown directive '" + std::string(toks[0]) + "'");
  }

  if (inside)
    throw ParseError(source, open_line, "'polyana' block is not closed by 'end polyana'");

  validate(out, source);
  return out;
}

} // namespace comrdf
