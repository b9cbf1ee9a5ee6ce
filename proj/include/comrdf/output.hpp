#pragma once

// RDF and POP table files. Both share the same layout: a `#` header naming
// the columns, then one row per bin with r followed by one column per type
// pair, in scientific notation with six significant digits.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "comrdf/error.hpp"
#include "comrdf/rdf.hpp"

namespace comrdf {

// "11", "12", ... and "1-12" once any type number has two digits.
inline std::string pair_label(int a, int b) {
  if (a < 10 && b < 10)
    return std::to_string(a) + std::to_string(b);
  return std::to_string(a) + "-" + std::to_string(b);
}

namespace detail {

inline void write_columns(std::ostream& out, const RdfTable& t,
                          const std::vector<std::vector<double>>& cols, char prefix) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "#%13s", "r");
  out << buf;
  for (const auto& [a, b] : t.pair_labels) {
    std::snprintf(buf, sizeof buf, " %13s", (prefix + pair_label(a, b)).c_str());
    out << buf;
  }
  out << '\n';
  for (std::size_t k = 0; k < t.bin_centers.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%14.5e", t.bin_centers[k]);
    out << buf;
    for (const auto& col : cols) {
      std::snprintf(buf, sizeof buf, " %13.5e", col[k]);
      out << buf;
    }
    out << '\n';
  }
}

inline void write_file(const std::filesystem::path& path, const RdfTable& t,
                       const std::vector<std::vector<double>>& cols, char prefix) {
  std::ofstream out(path);
  if (!out)
    throw InputError("cannot open " + path.string() + " for writing");
  write_columns(out, t, cols, prefix);
  out.flush();
  if (!out)
    throw InputError("error while writing " + path.string());
}

} // namespace detail

inline void write_rdf(std::ostream& out, const RdfTable& t) {
  detail::write_columns(out, t, t.g, 'g');
}
inline void write_pop(std::ostream& out, const RdfTable& t) {
  detail::write_columns(out, t, t.pop, 'n');
}
inline void write_rdf(const std::filesystem::path& path, const RdfTable& t) {
  detail::write_file(path, t, t.g, 'g');
}
inline void write_pop(const std::filesystem::path& path, const RdfTable& t) {
  detail::write_file(path, t, t.pop, 'n');
}

} // namespace comrdf
