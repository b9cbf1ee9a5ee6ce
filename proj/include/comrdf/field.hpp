#pragma once

// Molecular topology read from a DL_POLY FIELD file.
//
// Only the parts needed for centre-of-mass analysis are read: molecule
// names, NUMMOLS, and the ATOMS site records (name, mass, charge, repeat,
// frozen). Bonds, constraints and everything up to each FINISH are skipped,
// as are the force-field sections after the last molecule.

#include <cstddef>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include "comrdf/error.hpp"
#include "comrdf/text.hpp"

namespace comrdf {

struct SiteSpec {
  std::string name;
  double mass = 0.0;
  double charge = 0.0;
  int repeat = 1;
  int frozen = 0;
  friend bool operator==(const SiteSpec&, const SiteSpec&) = default;
};

struct MoleculeSpec {
  std::string name;
  long long count = 1;
  std::vector<SiteSpec> sites; // expanded: one entry per site

  double total_mass() const {
    double m = 0.0;
    for (const auto& s : sites)
      m += s.mass;
    return m;
  }
  friend bool operator==(const MoleculeSpec&, const MoleculeSpec&) = default;
};

// Molecule types are numbered 1, 2, 3, ... in file order; index i here is
// type i + 1.
struct Topology {
  std::vector<MoleculeSpec> molecules;

  std::size_t type_count() const { return molecules.size(); }

  long long total_sites() const {
    long long n = 0;
    for (const auto& m : molecules)
      n += m.count * static_cast<long long>(m.sites.size());
    return n;
  }

  friend bool operator==(const Topology&, const Topology&) = default;
};

inline Topology parse_field(std::string_view field_text, const std::string& source = "FIELD") {
  const auto all = text::lines(field_text);
  std::size_t i = 0;

  auto next_nonblank = [&]() -> std::size_t {
    while (i < all.size() && text::is_blank(all[i]))
      ++i;
    return i;
  };
  auto missing = [&](const std::string& what) -> ParseError {
    return ParseError(source, std::min(i + 1, all.size()), "missing " + what);
  };

  // "MOLECULES n" (or DL_POLY's "molecular types n"). The count must be the
  // last token so a title line such as "Molecular dynamics of water" does
  // not match.
  long long ntypes = -1;
  for (; i < all.size(); ++i) {
    auto toks = text::split(all[i]);
    if (toks.size() >= 2 && text::keyword_matches(toks[0], "molecules")) {
      if (auto n = text::to_integer(toks.back())) {
        ntypes = *n;
        ++i;
        break;
      }
    }
  }
  if (ntypes < 0)
    throw ParseError(source, all.size(), "missing MOLECULES keyword");
  if (ntypes < 1)
    throw ParseError(source, i, "MOLECULES count must be >= 1");

  Topology topo;
  for (long long t = 0; t < ntypes; ++t) {
    if (next_nonblank() >= all.size())
      throw missing("molecule name for type " + std::to_string(t + 1));
    MoleculeSpec mol;
    mol.name = std::string(text::trim(all[i]));
    ++i;

    if (next_nonblank() >= all.size())
      throw missing("NUMMOLS for molecule '" + mol.name + "'");
    {
      auto toks = text::split(all[i]);
      if (!text::keyword_matches(toks[0], "nummols"))
        throw ParseError(source, i + 1, "expected NUMMOLS for molecule '" + mol.name + "'");
      auto n = toks.size() >= 2 ? text::to_integer(toks[1]) : std::nullopt;
      if (!n || *n < 1)
        throw ParseError(source, i + 1, "NUMMOLS needs a positive integer");
      mol.count = *n;
      ++i;
    }

    if (next_nonblank() >= all.size())
      throw missing("ATOMS for molecule '" + mol.name + "'");
    long long natoms = 0;
    {
      auto toks = text::split(all[i]);
      if (!text::keyword_matches(toks[0], "atoms"))
        throw ParseError(source, i + 1, "expected ATOMS for molecule '" + mol.name + "'");
      auto n = toks.size() >= 2 ? text::to_integer(toks[1]) : std::nullopt;
      if (!n || *n < 1)
        throw ParseError(source, i + 1, "ATOMS needs a positive integer");
      natoms = *n;
      ++i;
    }

    // ATOMS counts expanded sites, so records are read until the repeat
    // counts add up.
    while (static_cast<long long>(mol.sites.size()) < natoms) {
      if (next_nonblank() >= all.size())
        throw missing("site records for molecule '" + mol.name + "'");
      const std::size_t lineno = i + 1;
      auto toks = text::split(all[i]);
      ++i;
      if (toks.size() < 3)
        throw ParseError(source, lineno, "site record needs name, mass and charge");
      SiteSpec site;
      site.name = std::string(toks[0]);
      auto mass = text::to_double(toks[1]);
      auto charge = text::to_double(toks[2]);
      if (!mass || !charge)
        throw ParseError(source, lineno, "malformed mass or charge in site record");
      if (*mass < 0.0)
        throw ParseError(source, lineno, "negative site mass");
      site.mass = *mass;
      site.charge = *charge;
      if (toks.size() >= 4) {
        auto rep = text::to_integer(toks[3]);
        if (!rep || *rep < 0)
          throw ParseError(source, lineno, "malformed repeat count in site record");
        site.repeat = *rep == 0 ? 1 : static_cast<int>(*rep);
      }
      if (toks.size() >= 5) {
        auto frz = text::to_integer(toks[4]);
        if (!frz)
          throw ParseError(source, lineno, "malformed frozen flag in site record");
        site.frozen = static_cast<int>(*frz);
      }
      if (static_cast<long long>(mol.sites.size()) + site.repeat > natoms)
        throw ParseError(source, lineno, "site repeat count overruns ATOMS total");
      const int rep = site.repeat;
      site.repeat = 1;
      for (int r = 0; r < rep; ++r)
        mol.sites.push_back(site);
    }

    bool finished = false;
    for (; i < all.size(); ++i) {
      auto toks = text::split(all[i]);
      if (!toks.empty() && text::keyword_matches(toks[0], "finish")) {
        finished = true;
        ++i;
        break;
      }
    }
    if (!finished)
      throw ParseError(source, all.size(), "missing FINISH for molecule '" + mol.name + "'");

    topo.molecules.push_back(std::move(mol));
  }
  return topo;
}

// Writes the subset of FIELD syntax understood by parse_field. Consecutive
// identical sites are collapsed with a repeat count.
inline std::string format_field(const Topology& topo, std::string_view title = "generated topology") {
  std::string out;
  char buf[256];
  out += title;
  out += "\nUNITS internal\nMOLECULES ";
  out += std::to_string(topo.molecules.size());
  out += '\n';
  for (const auto& mol : topo.molecules) {
    out += mol.name;
    out += "\nNUMMOLS ";
    out += std::to_string(mol.count);
    out += "\nATOMS ";
    out += std::to_string(mol.sites.size());
    out += '\n';
    std::size_t k = 0;
    while (k < mol.sites.size()) {
      std::size_t run = 1;
      while (k + run < mol.sites.size() && mol.sites[k + run] == mol.sites[k])
        ++run;
      const auto& s = mol.sites[k];
      std::snprintf(buf, sizeof buf, "%-8s %.17g %.17g %zu %d\n", s.name.c_str(), s.mass,
                    s.charge, run, s.frozen);
      out += buf;
      k += run;
    }
    out += "FINISH\n";
  }
  out += "CLOSE\n";
  return out;
}

} // namespace comrdf
