#pragma once

// Synthetic validation data: two rigid random-topology molecules whose
// centres of mass are held a fixed distance apart while both tumble at
// random. Every site is wrapped into the cell on its own, so molecules come
// out fragmented across the periodic boundaries and the analysis has to
// rebuild them. A correct analysis shows a single g(r) spike at the chosen
// distance.
//
// Random numbers come from std::mt19937_64 seeded with the user seed; doubles
// are formed from the top 53 bits of each draw, so output is identical on
// every platform for a given seed.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "comrdf/error.hpp"
#include "comrdf/field.hpp"
#include "comrdf/geometry.hpp"
#include "comrdf/history.hpp"
#include "comrdf/rdf.hpp"

namespace comrdf {

struct SyntheticConfig {
  int n_sites = 8;
  double radius = 3.0;
  double distance = 5.0;
  double cell_length = 30.0;
  long long n_frames = 100;
  std::uint64_t seed = 20150301;
};

inline void validate(const SyntheticConfig& c) {
  auto fail = [](const std::string& what) { throw InputError("invalid synthetic config: " + what); };
  if (c.n_sites < 1)
    fail("sites must be >= 1");
  if (!(c.radius >= 0.0) || !std::isfinite(c.radius))
    fail("radius must be >= 0");
  if (!(c.distance >= 0.0) || !std::isfinite(c.distance))
    fail("distance must be >= 0");
  if (!(c.cell_length > 0.0) || !std::isfinite(c.cell_length))
    fail("cell length must be positive");
  if (c.n_frames < 1)
    fail("frames must be >= 1");
  if (!(c.distance + 2.0 * c.radius < 0.5 * c.cell_length))
    fail("distance + 2*radius must be below half the cell length");
}

class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  // Uniform on [0, 1).
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
  std::mt19937_64 eng_;
};

using Mat3 = std::array<std::array<double, 3>, 3>;

inline Vec3 rotate(const Mat3& m, const Vec3& v) {
  return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
          m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
          m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
}

// Uniformly distributed rotation from a uniform unit quaternion (Shoemake).
inline Mat3 random_rotation(Rng& rng) {
  const double u1 = rng.uniform(), u2 = rng.uniform(), u3 = rng.uniform();
  const double tau = 2.0 * std::numbers::pi;
  const double a = std::sqrt(1.0 - u1), b = std::sqrt(u1);
  const double x = a * std::sin(tau * u2), y = a * std::cos(tau * u2);
  const double z = b * std::sin(tau * u3), w = b * std::cos(tau * u3);
  return {{{1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w)},
           {2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w)},
           {2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y)}}};
}

inline Vec3 random_unit_vector(Rng& rng) {
  const double z = rng.uniform(-1.0, 1.0);
  const double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
  const double rxy = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {rxy * std::cos(phi), rxy * std::sin(phi), z};
}

struct SyntheticTopology {
  Topology topology;
  std::array<std::vector<Vec3>, 2> offsets; // site offsets from each COM
};

// Two molecule types, one molecule each. Masses are uniform in [1, 20] amu
// and the offsets are shifted so that their mass-weighted mean is zero.
inline SyntheticTopology gen_topology(const SyntheticConfig& cfg, Rng& rng) {
  validate(cfg);
  SyntheticTopology out;
  const char tags[2] = {'A', 'B'};
  for (int m = 0; m < 2; ++m) {
    MoleculeSpec mol;
    mol.name = std::string("Mol") + tags[m];
    mol.count = 1;
    auto& off = out.offsets[static_cast<std::size_t>(m)];
    for (int i = 0; i < cfg.n_sites; ++i) {
      SiteSpec s;
      s.name = tags[m] + std::to_string(i + 1);
      s.mass = rng.uniform(1.0, 20.0);
      mol.sites.push_back(s);
      Vec3 v;
      if (cfg.radius > 0.0) {
        do {
          v = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        } while (v.length_sq() > 1.0);
        v *= cfg.radius;
      }
      off.push_back(v);
    }
    if (cfg.n_sites == 1) {
      off[0] = Vec3{};
    } else {
      Vec3 acc;
      double total = 0.0;
      for (std::size_t i = 0; i < off.size(); ++i) {
        acc += off[i] * mol.sites[i].mass;
        total += mol.sites[i].mass;
      }
      const Vec3 mean{acc.x / total, acc.y / total, acc.z / total};
      for (auto& v : off)
        v -= mean;
    }
    out.topology.molecules.push_back(std::move(mol));
  }
  return out;
}

inline SyntheticTopology gen_topology(const SyntheticConfig& cfg) {
  Rng rng(cfg.seed);
  return gen_topology(cfg, rng);
}

struct SyntheticSystem {
  SyntheticConfig config;
  SyntheticTopology topo;
  std::vector<Frame> frames;                 // wrapped, as written to HISTORY
  std::vector<std::vector<Vec3>> unwrapped;  // per frame, pre-wrap sites
  std::vector<std::array<Vec3, 2>> coms;     // per frame, exact COMs
};

// Molecule 1 is centred at C*(1/2, 1/2, 1/2), which in the origin-centred
// convention is a cell corner, so its sites straddle all three periodic
// boundaries. Molecule 2 sits `distance` away in a random direction.
inline SyntheticSystem generate(const SyntheticConfig& cfg) {
  validate(cfg);
  Rng rng(cfg.seed);
  SyntheticSystem sys;
  sys.config = cfg;
  sys.topo = gen_topology(cfg, rng);
  const CellTensor cell = CellTensor::cubic(cfg.cell_length);
  const Vec3 corner = cell.to_real({{0.5, 0.5, 0.5}});

  sys.frames.reserve(static_cast<std::size_t>(cfg.n_frames));
  for (long long k = 0; k < cfg.n_frames; ++k) {
    const Vec3 com1 = corner;
    const Vec3 com2 = com1 + random_unit_vector(rng) * cfg.distance;
    const std::array<Vec3, 2> com{com1, com2};
    std::vector<Vec3> raw;
    for (std::size_t m = 0; m < 2; ++m) {
      const Mat3 rot = random_rotation(rng);
      for (const auto& o : sys.topo.offsets[m])
        raw.push_back(com[m] + rotate(rot, o));
    }
    Frame f;
    f.step = k + 1;
    f.natoms = static_cast<long long>(raw.size());
    f.timestep = 0.001;
    f.cell = cell;
    f.positions.reserve(raw.size());
    for (const auto& p : raw)
      f.positions.push_back(wrap_point(p, cell));
    sys.frames.push_back(std::move(f));
    sys.unwrapped.push_back(std::move(raw));
    sys.coms.push_back(com);
  }
  return sys;
}

inline double synthetic_rmax(const SyntheticConfig& cfg) {
  return std::min(0.5 * cfg.cell_length, std::max(12.5, cfg.distance + 1.0));
}

inline constexpr double kSyntheticDr = 0.1;

// Bin expected to hold the spike in the follow-up analysis.
inline long long expected_spike_bin(const SyntheticConfig& cfg) {
  return bin_index(cfg.distance, kSyntheticDr);
}

inline std::string format_control(const SyntheticConfig& cfg) {
  char buf[256];
  std::string out = "synthetic centre-of-mass test system\n";
  out += "temperature 300.0\n";
  out += "steps " + std::to_string(cfg.n_frames) + "\n";
  out += "finish\n\n";
  std::snprintf(buf, sizeof buf, "polyana\n  rmax %.10g\n  dr %.10g\nend polyana\n",
                synthetic_rmax(cfg), kSyntheticDr);
  out += buf;
  return out;
}

inline std::vector<SiteLabel> site_labels(const Topology& topo) {
  std::vector<SiteLabel> out;
  for (const auto& mol : topo.molecules)
    for (long long c = 0; c < mol.count; ++c)
      for (const auto& s : mol.sites)
        out.push_back({s.name, s.mass, s.charge});
  return out;
}

inline void write_history(std::ostream& out, const SyntheticSystem& sys) {
  const auto labels = site_labels(sys.topo.topology);
  write_history_header(out, "synthetic two-molecule trajectory", 1,
                       static_cast<long long>(labels.size()));
  for (const auto& f : sys.frames)
    write_history_frame(out, f, labels);
}

struct SyntheticFiles {
  std::filesystem::path control, field, history;
};

inline SyntheticFiles write_synthetic_inputs(const std::filesystem::path& dir,
                                             const SyntheticSystem& sys) {
  std::filesystem::create_directories(dir);
  SyntheticFiles files{dir / "CONTROL", dir / "FIELD", dir / "HISTORY"};
  auto put = [](const std::filesystem::path& p, auto&& writer) {
    std::ofstream out(p, std::ios::binary);
    if (!out)
      throw InputError("cannot open " + p.string() + " for writing");
    writer(out);
    out.flush();
    if (!out)
      throw InputError("error while writing " + p.string());
  };
  put(files.control, [&](std::ostream& o) { o << format_control(sys.config); });
  put(files.field,
      [&](std::ostream& o) { o << format_field(sys.topo.topology, "synthetic two-molecule system"); });
  put(files.history, [&](std::ostream& o) { write_history(o, sys); });
  return files;
}

} // namespace comrdf
