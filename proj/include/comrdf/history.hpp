#pragma once

// Streaming reader and writer for DL_POLY Classic HISTORY trajectories.
//
//   title line                                   } optional header, absent
//   levcfg imcon natoms                          } after a restart
//   timestep nstep natoms keytrj imcon tstep
//   ax ay az                                     } three cell rows,
//   bx by bz                                     } only when imcon > 0
//   cx cy cz                                     }
//   name index mass charge                       } per site
//   x y z                                        }
//   vx vy vz                                     } keytrj >= 1
//   fx fy fz                                     } keytrj >= 2
//
// A frame that ends early or contains an unreadable number marks the end of
// usable data: the reader reports `truncated` and every frame already
// returned stays valid.

#include <algorithm>
#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "comrdf/error.hpp"
#include "comrdf/geometry.hpp"
#include "comrdf/text.hpp"

namespace comrdf {

struct Frame {
  long long step = 0;
  long long natoms = 0;
  int keytrj = 0;
  double timestep = 0.0;
  CellTensor cell;
  std::vector<Vec3> positions; // FIELD declaration order
};

enum class ReadStatus { frame, end_of_data, truncated };

class HistoryReader {
public:
  // Inspects the start of the stream to decide whether a header is present.
  // Throws InputError if the first record is neither a header nor a
  // `timestep` record.
  explicit HistoryReader(std::istream& in, std::optional<long long> expected_natoms = {},
                         std::string source = "HISTORY")
    : in_(in), expected_natoms_(expected_natoms), source_(std::move(source)) {
    detect_header();
  }

  bool has_header() const { return has_header_; }
  const std::string& title() const { return title_; }
  long long frames_read() const { return frames_read_; }
  ReadStatus status() const { return status_; }

  // Reads the next frame into `out`. Once end_of_data or truncated has been
  // returned, every further call returns the same status.
  ReadStatus next(Frame& out) {
    if (done_)
      return status_;
    std::string line;
    if (!next_nonblank(line))
      return finish(ReadStatus::end_of_data);

    auto toks = text::split(line);
    if (toks.empty() || !text::iequals(toks[0], "timestep") || toks.size() < 5)
      return finish(ReadStatus::truncated);
    auto step = text::to_integer(toks[1]);
    auto natoms = text::to_integer(toks[2]);
    auto keytrj = text::to_integer(toks[3]);
    auto imcon = text::to_integer(toks[4]);
    if (!step || !natoms || !keytrj || !imcon || *natoms < 0)
      return finish(ReadStatus::truncated);
    double tstep = 0.0;
    if (toks.size() >= 6) {
      auto ts = text::to_double(toks[5]);
      if (!ts)
        return finish(ReadStatus::truncated);
      tstep = *ts;
    }
    if (expected_natoms_ && *natoms != *expected_natoms_)
      throw InputError(source_ + ": frame " + std::to_string(frames_read_ + 1) + " has " +
                       std::to_string(*natoms) + " atoms but the topology defines " +
                       std::to_string(*expected_natoms_));
    const ImageConvention conv = image_convention_from_code(static_cast<int>(*imcon));

    Vec3 rows[3];
    if (conv != ImageConvention::none) {
      for (auto& r : rows)
        if (!read_vec3(r))
          return finish(ReadStatus::truncated);
    }

    Frame f;
    f.step = *step;
    f.natoms = *natoms;
    f.keytrj = static_cast<int>(*keytrj);
    f.timestep = tstep;
    f.cell = conv == ImageConvention::none ? CellTensor() : CellTensor(rows[0], rows[1], rows[2], conv);
    f.positions.resize(static_cast<std::size_t>(*natoms));
    for (auto& p : f.positions) {
      if (!std::getline(in_, line) || text::split(line).empty())
        return finish(ReadStatus::truncated);
      if (!read_vec3(p))
        return finish(ReadStatus::truncated);
      for (int extra = 0; extra < std::min(f.keytrj, 2); ++extra) {
        Vec3 skipped;
        if (!read_vec3(skipped))
          return finish(ReadStatus::truncated);
      }
    }
    ++frames_read_;
    out = std::move(f);
    return ReadStatus::frame;
  }

private:
  void detect_header() {
    std::string first;
    if (!next_nonblank(first)) {
      // Nothing at all: zero frames, reported as an abnormal end.
      finish(ReadStatus::truncated);
      return;
    }
    auto toks = text::split(first);
    if (text::iequals(toks[0], "timestep")) {
      pending_ = first;
      return;
    }
    std::string second;
    if (!std::getline(in_, second))
      throw InputError(source_ + ": first record is neither a HISTORY header nor a timestep record");
    auto t2 = text::split(second);
    if (t2.size() < 3 || !text::to_integer(t2[0]) || !text::to_integer(t2[1]) ||
        !text::to_integer(t2[2]))
      throw InputError(source_ + ": first record is neither a HISTORY header nor a timestep record");
    has_header_ = true;
    title_ = std::string(text::trim(first));
    std::string third;
    if (next_nonblank(third)) {
      auto t3 = text::split(third);
      if (!text::iequals(t3[0], "timestep"))
        throw InputError(source_ + ": expected a timestep record after the header");
      pending_ = third;
    }
  }

  bool next_nonblank(std::string& line) {
    if (pending_) {
      line = std::move(*pending_);
      pending_.reset();
      return true;
    }
    while (std::getline(in_, line))
      if (!text::is_blank(line))
        return true;
    return false;
  }

  bool read_vec3(Vec3& v) {
    std::string line;
    if (!std::getline(in_, line))
      return false;
    auto toks = text::split(line);
    if (toks.size() < 3)
      return false;
    auto x = text::to_double(toks[0]);
    auto y = text::to_double(toks[1]);
    auto z = text::to_double(toks[2]);
    if (!x || !y || !z)
      return false;
    v = {*x, *y, *z};
    return v.is_finite();
  }

  ReadStatus finish(ReadStatus s) {
    done_ = true;
    status_ = s;
    return s;
  }

  std::istream& in_;
  std::optional<long long> expected_natoms_;
  std::string source_;
  std::optional<std::string> pending_;
  std::string title_;
  bool has_header_ = false;
  bool done_ = false;
  ReadStatus status_ = ReadStatus::frame;
  long long frames_read_ = 0;
};

// Site labels and masses written alongside each position record.
struct SiteLabel {
  std::string name;
  double mass = 0.0;
  double charge = 0.0;
};

inline void write_history_header(std::ostream& out, const std::string& title, int imcon,
                                 long long natoms, int levcfg = 0) {
  char buf[128];
  out << title << '\n';
  std::snprintf(buf, sizeof buf, "%10d%10d%10lld\n", levcfg, imcon, natoms);
  out << buf;
}

inline void write_history_frame(std::ostream& out, const Frame& f,
                                const std::vector<SiteLabel>& labels) {
  if (labels.size() != f.positions.size())
    throw std::invalid_argument("write_history_frame: label count differs from position count");
  char buf[160];
  const int imcon = static_cast<int>(f.cell.imcon());
  std::snprintf(buf, sizeof buf, "timestep%10lld%10lld%10d%10d%12.6f\n", f.step,
                static_cast<long long>(f.positions.size()), f.keytrj, imcon, f.timestep);
  out << buf;
  if (f.cell.periodic()) {
    for (int i = 0; i < 3; ++i) {
      const Vec3& r = f.cell.row(i);
      std::snprintf(buf, sizeof buf, "%20.10f%20.10f%20.10f\n", r.x, r.y, r.z);
      out << buf;
    }
  }
  for (std::size_t k = 0; k < f.positions.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%-8s%10zu%12.6f%12.6f\n", labels[k].name.c_str(), k + 1,
                  labels[k].mass, labels[k].charge);
    out << buf;
    const Vec3& p = f.positions[k];
    std::snprintf(buf, sizeof buf, "%20.10f%20.10f%20.10f\n", p.x, p.y, p.z);
    out << buf;
    for (int extra = 0; extra < std::min(f.keytrj, 2); ++extra)
      out << "        0.0000000000        0.0000000000        0.0000000000\n";
  }
}

} // namespace comrdf
