#pragma once

// End-to-end analysis: CONTROL + FIELD + HISTORY in, RDF + POP out.

#include <algorithm>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "comrdf/directives.hpp"
#include "comrdf/error.hpp"
#include "comrdf/field.hpp"
#include "comrdf/history.hpp"
#include "comrdf/output.hpp"
#include "comrdf/rdf.hpp"
#include "comrdf/unfold.hpp"

namespace comrdf {

enum ExitCode : int { kExitOk = 0, kExitInputError = 1, kExitNoFrames = 2 };

struct RunConfig {
  std::filesystem::path dir = ".";
  std::string control = "CONTROL";
  std::string field = "FIELD";
  std::string history = "HISTORY";
  std::string rdf = "RDF";
  std::string pop = "POP";
  unsigned threads = 1; // > 1 enables frame-parallel accumulation
  double unfold_tol = kDefaultUnfoldTol;
};

struct RunSummary {
  int exit_code = kExitOk;
  long long frames_read = 0;
  long long frames_used = 0;
  bool truncated = false;
  std::size_t molecule_types = 0;
  double mean_volume = 0.0;
  Directives directives;
  std::optional<RdfTable> table;
};

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw InputError("cannot open input file " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Per-type site masses and the offsets of each type's first site in a frame.
class FrameLayout {
public:
  explicit FrameLayout(const Topology& topo) : topo_(topo) {
    long long offset = 0;
    for (const auto& mol : topo.molecules) {
      std::vector<double> m;
      for (const auto& s : mol.sites)
        m.push_back(s.mass);
      masses_.push_back(std::move(m));
      first_site_.push_back(offset);
      offset += mol.count * static_cast<long long>(mol.sites.size());
    }
    included_ = types_with_mass(topo);
  }

  const std::vector<bool>& included() const { return included_; }

  // Wrapped centres of mass for every molecule of every included type.
  std::vector<TypedPoint> coms(const Frame& f, double tol) const {
    std::vector<TypedPoint> out;
    const std::span<const Vec3> all(f.positions);
    for (std::size_t t = 0; t < topo_.molecules.size(); ++t) {
      if (!included_[t])
        continue;
      const auto& mol = topo_.molecules[t];
      const std::size_t nsites = mol.sites.size();
      for (long long k = 0; k < mol.count; ++k) {
        const auto begin = static_cast<std::size_t>(first_site_[t]) + static_cast<std::size_t>(k) * nsites;
        try {
          auto com = molecule_com_wrapped(all.subspan(begin, nsites), masses_[t], f.cell, tol);
          out.push_back({t, *com});
        } catch (const UnfoldError&) {
          throw UnfoldError("molecule " + std::to_string(k + 1) + " of type " +
                            std::to_string(t + 1) + " (" + mol.name + ") at step " +
                            std::to_string(f.step) +
                            " cannot be unfolded; it is larger than half the cell");
        }
      }
    }
    return out;
  }

private:
  const Topology& topo_;
  std::vector<std::vector<double>> masses_;
  std::vector<long long> first_site_;
  std::vector<bool> included_;
};

namespace detail {

inline void accumulate_batch(std::vector<PairHistogram>& workers, const std::vector<Frame>& batch,
                             const FrameLayout& layout, double tol) {
  const std::size_t nt = workers.size();
  if (nt == 1 || batch.size() == 1) {
    for (const auto& f : batch)
      accumulate_frame(workers[0], layout.coms(f, tol), f.cell);
    return;
  }
  std::vector<std::exception_ptr> errors(nt);
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < nt; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < batch.size(); i += nt)
            accumulate_frame(workers[w], layout.coms(batch[i], tol), batch[i].cell);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors)
    if (e)
      std::rethrow_exception(e);
}

} // namespace detail

// Runs the whole analysis. Diagnostics and the summary go to `log`; the only
// files written are the RDF and POP outputs.
inline RunSummary run_analysis(const RunConfig& cfg, std::ostream& log) {
  RunSummary sum;
  try {
    const auto control_path = cfg.dir / cfg.control;
    const auto field_path = cfg.dir / cfg.field;
    const auto history_path = cfg.dir / cfg.history;

    sum.directives = parse_directives(read_text_file(control_path), control_path.string());
    const Directives& dir = sum.directives;
    const Topology topo = parse_field(read_text_file(field_path), field_path.string());
    sum.molecule_types = topo.type_count();

    std::ifstream hin(history_path, std::ios::binary);
    if (!hin)
      throw InputError("cannot open input file " + history_path.string());

    const FrameLayout layout(topo);
    for (std::size_t t = 0; t < topo.type_count(); ++t)
      if (!layout.included()[t])
        log << "warning: molecule type " << t + 1 << " (" << topo.molecules[t].name
            << ") has zero total mass and is excluded from all pairs\n";

    HistoryReader reader(hin, topo.total_sites(), history_path.string());
    const unsigned nthreads = std::max(1u, cfg.threads);
    std::vector<PairHistogram> workers(nthreads, PairHistogram(topo.type_count(), dir.rmax, dir.dr));
    std::vector<Frame> batch;
    const std::size_t batch_size = nthreads == 1 ? 1 : 4 * static_cast<std::size_t>(nthreads);

    Frame frame;
    long long index = 0;
    while (index < dir.stop) {
      const ReadStatus st = reader.next(frame);
      if (st != ReadStatus::frame) {
        sum.truncated = st == ReadStatus::truncated;
        break;
      }
      ++index;
      if (index < dir.start)
        continue;
      batch.push_back(std::move(frame));
      if (batch.size() >= batch_size) {
        detail::accumulate_batch(workers, batch, layout, cfg.unfold_tol);
        batch.clear();
      }
    }
    if (!batch.empty())
      detail::accumulate_batch(workers, batch, layout, cfg.unfold_tol);
    sum.frames_read = reader.frames_read();

    PairHistogram hist = workers[0];
    for (std::size_t w = 1; w < workers.size(); ++w)
      hist += workers[w];
    sum.frames_used = hist.frames_used();

    if (sum.truncated)
      log << "warning: the trajectory was abnormally terminated; using the " << sum.frames_read
          << " complete configuration(s) read before the break\n";

    if (hist.frames_used() == 0) {
      log << "error: no configurations processed (" << sum.frames_read
          << " read, selection start=" << dir.start << " stop=" << dir.stop << ")\n";
      sum.exit_code = kExitNoFrames;
      return sum;
    }
    if (hist.rmax_exceeded_safe_radius())
      log << "warning: rmax = " << dir.rmax
          << " exceeds half the shortest cell width in at least one frame; g(r) beyond that "
             "radius is biased\n";

    RdfTable table = finalize(hist, topo, dir.smooth);
    sum.mean_volume = table.mean_volume;
    write_rdf(cfg.dir / cfg.rdf, table);
    write_pop(cfg.dir / cfg.pop, table);

    log << "frames read:     " << sum.frames_read << '\n'
        << "frames used:     " << sum.frames_used << '\n'
        << "molecule types:  " << sum.molecule_types << '\n';
    for (std::size_t t = 0; t < topo.type_count(); ++t)
      log << "  " << t + 1 << ": " << topo.molecules[t].name << " x " << topo.molecules[t].count
          << (layout.included()[t] ? "" : " (excluded)") << '\n';
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6e", table.mean_volume);
    log << "mean volume:     " << buf << '\n';
    sum.table = std::move(table);
  } catch (const InputError& e) {
    log << "error: " << e.what() << '\n';
    sum.exit_code = kExitInputError;
  } catch (const std::runtime_error& e) {
    log << "error: " << e.what() << '\n';
    sum.exit_code = kExitInputError;
  }
  return sum;
}

} // namespace comrdf
