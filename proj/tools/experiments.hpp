#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "furthlab/constants.hpp"
#include "furthlab/report.hpp"

namespace furthlab::exp {

/// A run is a pure function of this struct: same RunConfig, same bytes out.
struct RunConfig {
  std::string experiment = "all";
  std::uint64_t seed = 42;
  PhysicsConstants constants;
  bool quick = false;
  std::filesystem::path output_dir = "furthlab_out";

  // verb-specific knobs (CLI flags; defaults reproduce the standard runs)
  double paths_epsilon = 0.01;
  std::size_t paths_n_override = 0;  // 0 = preset size
  std::size_t steps_n_override = 0;
  std::string radial_potential = "coulomb";  // coulomb | harmonic
  int radial_l = 0;
  int radial_n = 0;

  // Monte Carlo sizes: full preset matches the desk-scale defaults
  // (n_paths=200, n_steps=500 -> 1e5 increments).
  std::size_t n_paths() const {
    return paths_n_override ? paths_n_override : (quick ? 120 : 200);
  }
  std::size_t n_steps() const {
    return steps_n_override ? steps_n_override : (quick ? 320 : 500);
  }

  std::map<std::string, std::string> echo() const;
};

report::ExperimentReport run_kernels(const RunConfig& cfg);
report::ExperimentReport run_paths(const RunConfig& cfg);
report::ExperimentReport run_evolve(const RunConfig& cfg);
report::ExperimentReport run_wkb(const RunConfig& cfg);
report::ExperimentReport run_radial(const RunConfig& cfg);
report::ExperimentReport run_dispersions(const RunConfig& cfg);

/// Dispatch on cfg.experiment ("all" concatenates every module run into one
/// report with module-prefixed names). Writes per-experiment CSVs into
/// cfg.output_dir as a side effect; report.json is written by the caller.
report::ExperimentReport run_experiment(const RunConfig& cfg);

/// Serializes and writes report.json (atomic) into cfg.output_dir; returns
/// the JSON text that was written.
std::string write_report(const RunConfig& cfg, const report::ExperimentReport& rep);

}  // namespace furthlab::exp
