#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "gfs/config.hpp"
#include "gfs/dynamics.hpp"
#include "gfs/ensemble.hpp"
#include "gfs/spectral.hpp"

namespace gfs {

/// Seed index reserved for the Haar reference draws of a TMI run; sample
/// indices stay far below it.
inline constexpr std::uint64_t kHaarSeedIndex = std::uint64_t{1} << 40;

/// Sites of A1 and A2 for a quench run.
std::vector<Subsystem> quench_subsystems(const RunConfig& config);
/// The first three of geometry.parts equal adjacent blocks.
std::vector<Subsystem> tmi_subsystems(const RunConfig& config);

/// Post-quench generator of one sample, seeded with `sample_seed`.
QuadraticHamiltonian sample_hamiltonian(const RunConfig& config, std::uint64_t sample_seed);
/// Initial state of one sample; disordered initial models draw from
/// derive_seed(sample_seed, 0).
CorrelationMatrix sample_initial_state(const RunConfig& config, std::uint64_t sample_seed);

struct QuenchResult {
  std::vector<double> times;
  std::vector<std::string> names;          // S_A1, S_A2, S_A1uA2, I_A1_A2
  std::vector<CurveAggregate> series;      // one per name
  MemoryVerdict memory;                    // on the mean I_A1_A2 curve
};

struct TmiResult {
  std::vector<double> times;
  CurveAggregate i3;
  HaarTmi haar;
};

struct SffResult {
  std::vector<double> times;
  CurveAggregate g_full;
  CurveAggregate g_sp;
  Aggregate plateau;  // analytic plateau over samples
};

struct LevelStatsResult {
  std::vector<std::uint64_t> seeds;
  std::vector<double> sample_means;
  std::vector<std::size_t> sample_counts;
  Aggregate pooled;
  RatioHistogram histogram{2};
};

QuenchResult run_quench(const RunConfig& config);
TmiResult run_tmi(const RunConfig& config);
SffResult run_sff(const RunConfig& config);
LevelStatsResult run_levelstats(const RunConfig& config);

using ExperimentResult = std::variant<QuenchResult, TmiResult, SffResult, LevelStatsResult>;

/// Dispatches on config.command.
ExperimentResult run_ensemble(const RunConfig& config);

}  // namespace gfs
