#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gfs/dynamics.hpp"
#include "gfs/models.hpp"

namespace gfs {

enum class Command { Quench, Tmi, Sff, LevelStats };

std::string_view to_string(Command command) noexcept;
std::optional<Command> parse_command(std::string_view name) noexcept;

enum class GridKind { Linear, Log };

/// Linear: 0, dt, 2 dt, ... up to t_max. Log: `points` values spaced
/// geometrically over [t_min, t_max], preceded by 0 when include_zero.
struct TimeGrid {
  GridKind kind = GridKind::Linear;
  double dt = 0.1;
  double t_min = 0.01;
  double t_max = 200.0;
  int points = 200;
  bool include_zero = true;
};

std::vector<double> make_times(const TimeGrid& grid);

struct Geometry {
  int block = 20;                  // length of A1 and A2 (quench)
  int separation = 40;             // sites strictly between A1 and A2
  std::optional<int> offset;       // first site of A1; centred when empty
  int parts = 4;                   // equal adjacent blocks for TMI
};

enum class SpectrumMode { SingleParticle, ManyBody };

struct RunConfig {
  Command command = Command::Quench;
  std::uint64_t seed = 0;
  int samples = 1;
  int workers = 1;

  ModelConfig model{ModelKind::CleanIsing, 200, 2.0, 2.0, 1.0, 3.0, 1.0, 0};
  // Pre-quench Hamiltonian; an empty kind is the Fock vacuum.
  std::optional<ModelKind> initial_kind = ModelKind::CleanIsing;
  ModelConfig initial{ModelKind::CleanIsing, 200, 3.0, 2.0, 1.0, 3.0, 1.0, 0};

  Geometry geometry;
  TimeGrid time;

  double late_fraction = 0.5;
  double memory_threshold = 5.0;

  int haar_draws = 100;
  HaarGroup haar_group = HaarGroup::ParticleConserving;

  double beta = 1.0;

  SpectrumMode spectrum = SpectrumMode::SingleParticle;
  int bins = 50;
  int wigner_beta = 2;
  int size_guard = 16;
  bool override_size_guard = false;
};

/// Throws Error(Config) naming the offending field.
void validate(const RunConfig& config);

/// Sectioned key = value text. '#' starts a comment. Unknown sections or
/// keys, duplicates and malformed values throw Error(Config) with
/// "<source>:<line>: ..." diagnostics. The result is validated.
RunConfig parse_config(std::string_view text, std::string_view source = "<config>");
RunConfig load_config(const std::filesystem::path& path);

/// Applies "section.key=value" without revalidating.
void apply_override(RunConfig& config, std::string_view assignment);

/// Every key, fixed order, doubles with 17 significant digits.
std::string serialize_config(const RunConfig& config);

/// All keys as "section.key".
std::vector<std::string> config_keys();

}  // namespace gfs
