#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "gfs/config.hpp"
#include "gfs/experiments.hpp"
#include "gfs/output.hpp"

namespace gfs {

struct RunManifest {
  std::string command;
  std::string config_text;  // serialize_config of the resolved config
  std::uint64_t seed = 0;
  std::string version;
  std::vector<std::filesystem::path> outputs;
  double duration_seconds = 0.0;
  std::string summary_json;  // command-specific results
};

/// Table builders; the CSV bytes depend only on the result.
CsvTable series_table(const QuenchResult& r);
CsvTable tmi_table(const TmiResult& r);
CsvTable sff_table(const SffResult& r, double beta);
CsvTable ratios_table(const LevelStatsResult& r);
CsvTable histogram_table(const LevelStatsResult& r, int wigner_beta);

/// Each runs the experiment for `config` (whose command must match), writes
/// the data files and manifest.json into out_dir and returns the manifest.
RunManifest cmd_quench(const RunConfig& config, const std::filesystem::path& out_dir);
RunManifest cmd_tmi(const RunConfig& config, const std::filesystem::path& out_dir);
RunManifest cmd_sff(const RunConfig& config, const std::filesystem::path& out_dir);
RunManifest cmd_levelstats(const RunConfig& config, const std::filesystem::path& out_dir);
RunManifest run_command(const RunConfig& config, const std::filesystem::path& out_dir);

std::string manifest_json(const RunManifest& manifest);
/// Recovers the resolved config recorded in a manifest.json.
RunConfig config_from_manifest(const std::filesystem::path& path);

}  // namespace gfs
