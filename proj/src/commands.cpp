#include "gfs/commands.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gfs/error.hpp"
#include "gfs/output.hpp"
#include "gfs/version.hpp"

namespace gfs {

namespace {

using json = nlohmann::ordered_json;

void require_command(const RunConfig& config, Command expected) {
  if (config.command != expected)
    throw Error(Errc::Config, "run.command is '" + std::string(to_string(config.command)) +
                                  "' but the '" + std::string(to_string(expected)) +
                                  "' command was invoked");
}

json config_object(const RunConfig& config) {
  json j = json::object();
  std::istringstream in(serialize_config(config));
  std::string line, section;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.front() == '[') {
      section = line.substr(1, line.size() - 2);
      j[section] = json::object();
      continue;
    }
    const auto eq = line.find(" = ");
    j[section][line.substr(0, eq)] = line.substr(eq + 3);
  }
  return j;
}

template <class Work>
RunManifest execute(const RunConfig& config, Command command,
                    const std::filesystem::path& out_dir, Work&& work) {
  require_command(config, command);
  validate(config);
  const auto start = std::chrono::steady_clock::now();
  RunManifest m;
  m.command = std::string(to_string(command));
  m.config_text = serialize_config(config);
  m.seed = config.seed;
  m.version = kVersion;
  json summary = json::object();
  for (const auto& [name, table] : work(summary)) {
    const auto path = out_dir / name;
    write_csv(path, table);
    m.outputs.push_back(path);
  }
  m.summary_json = summary.dump();
  m.duration_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const auto manifest_path = out_dir / "manifest.json";
  m.outputs.push_back(manifest_path);
  write_text(manifest_path, manifest_json(m));
  return m;
}

std::vector<std::string> mean_and_error(const CurveAggregate& c, std::size_t i) {
  return {format_real(c.mean[i]), format_real(c.std_error[i])};
}

}  // namespace

CsvTable series_table(const QuenchResult& r) {
  CsvTable t;
  t.comments = {kUnitsComment, "samples: " + std::to_string(r.series.front().n_samples)};
  t.columns = {"t"};
  for (const auto& name : r.names) {
    t.columns.push_back(name + "_mean");
    t.columns.push_back(name + "_stderr");
  }
  for (std::size_t i = 0; i < r.times.size(); ++i) {
    std::vector<std::string> row = {format_real(r.times[i])};
    for (const auto& s : r.series)
      for (auto& cell : mean_and_error(s, i)) row.push_back(std::move(cell));
    t.rows.push_back(std::move(row));
  }
  return t;
}

CsvTable tmi_table(const TmiResult& r) {
  CsvTable t;
  t.comments = {kUnitsComment, "samples: " + std::to_string(r.i3.n_samples),
                "haar_bound," + format_real(r.haar.mean) + "," + format_real(r.haar.std_error) +
                    "," + std::to_string(r.haar.draws.size())};
  t.columns = {"t", "I3_mean", "I3_stderr"};
  for (std::size_t i = 0; i < r.times.size(); ++i) {
    std::vector<std::string> row = {format_real(r.times[i])};
    for (auto& cell : mean_and_error(r.i3, i)) row.push_back(std::move(cell));
    t.rows.push_back(std::move(row));
  }
  return t;
}

CsvTable sff_table(const SffResult& r, double beta) {
  CsvTable t;
  t.comments = {kUnitsComment, "samples: " + std::to_string(r.g_full.n_samples),
                "beta: " + format_real(beta),
                "plateau," + format_real(r.plateau.mean) + "," + format_real(r.plateau.std_error)};
  t.columns = {"t", "g_full_mean", "g_full_stderr", "g_sp_mean", "g_sp_stderr"};
  for (std::size_t i = 0; i < r.times.size(); ++i) {
    std::vector<std::string> row = {format_real(r.times[i])};
    for (auto& cell : mean_and_error(r.g_full, i)) row.push_back(std::move(cell));
    for (auto& cell : mean_and_error(r.g_sp, i)) row.push_back(std::move(cell));
    t.rows.push_back(std::move(row));
  }
  return t;
}

CsvTable ratios_table(const LevelStatsResult& r) {
  CsvTable t;
  t.comments = {kUnitsComment, "pooled," + format_real(r.pooled.mean) + "," +
                                   format_real(r.pooled.std_error) + "," +
                                   std::to_string(r.sample_means.size())};
  t.columns = {"sample", "seed", "r_mean", "n_ratios"};
  for (std::size_t i = 0; i < r.sample_means.size(); ++i)
    t.rows.push_back({std::to_string(i), std::to_string(r.seeds[i]),
                      format_real(r.sample_means[i]), std::to_string(r.sample_counts[i])});
  return t;
}

CsvTable histogram_table(const LevelStatsResult& r, int wigner_beta) {
  const auto wigner = wigner_ensemble(wigner_beta);
  if (!wigner) throw Error(Errc::InvalidArgument, "Dyson index must be 1, 2 or 4");
  CsvTable t;
  t.comments = {kUnitsComment, "ratios: " + std::to_string(r.histogram.total()),
                "wigner_beta: " + std::to_string(wigner_beta)};
  t.columns = {"r_center", "density", "poisson", "wigner"};
  const auto centers = r.histogram.centers();
  const auto density = r.histogram.density();
  for (std::size_t i = 0; i < centers.size(); ++i)
    t.rows.push_back({format_real(centers[i]), format_real(density[i]),
                      format_real(reference_ratio_pdf(RatioEnsemble::Poisson, centers[i])),
                      format_real(reference_ratio_pdf(*wigner, centers[i]))});
  return t;
}

RunManifest cmd_quench(const RunConfig& config, const std::filesystem::path& out_dir) {
  return execute(config, Command::Quench, out_dir, [&](json& summary) {
    const QuenchResult r = run_quench(config);
    summary["memory"] = {{"present", r.memory.present},     {"peak", r.memory.peak},
                         {"peak_time", r.memory.peak_time}, {"late_mean", r.memory.late_mean},
                         {"ratio", r.memory.ratio}};
    const auto parts = quench_subsystems(config);
    summary["A1"] = {parts[0].sites().front(), parts[0].sites().back()};
    summary["A2"] = {parts[1].sites().front(), parts[1].sites().back()};
    return std::vector<std::pair<std::string, CsvTable>>{{"series.csv", series_table(r)}};
  });
}

RunManifest cmd_tmi(const RunConfig& config, const std::filesystem::path& out_dir) {
  return execute(config, Command::Tmi, out_dir, [&](json& summary) {
    const TmiResult r = run_tmi(config);
    summary["haar_bound"] = {{"mean", r.haar.mean},
                             {"stderr", r.haar.std_error},
                             {"draws", r.haar.draws.size()},
                             {"group", std::string(to_string(config.haar_group))}};
    return std::vector<std::pair<std::string, CsvTable>>{{"tmi.csv", tmi_table(r)}};
  });
}

RunManifest cmd_sff(const RunConfig& config, const std::filesystem::path& out_dir) {
  return execute(config, Command::Sff, out_dir, [&](json& summary) {
    const SffResult r = run_sff(config);
    summary["beta"] = config.beta;
    summary["plateau"] = {{"mean", r.plateau.mean}, {"stderr", r.plateau.std_error}};
    return std::vector<std::pair<std::string, CsvTable>>{{"sff.csv", sff_table(r, config.beta)}};
  });
}

RunManifest cmd_levelstats(const RunConfig& config, const std::filesystem::path& out_dir) {
  return execute(config, Command::LevelStats, out_dir, [&](json& summary) {
    const LevelStatsResult r = run_levelstats(config);
    summary["pooled"] = {{"mean", r.pooled.mean},
                         {"stderr", r.pooled.std_error},
                         {"samples", r.sample_means.size()}};
    return std::vector<std::pair<std::string, CsvTable>>{
        {"ratios.csv", ratios_table(r)},
        {"histogram.csv", histogram_table(r, config.wigner_beta)}};
  });
}

RunManifest run_command(const RunConfig& config, const std::filesystem::path& out_dir) {
  switch (config.command) {
    case Command::Quench: return cmd_quench(config, out_dir);
    case Command::Tmi: return cmd_tmi(config, out_dir);
    case Command::Sff: return cmd_sff(config, out_dir);
    case Command::LevelStats: return cmd_levelstats(config, out_dir);
  }
  throw Error(Errc::InvalidArgument, "unknown command");
}

std::string manifest_json(const RunManifest& m) {
  json j;
  j["command"] = m.command;
  j["version"] = m.version;
  j["seed"] = m.seed;
  j["config"] = config_object(parse_config(m.config_text, "manifest"));
  j["config_text"] = m.config_text;
  json outputs = json::array();
  for (const auto& p : m.outputs) outputs.push_back(p.filename().string());
  j["outputs"] = outputs;
  j["duration_seconds"] = m.duration_seconds;
  j["results"] = m.summary_json.empty() ? json::object() : json::parse(m.summary_json);
  return j.dump(2) + "\n";
}

RunConfig config_from_manifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot open manifest " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(Errc::Config, path.string() + ": " + e.what());
  }
  if (!j.contains("config_text") || !j["config_text"].is_string())
    throw Error(Errc::Config, path.string() + ": no config_text entry");
  return parse_config(j["config_text"].get<std::string>(), path.string());
}

}  // namespace gfs
