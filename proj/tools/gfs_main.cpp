// gfs: command-line driver for the free-fermion scrambling experiments.
//
//   gfs quench     --config FILE [--seed N] [--workers N] [--out DIR]
//   gfs tmi | sff | levelstats   (same flags)
//   gfs config     print the fully expanded config and exit
//
// Exit codes: 0 success, 2 config error, 3 numerical failure, 1 otherwise.

#include <cstdio>
#include <cstdlib>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gfs/gfs.h"

namespace {

struct ConfigDeleter {
  void operator()(gfs_config* c) const { gfs_config_free(c); }
};
using ConfigPtr = std::unique_ptr<gfs_config, ConfigDeleter>;

struct Options {
  std::string config_path;
  std::string manifest_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::string out_dir;
  bool override_size_guard = false;
  std::vector<std::string> assignments;
};

int exit_code(gfs_status s) {
  switch (s) {
    case GFS_OK: return 0;
    case GFS_ERR_CONFIG:
    case GFS_ERR_ARGUMENT:
    case GFS_ERR_TOO_LARGE: return 2;
    case GFS_ERR_NUMERIC: return 3;
    default: return 1;
  }
}

int report(gfs_status s) {
  std::fprintf(stderr, "gfs: %s: %s\n", gfs_status_name(s), gfs_last_error());
  std::uint64_t index = 0, seed = 0;
  if (gfs_last_sample_failure(&index, &seed))
    std::fprintf(stderr, "gfs: failing sample %llu, seed %llu\n",
                 static_cast<unsigned long long>(index), static_cast<unsigned long long>(seed));
  return exit_code(s);
}

// Loads the config (file, manifest or defaults) and applies the flags.
gfs_status resolve(const std::string& command, const Options& opt, ConfigPtr& out) {
  gfs_config* raw = nullptr;
  gfs_status s;
  if (!opt.manifest_path.empty())
    s = gfs_config_from_manifest(opt.manifest_path.c_str(), &raw);
  else if (!opt.config_path.empty())
    s = gfs_config_load(opt.config_path.c_str(), &raw);
  else
    s = gfs_config_default(command == "config" ? "quench" : command.c_str(), &raw);
  if (s != GFS_OK) return s;
  out.reset(raw);

  if (command != "config") {
    const std::string assignment = "run.command=" + command;
    if ((s = gfs_config_set(raw, assignment.c_str())) != GFS_OK) return s;
  }
  for (const auto& a : opt.assignments)
    if ((s = gfs_config_set(raw, a.c_str())) != GFS_OK) return s;
  if (opt.seed && (s = gfs_config_set_seed(raw, *opt.seed)) != GFS_OK) return s;
  if (opt.workers && (s = gfs_config_set_workers(raw, *opt.workers)) != GFS_OK) return s;
  if (opt.override_size_guard && (s = gfs_config_set_size_override(raw, 1)) != GFS_OK)
    return s;
  return gfs_config_validate(raw);
}

std::string serialized(const gfs_config* c) {
  size_t needed = 0;
  gfs_config_serialize(c, nullptr, 0, &needed);
  std::string text(needed, '\0');
  gfs_config_serialize(c, text.data(), text.size(), &needed);
  text.resize(needed - 1);
  return text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Free-fermion scrambling experiments"};
  app.set_version_flag("--version", gfs_version());
  app.require_subcommand(1);

  Options opt;
  auto add_common = [&](CLI::App* sub) {
    auto* cfg = sub->add_option("--config", opt.config_path, "Config file")
                    ->check(CLI::ExistingFile);
    sub->add_option("--from-manifest", opt.manifest_path,
                    "Re-run the config recorded in a manifest.json")
        ->check(CLI::ExistingFile)
        ->excludes(cfg);
    sub->add_option("--seed", opt.seed, "Master seed (overrides the config)");
    sub->add_option("--set", opt.assignments, "Override section.key=value")
        ->allow_extra_args(false);
  };

  std::vector<CLI::App*> runs;
  for (const char* name : {"quench", "tmi", "sff", "levelstats"}) {
    CLI::App* sub = app.add_subcommand(name, std::string("Run the ") + name + " experiment");
    add_common(sub);
    sub->add_option("--workers", opt.workers, "Parallel sample workers")
        ->check(CLI::PositiveNumber);
    sub->add_option("--out", opt.out_dir, "Output directory (default $GFS_OUT_DIR or .)");
    sub->add_flag("--override-size-guard", opt.override_size_guard,
                  "Allow many-body enumeration beyond the size guard");
    runs.push_back(sub);
  }
  CLI::App* show = app.add_subcommand("config", "Print the expanded config");
  add_common(show);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (show->parsed()) {
    ConfigPtr config;
    if (gfs_status s = resolve("config", opt, config); s != GFS_OK) return report(s);
    std::fputs(serialized(config.get()).c_str(), stdout);
    return 0;
  }

  for (CLI::App* sub : runs) {
    if (!sub->parsed()) continue;
    ConfigPtr config;
    if (gfs_status s = resolve(sub->get_name(), opt, config); s != GFS_OK) return report(s);
    std::string out = opt.out_dir;
    if (out.empty()) {
      const char* env = std::getenv("GFS_OUT_DIR");
      out = env && *env ? env : ".";
    }
    double seconds = 0.0;
    if (gfs_status s = gfs_run(config.get(), out.c_str(), &seconds); s != GFS_OK)
      return report(s);
    std::fprintf(stderr, "gfs: %s finished in %.2f s, outputs in %s\n",
                 sub->get_name().c_str(), seconds, out.c_str());
    return 0;
  }
  return 1;
}
