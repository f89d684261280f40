#include "gfs/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "gfs/error.hpp"

namespace gfs {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Parse failures inside a field are reported as this and decorated with the
// location by the caller.
struct FieldError {
  std::string message;
};

double to_double(std::string_view v) {
  double x = 0.0;
  const auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || end != v.data() + v.size() || !std::isfinite(x))
    throw FieldError{"expected a finite real number, got '" + std::string(v) + "'"};
  return x;
}

template <class Int>
Int to_integer(std::string_view v) {
  Int x{};
  const auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || end != v.data() + v.size())
    throw FieldError{"expected an integer, got '" + std::string(v) + "'"};
  return x;
}

bool to_bool(std::string_view v) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw FieldError{"expected true or false, got '" + std::string(v) + "'"};
}

ModelKind to_model_kind(std::string_view v) {
  if (auto k = parse_model_kind(v)) return *k;
  throw FieldError{"unknown model kind '" + std::string(v) +
                   "' (clean_ising, disordered_ising, syk2, gsyk2)"};
}

struct Field {
  std::string section;
  std::string key;
  std::function<void(RunConfig&, std::string_view)> set;
  std::function<std::string(const RunConfig&)> get;

  std::string name() const { return section + "." + key; }
};

#define GFS_REAL(sec, k, member)                                                      \
  Field {                                                                             \
    sec, k, [](RunConfig& c, std::string_view v) { c.member = to_double(v); },        \
        [](const RunConfig& c) { return format_double(c.member); }                    \
  }
#define GFS_INT(sec, k, member)                                                       \
  Field {                                                                             \
    sec, k, [](RunConfig& c, std::string_view v) { c.member = to_integer<int>(v); },  \
        [](const RunConfig& c) { return std::to_string(c.member); }                   \
  }
#define GFS_BOOL(sec, k, member)                                                      \
  Field {                                                                             \
    sec, k, [](RunConfig& c, std::string_view v) { c.member = to_bool(v); },          \
        [](const RunConfig& c) { return std::string(c.member ? "true" : "false"); }   \
  }

const std::vector<Field>& fields() {
  static const std::vector<Field> table = {
      {"run", "command",
       [](RunConfig& c, std::string_view v) {
         auto cmd = parse_command(v);
         if (!cmd)
           throw FieldError{"unknown command '" + std::string(v) +
                            "' (quench, tmi, sff, levelstats)"};
         c.command = *cmd;
       },
       [](const RunConfig& c) { return std::string(to_string(c.command)); }},
      {"run", "seed",
       [](RunConfig& c, std::string_view v) { c.seed = to_integer<std::uint64_t>(v); },
       [](const RunConfig& c) { return std::to_string(c.seed); }},
      GFS_INT("run", "samples", samples),
      GFS_INT("run", "workers", workers),

      {"model", "kind",
       [](RunConfig& c, std::string_view v) { c.model.kind = to_model_kind(v); },
       [](const RunConfig& c) { return std::string(to_string(c.model.kind)); }},
      GFS_INT("model", "L", model.L),
      GFS_REAL("model", "h", model.h),
      GFS_REAL("model", "J", model.J),
      GFS_REAL("model", "Jmin", model.Jmin),
      GFS_REAL("model", "Jmax", model.Jmax),
      GFS_REAL("model", "sigma", model.sigma),

      {"initial", "kind",
       [](RunConfig& c, std::string_view v) {
         if (v == "vacuum")
           c.initial_kind.reset();
         else
           c.initial_kind = to_model_kind(v);
       },
       [](const RunConfig& c) {
         return c.initial_kind ? std::string(to_string(*c.initial_kind))
                               : std::string("vacuum");
       }},
      GFS_REAL("initial", "h", initial.h),
      GFS_REAL("initial", "J", initial.J),
      GFS_REAL("initial", "Jmin", initial.Jmin),
      GFS_REAL("initial", "Jmax", initial.Jmax),
      GFS_REAL("initial", "sigma", initial.sigma),

      GFS_INT("geometry", "block", geometry.block),
      GFS_INT("geometry", "separation", geometry.separation),
      {"geometry", "offset",
       [](RunConfig& c, std::string_view v) {
         if (v == "center")
           c.geometry.offset.reset();
         else
           c.geometry.offset = to_integer<int>(v);
       },
       [](const RunConfig& c) {
         return c.geometry.offset ? std::to_string(*c.geometry.offset)
                                  : std::string("center");
       }},
      GFS_INT("geometry", "parts", geometry.parts),

      {"time", "grid",
       [](RunConfig& c, std::string_view v) {
         if (v == "linear")
           c.time.kind = GridKind::Linear;
         else if (v == "log")
           c.time.kind = GridKind::Log;
         else
           throw FieldError{"expected linear or log, got '" + std::string(v) + "'"};
       },
       [](const RunConfig& c) {
         return std::string(c.time.kind == GridKind::Linear ? "linear" : "log");
       }},
      GFS_REAL("time", "dt", time.dt),
      GFS_REAL("time", "t_min", time.t_min),
      GFS_REAL("time", "t_max", time.t_max),
      GFS_INT("time", "points", time.points),
      GFS_BOOL("time", "include_zero", time.include_zero),

      GFS_REAL("memory", "late_fraction", late_fraction),
      GFS_REAL("memory", "threshold", memory_threshold),

      GFS_INT("tmi", "haar_draws", haar_draws),
      {"tmi", "haar_group",
       [](RunConfig& c, std::string_view v) {
         if (v == to_string(HaarGroup::ParticleConserving))
           c.haar_group = HaarGroup::ParticleConserving;
         else if (v == to_string(HaarGroup::Bogoliubov))
           c.haar_group = HaarGroup::Bogoliubov;
         else
           throw FieldError{"expected particle_conserving or bogoliubov, got '" +
                            std::string(v) + "'"};
       },
       [](const RunConfig& c) { return std::string(to_string(c.haar_group)); }},

      GFS_REAL("sff", "beta", beta),

      {"levelstats", "spectrum",
       [](RunConfig& c, std::string_view v) {
         if (v == "single_particle")
           c.spectrum = SpectrumMode::SingleParticle;
         else if (v == "many_body")
           c.spectrum = SpectrumMode::ManyBody;
         else
           throw FieldError{"expected single_particle or many_body, got '" +
                            std::string(v) + "'"};
       },
       [](const RunConfig& c) {
         return std::string(c.spectrum == SpectrumMode::SingleParticle ? "single_particle"
                                                                       : "many_body");
       }},
      GFS_INT("levelstats", "bins", bins),
      GFS_INT("levelstats", "wigner_beta", wigner_beta),
      GFS_INT("levelstats", "size_guard", size_guard),
      GFS_BOOL("levelstats", "override_size_guard", override_size_guard),
  };
  return table;
}

#undef GFS_REAL
#undef GFS_INT
#undef GFS_BOOL

const Field* find_field(std::string_view section, std::string_view key) {
  for (const Field& f : fields())
    if (f.section == section && f.key == key) return &f;
  return nullptr;
}

bool known_section(std::string_view section) {
  for (const Field& f : fields())
    if (f.section == section) return true;
  return false;
}

// First violated constraint as (field, message).
std::optional<std::pair<std::string, std::string>> first_violation(const RunConfig& c) {
  using V = std::optional<std::pair<std::string, std::string>>;
  if (c.samples < 1) return V{{"run.samples", "must be at least 1"}};
  if (c.workers < 1) return V{{"run.workers", "must be at least 1"}};

  const ModelConfig& m = c.model;
  if (m.L < 2) return V{{"model.L", "must be at least 2"}};
  if (m.Jmin > m.Jmax) return V{{"model.Jmin", "window must satisfy Jmin <= Jmax"}};
  if (m.sigma <= 0.0) return V{{"model.sigma", "must be positive"}};
  if (c.initial_kind) {
    if (c.initial.Jmin > c.initial.Jmax)
      return V{{"initial.Jmin", "window must satisfy Jmin <= Jmax"}};
    if (c.initial.sigma <= 0.0) return V{{"initial.sigma", "must be positive"}};
  }

  const Geometry& g = c.geometry;
  if (c.command == Command::Quench) {
    if (g.block < 1) return V{{"geometry.block", "must be at least 1"}};
    if (g.separation < 0) return V{{"geometry.separation", "must be non-negative"}};
    const int span = 2 * g.block + g.separation;
    if (span > m.L)
      return V{{"geometry.block", "two blocks and their separation exceed model.L"}};
    if (g.offset && (*g.offset < 0 || *g.offset + span > m.L))
      return V{{"geometry.offset", "blocks do not fit in the chain"}};
  }
  if (c.command == Command::Tmi) {
    if (g.parts < 3) return V{{"geometry.parts", "must be at least 3"}};
    if (m.L < g.parts) return V{{"geometry.parts", "exceeds model.L"}};
    if (c.haar_draws < 1) return V{{"tmi.haar_draws", "must be at least 1"}};
  }

  const TimeGrid& t = c.time;
  if (!(t.t_max >= 0.0)) return V{{"time.t_max", "must be non-negative"}};
  if (t.kind == GridKind::Linear) {
    if (!(t.dt > 0.0)) return V{{"time.dt", "must be positive"}};
    if (t.t_max / t.dt > 1e7) return V{{"time.dt", "grid would exceed 10^7 points"}};
  } else {
    if (!(t.t_min > 0.0)) return V{{"time.t_min", "must be positive on a log grid"}};
    if (!(t.t_max > t.t_min)) return V{{"time.t_max", "must exceed time.t_min"}};
    if (t.points < 2) return V{{"time.points", "must be at least 2"}};
  }

  if (!(c.late_fraction > 0.0 && c.late_fraction <= 1.0))
    return V{{"memory.late_fraction", "must lie in (0, 1]"}};
  if (!(c.memory_threshold > 0.0)) return V{{"memory.threshold", "must be positive"}};
  if (c.beta < 0.0) return V{{"sff.beta", "must be non-negative"}};
  if (c.bins < 2) return V{{"levelstats.bins", "must be at least 2"}};
  if (c.wigner_beta != 1 && c.wigner_beta != 2 && c.wigner_beta != 4)
    return V{{"levelstats.wigner_beta", "must be 1, 2 or 4"}};
  if (c.size_guard < 1) return V{{"levelstats.size_guard", "must be positive"}};
  return std::nullopt;
}

}  // namespace

std::string_view to_string(Command command) noexcept {
  switch (command) {
    case Command::Quench: return "quench";
    case Command::Tmi: return "tmi";
    case Command::Sff: return "sff";
    case Command::LevelStats: return "levelstats";
  }
  return "unknown";
}

std::optional<Command> parse_command(std::string_view name) noexcept {
  for (Command c : {Command::Quench, Command::Tmi, Command::Sff, Command::LevelStats})
    if (to_string(c) == name) return c;
  return std::nullopt;
}

std::vector<double> make_times(const TimeGrid& grid) {
  std::vector<double> times;
  if (grid.kind == GridKind::Linear) {
    const auto n = static_cast<long>(std::floor(grid.t_max / grid.dt * (1.0 + 1e-12)));
    times.reserve(n + 1);
    for (long i = 0; i <= n; ++i) times.push_back(static_cast<double>(i) * grid.dt);
    return times;
  }
  if (grid.include_zero) times.push_back(0.0);
  const double a = std::log(grid.t_min);
  const double b = std::log(grid.t_max);
  for (int i = 0; i < grid.points; ++i)
    times.push_back(std::exp(a + (b - a) * i / (grid.points - 1)));
  return times;
}

void validate(const RunConfig& config) {
  if (auto v = first_violation(config))
    throw Error(Errc::Config, v->first + ": " + v->second);
}

RunConfig parse_config(std::string_view text, std::string_view source) {
  RunConfig config;
  std::map<std::string, int> seen;  // field -> line
  std::string section;
  int line_no = 0;
  const std::string src(source);

  auto fail = [&](int line, const std::string& message) -> Error {
    return Error(Errc::Config, src + ":" + std::to_string(line) + ": " + message);
  };

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    if (const auto hash = raw.find('#'); hash != std::string_view::npos)
      raw = raw.substr(0, hash);
    const std::string_view line = trim(raw);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw fail(line_no, "unterminated section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (!known_section(section)) throw fail(line_no, "unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw fail(line_no, "expected key = value");
    if (section.empty()) throw fail(line_no, "key outside of any section");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    const Field* field = find_field(section, key);
    if (!field) throw fail(line_no, "unknown key '" + std::string(key) + "' in [" + section + "]");
    if (auto it = seen.find(field->name()); it != seen.end())
      throw fail(line_no, field->name() + " already set on line " + std::to_string(it->second));
    seen[field->name()] = line_no;
    try {
      field->set(config, value);
    } catch (const FieldError& e) {
      throw fail(line_no, field->name() + ": " + e.message);
    }
  }

  if (auto v = first_violation(config)) {
    if (auto it = seen.find(v->first); it != seen.end())
      throw fail(it->second, v->first + ": " + v->second);
    throw Error(Errc::Config, src + ": " + v->first + ": " + v->second);
  }
  return config;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot open config " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path.string());
}

void apply_override(RunConfig& config, std::string_view assignment) {
  const auto eq = assignment.find('=');
  const std::string_view name = trim(assignment.substr(0, eq));
  const auto dot = name.find('.');
  if (eq == std::string_view::npos || dot == std::string_view::npos)
    throw Error(Errc::Config, "override must look like section.key=value, got '" +
                                  std::string(assignment) + "'");
  const Field* field = find_field(name.substr(0, dot), name.substr(dot + 1));
  if (!field) throw Error(Errc::Config, "unknown key '" + std::string(name) + "'");
  try {
    field->set(config, trim(assignment.substr(eq + 1)));
  } catch (const FieldError& e) {
    throw Error(Errc::Config, field->name() + ": " + e.message);
  }
}

std::string serialize_config(const RunConfig& config) {
  std::string out;
  std::string section;
  for (const Field& f : fields()) {
    if (f.section != section) {
      if (!section.empty()) out += '\n';
      section = f.section;
      out += "[" + section + "]\n";
    }
    out += f.key + " = " + f.get(config) + "\n";
  }
  return out;
}

std::vector<std::string> config_keys() {
  std::vector<std::string> keys;
  for (const Field& f : fields()) keys.push_back(f.name());
  return keys;
}

}  // namespace gfs
