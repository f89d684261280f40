#include "gfs/gfs.h"

#include <cstring>
#include <new>
#include <string>

#include "gfs/commands.hpp"
#include "gfs/dynamics.hpp"
#include "gfs/error.hpp"
#include "gfs/models.hpp"
#include "gfs/spectral.hpp"
#include "gfs/version.hpp"

struct gfs_config {
  gfs::RunConfig value;
};
struct gfs_hamiltonian {
  gfs::QuadraticHamiltonian value;
};
struct gfs_basis {
  gfs::BogoliubovBasis value;
};

namespace {

struct LastError {
  std::string message;
  bool sample = false;
  std::uint64_t index = 0;
  std::uint64_t seed = 0;
};

thread_local LastError last_error;

gfs_status status_of(gfs::Errc code) {
  using gfs::Errc;
  switch (code) {
    case Errc::Config: return GFS_ERR_CONFIG;
    case Errc::Io: return GFS_ERR_IO;
    case Errc::TooLarge: return GFS_ERR_TOO_LARGE;
    case Errc::DegenerateSplitFailure:
    case Errc::SpectrumOutOfRange:
    case Errc::TooFewLevels:
    case Errc::SampleFailure: return GFS_ERR_NUMERIC;
    default: return GFS_ERR_ARGUMENT;
  }
}

gfs_status fail(gfs_status status, std::string message) {
  last_error = {std::move(message), false, 0, 0};
  return status;
}

template <class Body>
gfs_status guarded(Body&& body) {
  try {
    body();
    return GFS_OK;
  } catch (const gfs::SampleFailure& e) {
    last_error = {e.what(), true, e.index(), e.seed()};
    return GFS_ERR_NUMERIC;
  } catch (const gfs::Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(GFS_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(GFS_ERR_INTERNAL, e.what());
  }
}

#define GFS_REQUIRE(cond, what) \
  if (!(cond)) return fail(GFS_ERR_ARGUMENT, what)

gfs::CMatrix read_complex(int L, const double* data) {
  gfs::CMatrix m(L, L);
  for (int i = 0; i < L; ++i)
    for (int j = 0; j < L; ++j) {
      const double* z = data + 2 * (static_cast<std::size_t>(i) * L + j);
      m(i, j) = gfs::cplx(z[0], z[1]);
    }
  return m;
}

gfs_status copy_out(const std::string& s, char* buffer, size_t capacity, size_t* needed) {
  if (needed) *needed = s.size() + 1;
  if (buffer && capacity > 0) {
    const size_t n = std::min(capacity - 1, s.size());
    std::memcpy(buffer, s.data(), n);
    buffer[n] = '\0';
  }
  return GFS_OK;
}

}  // namespace

extern "C" {

const char* gfs_version(void) { return gfs::kVersion; }

const char* gfs_last_error(void) { return last_error.message.c_str(); }

int gfs_last_sample_failure(uint64_t* index, uint64_t* seed) {
  if (!last_error.sample) return 0;
  if (index) *index = last_error.index;
  if (seed) *seed = last_error.seed;
  return 1;
}

const char* gfs_status_name(gfs_status status) {
  switch (status) {
    case GFS_OK: return "ok";
    case GFS_ERR_ARGUMENT: return "invalid argument";
    case GFS_ERR_CONFIG: return "config error";
    case GFS_ERR_NUMERIC: return "numerical failure";
    case GFS_ERR_IO: return "i/o error";
    case GFS_ERR_TOO_LARGE: return "too large";
    case GFS_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

gfs_status gfs_config_default(const char* command, gfs_config** out) {
  GFS_REQUIRE(command && out, "null argument");
  const auto cmd = gfs::parse_command(command);
  if (!cmd) return fail(GFS_ERR_CONFIG, std::string("unknown command '") + command + "'");
  return guarded([&] {
    auto* c = new gfs_config{};
    c->value.command = *cmd;
    *out = c;
  });
}

gfs_status gfs_config_parse(const char* text, gfs_config** out) {
  GFS_REQUIRE(text && out, "null argument");
  return guarded([&] { *out = new gfs_config{gfs::parse_config(text)}; });
}

gfs_status gfs_config_load(const char* path, gfs_config** out) {
  GFS_REQUIRE(path && out, "null argument");
  return guarded([&] { *out = new gfs_config{gfs::load_config(path)}; });
}

gfs_status gfs_config_from_manifest(const char* path, gfs_config** out) {
  GFS_REQUIRE(path && out, "null argument");
  return guarded([&] { *out = new gfs_config{gfs::config_from_manifest(path)}; });
}

void gfs_config_free(gfs_config* config) { delete config; }

gfs_status gfs_config_set(gfs_config* config, const char* assignment) {
  GFS_REQUIRE(config && assignment, "null argument");
  return guarded([&] { gfs::apply_override(config->value, assignment); });
}

gfs_status gfs_config_set_seed(gfs_config* config, uint64_t seed) {
  GFS_REQUIRE(config, "null config");
  config->value.seed = seed;
  return GFS_OK;
}

gfs_status gfs_config_set_workers(gfs_config* config, int workers) {
  GFS_REQUIRE(config, "null config");
  if (workers < 1) return fail(GFS_ERR_CONFIG, "run.workers: must be at least 1");
  config->value.workers = workers;
  return GFS_OK;
}

gfs_status gfs_config_set_size_override(gfs_config* config, int enabled) {
  GFS_REQUIRE(config, "null config");
  config->value.override_size_guard = enabled != 0;
  return GFS_OK;
}

gfs_status gfs_config_validate(const gfs_config* config) {
  GFS_REQUIRE(config, "null config");
  return guarded([&] { gfs::validate(config->value); });
}

gfs_status gfs_config_serialize(const gfs_config* config, char* buffer, size_t capacity,
                                size_t* needed) {
  GFS_REQUIRE(config, "null config");
  return copy_out(gfs::serialize_config(config->value), buffer, capacity, needed);
}

gfs_status gfs_run(const gfs_config* config, const char* out_dir, double* duration_seconds) {
  GFS_REQUIRE(config && out_dir, "null argument");
  return guarded([&] {
    const auto manifest = gfs::run_command(config->value, out_dir);
    if (duration_seconds) *duration_seconds = manifest.duration_seconds;
  });
}

gfs_status gfs_hamiltonian_create(int L, const double* A, const double* B,
                                  gfs_hamiltonian** out) {
  GFS_REQUIRE(L >= 1 && A && B && out, "need L >= 1 and non-null matrices");
  return guarded([&] {
    gfs::QuadraticHamiltonian H{read_complex(L, A), read_complex(L, B)};
    const auto report = gfs::validate(H);
    if (!report.ok)
      throw gfs::Error(gfs::Errc::InvalidHamiltonian,
                       "A must be Hermitian and B antisymmetric (violations " +
                           std::to_string(report.hermiticity_violation) + ", " +
                           std::to_string(report.antisymmetry_violation) + ")");
    *out = new gfs_hamiltonian{std::move(H)};
  });
}

gfs_status gfs_hamiltonian_model(const char* kind, int L, double h, double J, double Jmin,
                                 double Jmax, double sigma, uint64_t seed,
                                 gfs_hamiltonian** out) {
  GFS_REQUIRE(kind && out, "null argument");
  const auto k = gfs::parse_model_kind(kind);
  if (!k) return fail(GFS_ERR_ARGUMENT, std::string("unknown model kind '") + kind + "'");
  return guarded([&] {
    *out = new gfs_hamiltonian{gfs::build({*k, L, h, J, Jmin, Jmax, sigma, seed})};
  });
}

int gfs_hamiltonian_sites(const gfs_hamiltonian* H) { return H ? H->value.sites() : 0; }

void gfs_hamiltonian_free(gfs_hamiltonian* H) { delete H; }

gfs_status gfs_diagonalize(const gfs_hamiltonian* H, gfs_basis** out) {
  GFS_REQUIRE(H && out, "null argument");
  return guarded([&] { *out = new gfs_basis{gfs::diagonalize(H->value)}; });
}

int gfs_basis_sites(const gfs_basis* basis) { return basis ? basis->value.sites() : 0; }

gfs_status gfs_basis_energies(const gfs_basis* basis, double* energies, size_t capacity) {
  GFS_REQUIRE(basis && (energies || capacity == 0), "null argument");
  const auto& e = basis->value.energies;
  const size_t n = std::min(capacity, static_cast<size_t>(e.size()));
  for (size_t i = 0; i < n; ++i) energies[i] = e(static_cast<Eigen::Index>(i));
  return GFS_OK;
}

gfs_status gfs_basis_offset(const gfs_basis* basis, double* offset) {
  GFS_REQUIRE(basis && offset, "null argument");
  *offset = basis->value.offset;
  return GFS_OK;
}

void gfs_basis_free(gfs_basis* basis) { delete basis; }

gfs_status gfs_entropy(const gfs_basis* initial, const gfs_basis* generator, double t,
                       const int* sites, size_t n_sites, double* out) {
  GFS_REQUIRE(initial && out && (sites || n_sites == 0), "null argument");
  GFS_REQUIRE(generator || t == 0.0, "a generator is required for t != 0");
  return guarded([&] {
    const int L = initial->value.sites();
    const auto A = gfs::Subsystem::from_sites(std::vector<int>(sites, sites + n_sites), L);
    gfs::CorrelationMatrix C = gfs::ground_state_correlations(initial->value);
    if (generator) C = gfs::evolve(C, generator->value, t);
    *out = gfs::subsystem_entropy(C, A);
  });
}

gfs_status gfs_sff_mode_product(const double* energies, size_t n, double beta, double t,
                                double* out) {
  GFS_REQUIRE(out && (energies || n == 0) && beta >= 0.0, "need beta >= 0 and non-null output");
  *out = gfs::sff_mode_product({energies, n}, beta, t);
  return GFS_OK;
}

gfs_status gfs_sff_single_particle(const double* energies, size_t n, double beta, double t,
                                   double* out) {
  GFS_REQUIRE(out && energies && beta >= 0.0, "need beta >= 0 and non-null arrays");
  return guarded([&] { *out = gfs::sff_single_particle({energies, n}, beta, t); });
}

gfs_status gfs_spacing_ratio_mean(const double* energies, size_t n, double* mean,
                                  size_t* count) {
  GFS_REQUIRE(mean && (energies || n == 0), "null argument");
  return guarded([&] {
    gfs::SpectrumSample s{std::vector<double>(energies, energies + n)};
    const auto r = gfs::spacing_ratios(s);
    *mean = r.mean;
    if (count) *count = r.ratios.size();
  });
}

gfs_status gfs_reference_ratio_pdf(const char* kind, double r, double* out) {
  GFS_REQUIRE(kind && out, "null argument");
  const auto k = gfs::parse_ratio_ensemble(kind);
  if (!k) return fail(GFS_ERR_ARGUMENT, std::string("unknown ensemble '") + kind + "'");
  return guarded([&] { *out = gfs::reference_ratio_pdf(*k, r); });
}

}  // extern "C"
