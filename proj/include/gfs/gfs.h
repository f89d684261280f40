/* C interface to the free-fermion scrambling library.
 *
 * Objects are opaque handles created by gfs_*_create / parse / load calls and
 * released by the matching *_free. Every call returns a gfs_status; on
 * failure gfs_last_error() describes it (per thread, valid until the next
 * failing call on that thread). Output buffers follow the snprintf pattern:
 * `needed` receives the full size including the terminator.
 */
#ifndef GFS_GFS_H
#define GFS_GFS_H

#include <stddef.h>
#include <stdint.h>

#if defined(GFS_BUILDING_LIBRARY)
#define GFS_API __attribute__((visibility("default")))
#else
#define GFS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gfs_status {
  GFS_OK = 0,
  GFS_ERR_ARGUMENT = 1,  /* bad sizes, windows, subsystems, domains */
  GFS_ERR_CONFIG = 2,    /* config text, keys or values */
  GFS_ERR_NUMERIC = 3,   /* numerical failure, including failed samples */
  GFS_ERR_IO = 4,
  GFS_ERR_TOO_LARGE = 5, /* many-body size guard */
  GFS_ERR_INTERNAL = 6
} gfs_status;

typedef struct gfs_config gfs_config;
typedef struct gfs_hamiltonian gfs_hamiltonian;
typedef struct gfs_basis gfs_basis;

GFS_API const char* gfs_version(void);
GFS_API const char* gfs_last_error(void);
/* Returns 1 and fills index/seed when the last failure on this thread came
 * from an ensemble sample, 0 otherwise. */
GFS_API int gfs_last_sample_failure(uint64_t* index, uint64_t* seed);
GFS_API const char* gfs_status_name(gfs_status status);

/* ---- run configuration ------------------------------------------------ */

/* Defaults for `command` ("quench", "tmi", "sff", "levelstats"). */
GFS_API gfs_status gfs_config_default(const char* command, gfs_config** out);
GFS_API gfs_status gfs_config_parse(const char* text, gfs_config** out);
GFS_API gfs_status gfs_config_load(const char* path, gfs_config** out);
GFS_API gfs_status gfs_config_from_manifest(const char* path, gfs_config** out);
GFS_API void gfs_config_free(gfs_config* config);

/* "section.key=value"; validated by gfs_config_validate or gfs_run. */
GFS_API gfs_status gfs_config_set(gfs_config* config, const char* assignment);
GFS_API gfs_status gfs_config_set_seed(gfs_config* config, uint64_t seed);
GFS_API gfs_status gfs_config_set_workers(gfs_config* config, int workers);
GFS_API gfs_status gfs_config_set_size_override(gfs_config* config, int enabled);
GFS_API gfs_status gfs_config_validate(const gfs_config* config);
GFS_API gfs_status gfs_config_serialize(const gfs_config* config, char* buffer,
                                        size_t capacity, size_t* needed);

/* Runs the configured command, writing its CSV files and manifest.json into
 * out_dir (created if missing). */
GFS_API gfs_status gfs_run(const gfs_config* config, const char* out_dir,
                           double* duration_seconds);

/* ---- Hamiltonians and Bogoliubov bases -------------------------------- */

/* A and B are L x L complex matrices, row-major, interleaved (re, im). */
GFS_API gfs_status gfs_hamiltonian_create(int L, const double* A, const double* B,
                                          gfs_hamiltonian** out);
/* kind: "clean_ising", "disordered_ising", "syk2", "gsyk2". */
GFS_API gfs_status gfs_hamiltonian_model(const char* kind, int L, double h, double J,
                                         double Jmin, double Jmax, double sigma,
                                         uint64_t seed, gfs_hamiltonian** out);
GFS_API int gfs_hamiltonian_sites(const gfs_hamiltonian* H);
GFS_API void gfs_hamiltonian_free(gfs_hamiltonian* H);

GFS_API gfs_status gfs_diagonalize(const gfs_hamiltonian* H, gfs_basis** out);
GFS_API int gfs_basis_sites(const gfs_basis* basis);
/* Copies min(capacity, L) ascending energies. */
GFS_API gfs_status gfs_basis_energies(const gfs_basis* basis, double* energies,
                                      size_t capacity);
GFS_API gfs_status gfs_basis_offset(const gfs_basis* basis, double* offset);
GFS_API void gfs_basis_free(gfs_basis* basis);

/* ---- observables (0-based sites) -------------------------------------- */

/* Entanglement entropy (nats) of `sites` in the quasiparticle vacuum of
 * `initial` evolved for time t under `generator` (generator may equal
 * initial, or be NULL for t = 0). */
GFS_API gfs_status gfs_entropy(const gfs_basis* initial, const gfs_basis* generator,
                               double t, const int* sites, size_t n_sites, double* out);

GFS_API gfs_status gfs_sff_mode_product(const double* energies, size_t n, double beta,
                                        double t, double* out);
GFS_API gfs_status gfs_sff_single_particle(const double* energies, size_t n, double beta,
                                           double t, double* out);
/* `energies` must be sorted ascending. */
GFS_API gfs_status gfs_spacing_ratio_mean(const double* energies, size_t n, double* mean,
                                          size_t* count);
/* kind: "poisson", "goe", "gue", "gse". */
GFS_API gfs_status gfs_reference_ratio_pdf(const char* kind, double r, double* out);

#ifdef __cplusplus
}
#endif

#endif
