#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gfs/models.hpp"
#include "gfs/nambu.hpp"

namespace gfs {

/// <Psi Psi^dag> = [[<c c^dag>, <c c>], [<c^dag c^dag>, <c^dag c>]], 2L x 2L.
struct CorrelationMatrix {
  CMatrix C;

  int sites() const { return static_cast<int>(C.rows() / 2); }
};

/// Deviations from the defining properties of a Gaussian-state correlation
/// matrix. All are zero (up to rounding) for a valid pure state.
struct CorrelationResiduals {
  double hermiticity = 0.0;            // max |C - C^dag|
  double particle_hole = 0.0;          // max |C22 - (I - C11^T)|
  double pairing_antisymmetry = 0.0;   // max |C12 + C12^T|
  double idempotency = 0.0;            // max |C^2 - C|
  double trace_error = 0.0;            // |tr C - L|
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
};

CorrelationResiduals residuals(const CorrelationMatrix& corr);

/// Strictly increasing, 0-based site indices within [0, L).
class Subsystem {
 public:
  Subsystem() = default;
  /// Sorts the input; throws BadSubsystem on duplicates or out-of-range sites.
  static Subsystem from_sites(std::vector<int> sites, int L);
  /// Sites [first, first + length).
  static Subsystem block(int first, int length, int L);
  static Subsystem all(int L);

  const std::vector<int>& sites() const { return sites_; }
  int size() const { return static_cast<int>(sites_.size()); }
  bool overlaps(const Subsystem& other) const;
  /// Union of two subsystems of the same chain.
  Subsystem operator|(const Subsystem& other) const;
  Subsystem complement(int L) const;
  bool operator==(const Subsystem&) const = default;

 private:
  std::vector<int> sites_;
};

/// Empty Fock vacuum: C = diag(I, 0).
CorrelationMatrix vacuum_correlations(int L);

/// Quasiparticle vacuum of `basis`: C = U^dag diag(I, 0) U, i.e. blocks
/// [[g^dag g, g^dag h], [h^dag g, h^dag h]] in this row convention.
CorrelationMatrix ground_state_correlations(const BogoliubovBasis& basis);

/// Psi(t) = T(t) Psi with T(t) = U^dag diag(e^{-i lambda t}, e^{+i lambda t}) U.
CMatrix propagator(const BogoliubovBasis& basis, double t);

/// T(t) C0 T(t)^dag. Throws SizeMismatch.
CorrelationMatrix evolve(const CorrelationMatrix& initial, const BogoliubovBasis& basis,
                         double t);

/// Rows and columns {i} and {i + L} for i in A, kept in Nambu block layout.
CorrelationMatrix restrict_to(const CorrelationMatrix& corr, const Subsystem& A);

/// Von Neumann entropy in nats:
///   S = -1/2 sum_nu [nu ln nu + (1 - nu) ln(1 - nu)]
/// over all 2l eigenvalues of the (already restricted) matrix. Eigenvalues
/// within 1e-10 of [0, 1] are clamped; further out throws SpectrumOutOfRange.
double entanglement_entropy(const CorrelationMatrix& restricted);

/// S of the sites of A within a full correlation matrix.
double subsystem_entropy(const CorrelationMatrix& corr, const Subsystem& A);

/// I(A:B) = S_A + S_B - S_AB. Throws OverlappingSubsystems.
double mutual_information(const CorrelationMatrix& corr, const Subsystem& A,
                          const Subsystem& B);

/// I3 = I(A1:A2) + I(A1:A3) - I(A1:A2 u A3). Throws OverlappingSubsystems.
double tripartite_mutual_information(const CorrelationMatrix& corr, const Subsystem& A1,
                                     const Subsystem& A2, const Subsystem& A3);

/// c -> U c applied to every block:
/// C11 -> U C11 U^dag, C12 -> U C12 U^T, C21 -> U* C21 U^dag, C22 -> U* C22 U^T.
CorrelationMatrix rotate_modes(const CorrelationMatrix& corr, const CMatrix& U);

/// General Bogoliubov rotation given as a real orthogonal matrix acting on
/// the 2L Majorana operators.
CorrelationMatrix rotate_majorana(const CorrelationMatrix& corr, const RMatrix& O);

enum class HaarGroup {
  ParticleConserving,  // U(L) acting as c -> U c
  Bogoliubov,          // O(2L) acting on Majorana operators
};

std::string_view to_string(HaarGroup group) noexcept;

struct HaarTmi {
  double mean = 0.0;
  double std_error = 0.0;
  std::vector<double> draws;
};

/// I3(A1:A2:A3) of `initial` after a Haar-random mode rotation, averaged
/// over `n_draws` draws seeded with derive_seed(seed, i).
HaarTmi haar_scrambled_tmi(const CorrelationMatrix& initial, const Subsystem& A1,
                           const Subsystem& A2, const Subsystem& A3, std::uint64_t seed,
                           int n_draws, HaarGroup group = HaarGroup::ParticleConserving);

/// Evolves one initial state under one quadratic generator and returns
/// restricted correlation matrices at arbitrary times, working in the
/// generator's quasiparticle frame: only the 2l requested rows of T(t) are
/// ever formed.
class GaussianEvolver {
 public:
  GaussianEvolver(const CorrelationMatrix& initial, const BogoliubovBasis& generator);

  int sites() const { return static_cast<int>(energies_.size()); }
  CorrelationMatrix restricted(double t, const Subsystem& A) const;

 private:
  CMatrix u_dagger_;  // U^dag of the generator
  CMatrix factor_;    // F with U C0 U^dag = F F^dag
  RVector energies_;
};

struct Observable {
  enum class Kind { Entropy, MutualInformation, Tripartite };
  Kind kind = Kind::Entropy;
  std::vector<int> parts;  // indices into the subsystem list
  std::string name;

  static Observable entropy(int a, std::string name);
  static Observable mutual_information(int a, int b, std::string name);
  static Observable tripartite(int a, int b, int c, std::string name);
};

/// values[k][n] is observable k at times[n].
struct SeriesTable {
  std::vector<double> times;
  std::vector<std::string> names;
  std::vector<std::vector<double>> values;

  const std::vector<double>& column(std::string_view name) const;
};

struct QuenchProtocol {
  ModelConfig pre;   // initial state: ground state of this model
  ModelConfig post;  // generator of the time evolution
  std::vector<double> times;
};

SeriesTable evaluate_series(const GaussianEvolver& evolver, std::span<const double> times,
                            std::span<const Subsystem> subsystems,
                            std::span<const Observable> observables);

/// C(t) = T(t) C0 T(t)^dag with C0 the ground state of protocol.pre, then
/// every observable at every time.
SeriesTable quench_series(const QuenchProtocol& protocol,
                          std::span<const Subsystem> subsystems,
                          std::span<const Observable> observables);

/// Spike test for I(A1:A2)(t): present when the maximum exceeds `threshold`
/// times the mean over the last `late_fraction` of the time points.
struct MemoryVerdict {
  double peak = 0.0;
  double peak_time = 0.0;
  double late_mean = 0.0;
  double ratio = 0.0;
  bool present = false;
};

MemoryVerdict detect_memory_effect(std::span<const double> times,
                                   std::span<const double> mutual_information,
                                   double late_fraction = 0.5, double threshold = 5.0);

}  // namespace gfs
