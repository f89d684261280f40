#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "gfs/nambu.hpp"
#include "gfs/rng.hpp"

namespace gfs {

enum class SpectrumKind { SingleParticle, ManyBody };

/// Sorted ascending, finite energies.
struct SpectrumSample {
  std::vector<double> energies;
  SpectrumKind kind = SpectrumKind::SingleParticle;
};

/// Exact many-body g(beta, t) of a quadratic model from its single-particle
/// energies:  prod_k [1 + (cos(lambda_k t) - 1) / (cosh(beta lambda_k) + 1)].
double sff_mode_product(std::span<const double> energies, double beta, double t);

/// Treats the energies themselves as a spectrum:
/// |sum_k e^{-(beta + it) lambda_k}|^2 / |sum_k e^{-beta lambda_k}|^2.
double sff_single_particle(std::span<const double> energies, double beta, double t);

/// Long-time average of sff_mode_product for incommensurate energies:
/// prod_k [1 - 1/(cosh(beta lambda_k) + 1)] (zero modes contribute 1).
double sff_plateau(std::span<const double> energies, double beta);

/// All 2^L levels sum_k n_k lambda_k + offset, sorted. Throws TooLarge when
/// L > size_guard.
SpectrumSample many_body_spectrum(const BogoliubovBasis& basis, int size_guard = 16);
SpectrumSample many_body_spectrum(std::span<const double> energies, double offset,
                                  int size_guard = 16);

/// |Z(beta + it)|^2 / |Z(beta)|^2 over an explicit spectrum, with energies
/// measured from the ground level and compensated summation.
double sff_from_spectrum(const SpectrumSample& spectrum, double beta, double t);

struct SffCurve {
  double beta = 0.0;
  std::vector<double> times;
  std::vector<double> values;
};

struct RatioSample {
  std::vector<double> ratios;
  double mean = 0.0;
};

/// r_n = min(s_n, s_{n-1}) / max(s_n, s_{n-1}) with s_n = E_{n+1} - E_n.
/// Spacings below 1e-12 of the spectral width are treated as degeneracies;
/// both ratios touching one are dropped. Throws TooFewLevels with fewer than
/// three levels or when no ratio survives, InvalidArgument if unsorted.
RatioSample spacing_ratios(const SpectrumSample& spectrum);

enum class RatioEnsemble { Poisson, GOE, GUE, GSE };

std::string_view to_string(RatioEnsemble kind) noexcept;
std::optional<RatioEnsemble> parse_ratio_ensemble(std::string_view name) noexcept;
/// Dyson index 1, 2, 4 -> GOE, GUE, GSE.
std::optional<RatioEnsemble> wigner_ensemble(int dyson_index) noexcept;

/// Density of r in [0, 1]: Poisson 2/(1+r)^2, Wigner-like surmise
/// (r + r^2)^b / (1 + r + r^2)^(1 + 3b/2) normalised on [0, 1].
/// Throws BadDomain outside [0, 1].
double reference_ratio_pdf(RatioEnsemble kind, double r);

/// One draw from reference_ratio_pdf by rejection sampling.
double sample_reference_ratio(RatioEnsemble kind, Rng& rng);

/// Fixed-bin histogram on [0, 1]; merging is exact and order independent.
class RatioHistogram {
 public:
  explicit RatioHistogram(int n_bins);

  void add(double r);
  void add(std::span<const double> ratios);
  void merge(const RatioHistogram& other);

  int bins() const { return static_cast<int>(counts_.size()); }
  std::uint64_t total() const { return total_; }
  const std::vector<std::uint64_t>& counts() const { return counts_; }
  std::vector<double> centers() const;
  /// count / (total * width). Throws EmptySample when nothing was added.
  std::vector<double> density() const;

 private:
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

/// Throws EmptySample for an empty sample, InvalidArgument for n_bins < 2.
RatioHistogram ratio_histogram(std::span<const double> ratios, int n_bins);

}  // namespace gfs
