#include "gfs/spectral.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "gfs/error.hpp"

namespace gfs {

namespace {

constexpr double kDegeneracyCutoff = 1e-12;

// Neumaier compensated accumulator.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      carry_ += (sum_ - t) + x;
    else
      carry_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

int dyson_index(RatioEnsemble kind) {
  switch (kind) {
    case RatioEnsemble::GOE: return 1;
    case RatioEnsemble::GUE: return 2;
    case RatioEnsemble::GSE: return 4;
    case RatioEnsemble::Poisson: break;
  }
  return 0;
}

// Normalisation of the surmise folded onto [0, 1]; half the [0, inf) value.
double wigner_normalisation(int beta) {
  const double sqrt3 = std::sqrt(3.0);
  switch (beta) {
    case 1: return 0.5 * 8.0 / 27.0;
    case 2: return 0.5 * 4.0 * std::numbers::pi / (81.0 * sqrt3);
    case 4: return 0.5 * 4.0 * std::numbers::pi / (729.0 * sqrt3);
  }
  throw Error(Errc::InvalidArgument, "Dyson index must be 1, 2 or 4");
}

double unnormalised_wigner(int beta, double r) {
  return std::pow(r + r * r, beta) / std::pow(1.0 + r + r * r, 1.0 + 1.5 * beta);
}

// Upper bound on the density for rejection sampling.
double density_bound(RatioEnsemble kind) {
  static const std::array<double, 4> bounds = [] {
    std::array<double, 4> b{};
    for (RatioEnsemble k : {RatioEnsemble::Poisson, RatioEnsemble::GOE, RatioEnsemble::GUE,
                            RatioEnsemble::GSE}) {
      double peak = 0.0;
      for (int i = 0; i <= 10000; ++i) peak = std::max(peak, reference_ratio_pdf(k, i * 1e-4));
      b[static_cast<int>(k)] = 1.1 * peak;
    }
    return b;
  }();
  return bounds[static_cast<int>(kind)];
}

}  // namespace

double sff_mode_product(std::span<const double> energies, double beta, double t) {
  double g = 1.0;
  for (double lambda : energies)
    g *= 1.0 + (std::cos(lambda * t) - 1.0) / (std::cosh(beta * lambda) + 1.0);
  return g;
}

double sff_single_particle(std::span<const double> energies, double beta, double t) {
  if (energies.empty()) throw Error(Errc::EmptySample, "empty single-particle spectrum");
  const double base = *std::min_element(energies.begin(), energies.end());
  CompensatedSum re, im, z;
  for (double lambda : energies) {
    const double e = lambda - base;
    const double w = std::exp(-beta * e);
    re.add(w * std::cos(e * t));
    im.add(-w * std::sin(e * t));
    z.add(w);
  }
  const double zr = z.value();
  return (re.value() * re.value() + im.value() * im.value()) / (zr * zr);
}

double sff_plateau(std::span<const double> energies, double beta) {
  double p = 1.0;
  for (double lambda : energies)
    if (lambda != 0.0) p *= 1.0 - 1.0 / (std::cosh(beta * lambda) + 1.0);
  return p;
}

SpectrumSample many_body_spectrum(std::span<const double> energies, double offset,
                                  int size_guard) {
  const int L = static_cast<int>(energies.size());
  if (L > size_guard)
    throw Error(Errc::TooLarge, "many-body enumeration of L = " + std::to_string(L) +
                                    " exceeds the size guard " + std::to_string(size_guard));
  SpectrumSample s;
  s.kind = SpectrumKind::ManyBody;
  s.energies.reserve(std::size_t{1} << L);
  s.energies.push_back(offset);
  for (double lambda : energies) {
    const std::size_t n = s.energies.size();
    for (std::size_t i = 0; i < n; ++i) s.energies.push_back(s.energies[i] + lambda);
  }
  std::sort(s.energies.begin(), s.energies.end());
  return s;
}

SpectrumSample many_body_spectrum(const BogoliubovBasis& basis, int size_guard) {
  const std::vector<double> lambda(basis.energies.begin(), basis.energies.end());
  return many_body_spectrum(lambda, basis.offset, size_guard);
}

double sff_from_spectrum(const SpectrumSample& spectrum, double beta, double t) {
  if (spectrum.energies.empty()) throw Error(Errc::EmptySample, "empty spectrum");
  const double base = *std::min_element(spectrum.energies.begin(), spectrum.energies.end());
  CompensatedSum re, im, z;
  for (double E : spectrum.energies) {
    const double e = E - base;
    const double w = std::exp(-beta * e);
    re.add(w * std::cos(e * t));
    im.add(-w * std::sin(e * t));
    z.add(w);
  }
  const double zr = z.value();
  return (re.value() * re.value() + im.value() * im.value()) / (zr * zr);
}

RatioSample spacing_ratios(const SpectrumSample& spectrum) {
  const auto& E = spectrum.energies;
  if (E.size() < 3) throw Error(Errc::TooFewLevels, "need at least three levels");
  if (!std::is_sorted(E.begin(), E.end()))
    throw Error(Errc::InvalidArgument, "spectrum must be sorted ascending");
  const double cutoff = kDegeneracyCutoff * (E.back() - E.front());
  RatioSample out;
  out.ratios.reserve(E.size() - 2);
  double sum = 0.0;
  for (std::size_t n = 1; n + 1 < E.size(); ++n) {
    const double prev = E[n] - E[n - 1];
    const double next = E[n + 1] - E[n];
    if (prev <= cutoff || next <= cutoff) continue;
    const double r = std::min(prev, next) / std::max(prev, next);
    out.ratios.push_back(r);
    sum += r;
  }
  if (out.ratios.empty())
    throw Error(Errc::TooFewLevels, "no non-degenerate pair of spacings");
  out.mean = sum / static_cast<double>(out.ratios.size());
  return out;
}

std::string_view to_string(RatioEnsemble kind) noexcept {
  switch (kind) {
    case RatioEnsemble::Poisson: return "poisson";
    case RatioEnsemble::GOE: return "goe";
    case RatioEnsemble::GUE: return "gue";
    case RatioEnsemble::GSE: return "gse";
  }
  return "unknown";
}

std::optional<RatioEnsemble> parse_ratio_ensemble(std::string_view name) noexcept {
  for (RatioEnsemble k : {RatioEnsemble::Poisson, RatioEnsemble::GOE, RatioEnsemble::GUE,
                          RatioEnsemble::GSE})
    if (to_string(k) == name) return k;
  return std::nullopt;
}

std::optional<RatioEnsemble> wigner_ensemble(int dyson) noexcept {
  switch (dyson) {
    case 1: return RatioEnsemble::GOE;
    case 2: return RatioEnsemble::GUE;
    case 4: return RatioEnsemble::GSE;
  }
  return std::nullopt;
}

double reference_ratio_pdf(RatioEnsemble kind, double r) {
  if (!(r >= 0.0 && r <= 1.0))
    throw Error(Errc::BadDomain, "ratio " + std::to_string(r) + " outside [0, 1]");
  if (kind == RatioEnsemble::Poisson) return 2.0 / ((1.0 + r) * (1.0 + r));
  const int beta = dyson_index(kind);
  return unnormalised_wigner(beta, r) / wigner_normalisation(beta);
}

double sample_reference_ratio(RatioEnsemble kind, Rng& rng) {
  const double bound = density_bound(kind);
  for (;;) {
    const double r = rng.uniform();
    if (rng.uniform() * bound <= reference_ratio_pdf(kind, r)) return r;
  }
}

RatioHistogram::RatioHistogram(int n_bins) {
  if (n_bins < 2) throw Error(Errc::InvalidArgument, "histogram needs at least two bins");
  counts_.assign(n_bins, 0);
}

void RatioHistogram::add(double r) {
  if (!(r >= 0.0 && r <= 1.0))
    throw Error(Errc::BadDomain, "ratio " + std::to_string(r) + " outside [0, 1]");
  const int n = bins();
  const int bin = std::min(n - 1, static_cast<int>(r * n));
  ++counts_[bin];
  ++total_;
}

void RatioHistogram::add(std::span<const double> ratios) {
  for (double r : ratios) add(r);
}

void RatioHistogram::merge(const RatioHistogram& other) {
  if (other.bins() != bins())
    throw Error(Errc::SizeMismatch, "cannot merge histograms with different binning");
  for (int i = 0; i < bins(); ++i) counts_[i] += other.counts_[i];
  total_ += other.total_;
}

std::vector<double> RatioHistogram::centers() const {
  std::vector<double> c(bins());
  for (int i = 0; i < bins(); ++i) c[i] = (i + 0.5) / bins();
  return c;
}

std::vector<double> RatioHistogram::density() const {
  if (total_ == 0) throw Error(Errc::EmptySample, "histogram is empty");
  std::vector<double> d(bins());
  const double scale = static_cast<double>(bins()) / static_cast<double>(total_);
  for (int i = 0; i < bins(); ++i) d[i] = static_cast<double>(counts_[i]) * scale;
  return d;
}

RatioHistogram ratio_histogram(std::span<const double> ratios, int n_bins) {
  if (ratios.empty()) throw Error(Errc::EmptySample, "no ratios to histogram");
  RatioHistogram h(n_bins);
  h.add(ratios);
  return h;
}

}  // namespace gfs
