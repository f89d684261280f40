#include "gfs/ensemble.hpp"

#include <cmath>

#include "gfs/rng.hpp"

namespace gfs {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return mix64(mix64(master) + (index + 1) * 0x9e3779b97f4a7c15ULL);
}

Aggregate aggregate_scalar(std::span<const double> values) {
  Aggregate a;
  const std::size_t n = values.size();
  if (n == 0) throw Error(Errc::EmptySample, "nothing to aggregate");
  // Shifted by the first value, so identical samples give an exact mean and
  // a zero spread.
  const double origin = values.front();
  double sum = 0.0;
  for (double v : values) sum += v - origin;
  a.mean = origin + sum / static_cast<double>(n);
  if (n > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - a.mean) * (v - a.mean);
    a.std_error = std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n));
  }
  return a;
}

CurveAggregate aggregate_curves(const std::vector<std::vector<double>>& per_sample) {
  CurveAggregate out;
  out.n_samples = per_sample.size();
  if (per_sample.empty()) return out;
  const std::size_t points = per_sample.front().size();
  for (const auto& curve : per_sample)
    if (curve.size() != points)
      throw Error(Errc::SizeMismatch, "per-sample curves have different lengths");
  out.mean.resize(points);
  out.std_error.resize(points);
  std::vector<double> column(per_sample.size());
  for (std::size_t p = 0; p < points; ++p) {
    for (std::size_t s = 0; s < per_sample.size(); ++s) column[s] = per_sample[s][p];
    const Aggregate a = aggregate_scalar(column);
    out.mean[p] = a.mean;
    out.std_error[p] = a.std_error;
  }
  return out;
}

}  // namespace gfs
