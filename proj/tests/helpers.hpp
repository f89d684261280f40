#pragma once

#include <cstdint>
#include <vector>

#include "gfs/dynamics.hpp"
#include "gfs/models.hpp"
#include "gfs/nambu.hpp"
#include "gfs/rng.hpp"
#include "gfs/spectral.hpp"

namespace testing {

inline gfs::ModelConfig model(gfs::ModelKind kind, int L, std::uint64_t seed) {
  return {kind, L, 1.7, 2.0, 1.0, 3.0, 1.0, seed};
}

inline gfs::QuadraticHamiltonian instance(gfs::ModelKind kind, int L, std::uint64_t seed) {
  return gfs::build(model(kind, L, seed));
}

inline constexpr gfs::ModelKind kAllKinds[] = {gfs::ModelKind::CleanIsing,
                                               gfs::ModelKind::DisorderedIsing,
                                               gfs::ModelKind::Syk2, gfs::ModelKind::Gsyk2};

inline std::vector<double> to_vector(const gfs::RVector& v) {
  return std::vector<double>(v.begin(), v.end());
}

// Random subset of [0, L) with `size` sites.
inline std::vector<int> random_sites(gfs::Rng& rng, int L, int size) {
  std::vector<int> all(L);
  for (int i = 0; i < L; ++i) all[i] = i;
  for (int i = 0; i < size; ++i) {
    const int j = i + static_cast<int>(rng.uniform() * (L - i));
    std::swap(all[i], all[j]);
  }
  all.resize(size);
  return all;
}

}  // namespace testing
