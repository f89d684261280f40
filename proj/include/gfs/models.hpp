#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "gfs/nambu.hpp"

namespace gfs {

enum class ModelKind { CleanIsing, DisorderedIsing, Syk2, Gsyk2 };

std::string_view to_string(ModelKind kind) noexcept;
std::optional<ModelKind> parse_model_kind(std::string_view name) noexcept;

struct ModelConfig {
  ModelKind kind = ModelKind::CleanIsing;
  int L = 0;
  double h = 0.0;      // transverse field (Ising kinds)
  double J = 0.0;      // clean coupling
  double Jmin = 0.0;   // disorder window (DisorderedIsing)
  double Jmax = 0.0;
  double sigma = 1.0;  // random-matrix scale (Syk2, Gsyk2)
  std::uint64_t seed = 0;
};

/// Throws BadSize (L < 2), BadWindow (Jmin > Jmax) or InvalidArgument
/// (sigma <= 0, non-finite parameters).
void check(const ModelConfig& config);

/// Open chain: A_ij = -h d_ij + (J_i d_{j,i+1} + J_j d_{j,i-1}) / 2,
/// B_ij = J_i d_{j,i+1} - J_j d_{i,j+1}, bonds i = 0..L-2.
QuadraticHamiltonian clean_ising(int L, double h, double J);

/// Bond couplings J_i drawn i.i.d. uniform on [Jmin, Jmax], in bond order.
QuadraticHamiltonian disordered_ising(int L, double h, double Jmin, double Jmax,
                                      std::uint64_t seed);

/// GUE hopping with E|A_ij|^2 = sigma^2 / L (semicircle on [-2 sigma, 2 sigma]), B = 0.
QuadraticHamiltonian syk2(int L, double sigma, std::uint64_t seed);

/// GUE hopping as in syk2 plus antisymmetric complex Gaussian pairing with
/// E|B_ij|^2 = sigma^2 / L above the diagonal.
QuadraticHamiltonian gsyk2(int L, double sigma, std::uint64_t seed);

/// Haar-distributed L x L unitary (QR of a complex Ginibre matrix with the
/// phases of R's diagonal divided out).
CMatrix haar_unitary(int L, std::uint64_t seed);

/// Haar-distributed real orthogonal n x n matrix.
RMatrix haar_orthogonal(int n, std::uint64_t seed);

/// Dispatches on config.kind after check(config).
QuadraticHamiltonian build(const ModelConfig& config);

/// Mean coupling: J for the clean chain, the window centre for the
/// disordered one, sigma for the matrix ensembles.
double mean_coupling(const ModelConfig& config);

}  // namespace gfs
