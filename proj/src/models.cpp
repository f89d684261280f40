#include "gfs/models.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "gfs/error.hpp"
#include "gfs/rng.hpp"

namespace gfs {

namespace {

void require_sites(int L, int min_sites) {
  if (L < min_sites)
    throw Error(Errc::BadSize, "need L >= " + std::to_string(min_sites) +
                                   ", got " + std::to_string(L));
}

QuadraticHamiltonian ising_chain(int L, double h, const std::vector<double>& bonds) {
  QuadraticHamiltonian H{CMatrix::Zero(L, L), CMatrix::Zero(L, L)};
  for (int i = 0; i < L; ++i) H.A(i, i) = -h;
  for (int i = 0; i + 1 < L; ++i) {
    const double Ji = bonds[i];
    H.A(i, i + 1) = 0.5 * Ji;
    H.A(i + 1, i) = 0.5 * Ji;
    H.B(i, i + 1) = Ji;
    H.B(i + 1, i) = -Ji;
  }
  return H;
}

CMatrix gue(int L, double sigma, Rng& rng) {
  CMatrix A(L, L);
  const double variance = sigma * sigma / L;
  const double diag_sd = std::sqrt(variance);
  for (int i = 0; i < L; ++i) {
    A(i, i) = diag_sd * rng.normal();
    for (int j = i + 1; j < L; ++j) {
      A(i, j) = rng.complex_normal(variance);
      A(j, i) = std::conj(A(i, j));
    }
  }
  return A;
}

}  // namespace

std::string_view to_string(ModelKind kind) noexcept {
  switch (kind) {
    case ModelKind::CleanIsing: return "clean_ising";
    case ModelKind::DisorderedIsing: return "disordered_ising";
    case ModelKind::Syk2: return "syk2";
    case ModelKind::Gsyk2: return "gsyk2";
  }
  return "unknown";
}

std::optional<ModelKind> parse_model_kind(std::string_view name) noexcept {
  for (ModelKind k : {ModelKind::CleanIsing, ModelKind::DisorderedIsing, ModelKind::Syk2,
                      ModelKind::Gsyk2})
    if (to_string(k) == name) return k;
  return std::nullopt;
}

void check(const ModelConfig& c) {
  require_sites(c.L, 2);
  for (double v : {c.h, c.J, c.Jmin, c.Jmax, c.sigma})
    if (!std::isfinite(v)) throw Error(Errc::InvalidArgument, "model parameters must be finite");
  if (c.Jmin > c.Jmax)
    throw Error(Errc::BadWindow, "Jmin > Jmax");
  if (c.sigma <= 0.0) throw Error(Errc::InvalidArgument, "sigma must be positive");
}

QuadraticHamiltonian clean_ising(int L, double h, double J) {
  require_sites(L, 2);
  return ising_chain(L, h, std::vector<double>(L - 1, J));
}

QuadraticHamiltonian disordered_ising(int L, double h, double Jmin, double Jmax,
                                      std::uint64_t seed) {
  require_sites(L, 2);
  if (Jmin > Jmax) throw Error(Errc::BadWindow, "Jmin > Jmax");
  Rng rng(seed);
  std::vector<double> bonds(L - 1);
  for (double& J : bonds) J = rng.uniform(Jmin, Jmax);
  return ising_chain(L, h, bonds);
}

QuadraticHamiltonian syk2(int L, double sigma, std::uint64_t seed) {
  require_sites(L, 1);
  Rng rng(seed);
  return {gue(L, sigma, rng), CMatrix::Zero(L, L)};
}

QuadraticHamiltonian gsyk2(int L, double sigma, std::uint64_t seed) {
  require_sites(L, 1);
  Rng rng(seed);
  QuadraticHamiltonian H{gue(L, sigma, rng), CMatrix::Zero(L, L)};
  const double variance = sigma * sigma / L;
  for (int i = 0; i < L; ++i)
    for (int j = i + 1; j < L; ++j) {
      H.B(i, j) = rng.complex_normal(variance);
      H.B(j, i) = -H.B(i, j);
    }
  return H;
}

CMatrix haar_unitary(int L, std::uint64_t seed) {
  require_sites(L, 1);
  Rng rng(seed);
  CMatrix Z(L, L);
  for (int j = 0; j < L; ++j)
    for (int i = 0; i < L; ++i) Z(i, j) = rng.complex_normal(1.0);
  Eigen::HouseholderQR<CMatrix> qr(Z);
  CMatrix Q = qr.householderQ();
  const CMatrix& R = qr.matrixQR();
  for (int j = 0; j < L; ++j) {
    const cplx d = R(j, j);
    Q.col(j) *= d / std::abs(d);
  }
  return Q;
}

RMatrix haar_orthogonal(int n, std::uint64_t seed) {
  require_sites(n, 1);
  Rng rng(seed);
  RMatrix Z(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) Z(i, j) = rng.normal();
  Eigen::HouseholderQR<RMatrix> qr(Z);
  RMatrix Q = qr.householderQ();
  const RMatrix& R = qr.matrixQR();
  for (int j = 0; j < n; ++j)
    if (R(j, j) < 0.0) Q.col(j) *= -1.0;
  return Q;
}

QuadraticHamiltonian build(const ModelConfig& c) {
  check(c);
  switch (c.kind) {
    case ModelKind::CleanIsing: return clean_ising(c.L, c.h, c.J);
    case ModelKind::DisorderedIsing: return disordered_ising(c.L, c.h, c.Jmin, c.Jmax, c.seed);
    case ModelKind::Syk2: return syk2(c.L, c.sigma, c.seed);
    case ModelKind::Gsyk2: return gsyk2(c.L, c.sigma, c.seed);
  }
  throw Error(Errc::InvalidArgument, "unknown model kind");
}

double mean_coupling(const ModelConfig& c) {
  switch (c.kind) {
    case ModelKind::CleanIsing: return c.J;
    case ModelKind::DisorderedIsing: return 0.5 * (c.Jmin + c.Jmax);
    case ModelKind::Syk2:
    case ModelKind::Gsyk2: return c.sigma;
  }
  return c.J;
}

}  // namespace gfs
