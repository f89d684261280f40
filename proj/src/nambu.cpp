#include "gfs/nambu.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "gfs/error.hpp"

namespace gfs {

namespace {

constexpr double kSymTol = 1e-12;
// Levels within this fraction of the bandwidth are resolved as one cluster.
constexpr double kClusterTol = 1e-6;
constexpr double kMinPairOverlap = 0.5;

// Particle-hole conjugation on Nambu vectors: (x; y) -> (y*; x*).
CMatrix particle_hole(const CMatrix& v) {
  const Eigen::Index L = v.rows() / 2;
  CMatrix out(v.rows(), v.cols());
  out.topRows(L) = v.bottomRows(L).conjugate();
  out.bottomRows(L) = v.topRows(L).conjugate();
  return out;
}

// Q = 2^{-1/2} [[I, I], [iI, -iI]] maps particle-hole conjugation to
// complex conjugation.
CMatrix to_majorana(const CMatrix& v) {
  const Eigen::Index L = v.rows() / 2;
  const double s = 1.0 / std::sqrt(2.0);
  CMatrix out(v.rows(), v.cols());
  out.topRows(L) = s * (v.topRows(L) + v.bottomRows(L));
  out.bottomRows(L) = (s * kI) * (v.topRows(L) - v.bottomRows(L));
  return out;
}

CMatrix from_majorana(const CMatrix& w) {
  const Eigen::Index L = w.rows() / 2;
  const double s = 1.0 / std::sqrt(2.0);
  CMatrix out(w.rows(), w.cols());
  out.topRows(L) = s * (w.topRows(L) - kI * w.bottomRows(L));
  out.bottomRows(L) = s * (w.topRows(L) + kI * w.bottomRows(L));
  return out;
}

struct ClusterModes {
  CMatrix vectors;  // 2L x m, ascending energy
  RVector energies;
};

// Modes of a particle-hole invariant spectral subspace W (2L x 2m) of M
// around zero. The subspace is re-expressed in a real Majorana basis R, where
// M acts as i R^T X R; its real Schur form pairs every +lambda vector exactly
// with its -lambda partner, which the eigenvectors of a nearly degenerate
// pair do not.
ClusterModes split_cluster(const CMatrix& W, const RMatrix& X) {
  const Eigen::Index dim = W.cols();
  const CMatrix overlap = W.adjoint() * particle_hole(W);
  Eigen::JacobiSVD<CMatrix> osvd(overlap);
  const double min_overlap = osvd.singularValues().minCoeff();
  if (min_overlap < kMinPairOverlap)
    throw Error(Errc::DegenerateSplitFailure,
                "zero-mode subspace is not particle-hole invariant (overlap " +
                    std::to_string(min_overlap) + ")");

  const CMatrix z = to_majorana(W);
  RMatrix parts(z.rows(), 2 * dim);
  parts << z.real(), z.imag();
  Eigen::JacobiSVD<RMatrix> rsvd(parts, Eigen::ComputeThinU);
  const RMatrix R = rsvd.matrixU().leftCols(dim);

  RMatrix K = R.transpose() * X * R;
  K = 0.5 * (K - K.transpose()).eval();
  Eigen::RealSchur<RMatrix> schur(K);
  const RMatrix& T = schur.matrixT();
  const RMatrix S = R * schur.matrixU();

  // 2x2 blocks [[0, a], [-a, 0]] carry a pair; 1x1 blocks are exact zeros
  // and are paired up in order.
  std::vector<std::pair<double, CVector>> found;
  const double s = 1.0 / std::sqrt(2.0);
  std::vector<Eigen::Index> loose;
  for (Eigen::Index i = 0; i < dim;) {
    if (i + 1 < dim && T(i + 1, i) != 0.0) {
      const double a = 0.5 * (T(i, i + 1) - T(i + 1, i));
      const double sign = a >= 0.0 ? 1.0 : -1.0;
      found.emplace_back(std::abs(a), s * (S.col(i).cast<cplx>() -
                                           (sign * kI) * S.col(i + 1).cast<cplx>()));
      i += 2;
    } else {
      loose.push_back(i++);
    }
  }
  if (loose.size() % 2 != 0)
    throw Error(Errc::DegenerateSplitFailure, "unpaired Majorana zero mode");
  for (std::size_t k = 0; k < loose.size(); k += 2)
    found.emplace_back(0.0, s * (S.col(loose[k]).cast<cplx>() +
                                 kI * S.col(loose[k + 1]).cast<cplx>()));
  std::stable_sort(found.begin(), found.end(),
                   [](const auto& x, const auto& y) { return x.first < y.first; });

  ClusterModes out;
  CMatrix w(z.rows(), dim / 2);
  out.energies.resize(dim / 2);
  for (Eigen::Index j = 0; j < dim / 2; ++j) {
    out.energies(j) = found[j].first;
    w.col(j) = found[j].second;
  }
  out.vectors = from_majorana(w);
  return out;
}

void require_valid(const QuadraticHamiltonian& H) {
  const ValidationReport r = validate(H);
  if (!r.ok) {
    if (!r.shape_ok)
      throw Error(Errc::InvalidHamiltonian, "A and B must both be L x L with L >= 1");
    throw Error(Errc::InvalidHamiltonian,
                "hamiltonian fails validation: |A - A^dag| = " +
                    std::to_string(r.hermiticity_violation) + ", |B + B^T| = " +
                    std::to_string(r.antisymmetry_violation));
  }
}

// Positive branch of a +/- symmetric ascending spectrum.
RVector positive_branch(const RVector& w) {
  const Eigen::Index L = w.size() / 2;
  RVector lambda(L);
  for (Eigen::Index k = 0; k < L; ++k)
    lambda(k) = 0.5 * (w(L + k) - w(L - 1 - k));
  return lambda;
}

// M in the site-interleaved ordering (c_1, c_1^dag, c_2, c_2^dag, ...),
// which is banded for local hamiltonians.
CMatrix interleaved_nambu(const QuadraticHamiltonian& H) {
  const Eigen::Index L = H.A.rows();
  CMatrix m(2 * L, 2 * L);
  for (Eigen::Index i = 0; i < L; ++i)
    for (Eigen::Index j = 0; j < L; ++j) {
      m(2 * i, 2 * j) = H.A(i, j);
      m(2 * i, 2 * j + 1) = H.B(i, j);
      m(2 * i + 1, 2 * j) = -std::conj(H.B(i, j));
      m(2 * i + 1, 2 * j + 1) = -H.A(j, i);
    }
  return m;
}

}  // namespace

ValidationReport validate(const QuadraticHamiltonian& H) {
  ValidationReport r;
  const auto L = H.A.rows();
  if (L < 1 || H.A.cols() != L || H.B.rows() != L || H.B.cols() != L) {
    r.shape_ok = false;
    r.ok = false;
    return r;
  }
  r.hermiticity_violation = max_abs(H.A - H.A.adjoint());
  r.antisymmetry_violation = max_abs(H.B + H.B.transpose());
  r.tolerance = kSymTol * std::max(max_abs(H.A), max_abs(H.B));
  r.ok = r.hermiticity_violation <= r.tolerance && r.antisymmetry_violation <= r.tolerance;
  return r;
}

NambuForm assemble_nambu(const QuadraticHamiltonian& H) {
  require_valid(H);
  const Eigen::Index L = H.A.rows();
  NambuForm f;
  f.M.resize(2 * L, 2 * L);
  f.M.topLeftCorner(L, L) = H.A;
  f.M.topRightCorner(L, L) = H.B;
  f.M.bottomLeftCorner(L, L) = -H.B.conjugate();
  f.M.bottomRightCorner(L, L) = -H.A.transpose();
  return f;
}

CMatrix BogoliubovBasis::unitary() const {
  const Eigen::Index L = g.rows();
  CMatrix U(2 * L, 2 * L);
  U.topLeftCorner(L, L) = g;
  U.topRightCorner(L, L) = h;
  U.bottomLeftCorner(L, L) = h.conjugate();
  U.bottomRightCorner(L, L) = g.conjugate();
  return U;
}

BogoliubovBasis diagonalize(const QuadraticHamiltonian& H) {
  const NambuForm nambu = assemble_nambu(H);
  const Eigen::Index L = nambu.sites();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(nambu.M);
  if (es.info() != Eigen::Success)
    throw Error(Errc::DegenerateSplitFailure, "eigensolver did not converge");
  const RVector& w = es.eigenvalues();
  const CMatrix& V = es.eigenvectors();

  const double tol = kClusterTol * w.cwiseAbs().maxCoeff();
  Eigen::Index n_neg = 0, n_pos = 0;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (w(i) < -tol) ++n_neg;
    if (w(i) > tol) ++n_pos;
  }
  if (n_pos != n_neg)
    throw Error(Errc::DegenerateSplitFailure,
                "spectrum is not +/- paired: " + std::to_string(n_pos) +
                    " positive vs " + std::to_string(n_neg) + " negative levels");
  const Eigen::Index n_cluster = L - n_pos;

  // Mode vectors as columns, ordered by ascending energy.
  CMatrix modes(2 * L, L);
  BogoliubovBasis basis;
  basis.energies = positive_branch(w);
  if (n_cluster > 0) {
    const ClusterModes cluster =
        split_cluster(V.middleCols(n_neg, 2 * n_cluster), majorana_form(H));
    modes.leftCols(n_cluster) = cluster.vectors;
    basis.energies.head(n_cluster) = cluster.energies;
  }
  modes.rightCols(n_pos) = V.rightCols(n_pos);
  // Row k of U is the adjoint of mode vector k.
  basis.g = modes.topRows(L).adjoint();
  basis.h = modes.bottomRows(L).adjoint();
  basis.offset = 0.5 * (H.A.trace().real() - basis.energies.sum());
  return basis;
}

NambuForm reconstruct(const BogoliubovBasis& basis) {
  const CMatrix U = basis.unitary();
  const Eigen::Index L = basis.sites();
  RVector d(2 * L);
  d << basis.energies, -basis.energies;
  return NambuForm{U.adjoint() * d.cast<cplx>().asDiagonal() * U};
}

RMatrix majorana_form(const QuadraticHamiltonian& H) {
  require_valid(H);
  const Eigen::Index L = H.A.rows();
  const RMatrix Ar = H.A.real(), Ai = H.A.imag();
  const RMatrix Br = H.B.real(), Bi = H.B.imag();
  RMatrix X(2 * L, 2 * L);
  X.topLeftCorner(L, L) = Ai + Bi;
  X.topRightCorner(L, L) = Br - Ar;
  X.bottomLeftCorner(L, L) = Ar + Br;
  X.bottomRightCorner(L, L) = Ai - Bi;
  return X;
}

RVector single_particle_energies(const QuadraticHamiltonian& H, EnergyRoute route) {
  require_valid(H);
  const Eigen::Index L = H.A.rows();
  const int kd = 2 * std::max(bandwidth(H.A), bandwidth(H.B)) + 1;
  if (8 * kd < 2 * L)
    return positive_branch(hermitian_band_eigenvalues(interleaved_nambu(H), kd));

  if (route == EnergyRoute::Exact)
    return positive_branch(hermitian_eigenvalues(assemble_nambu(H).M));

  // X is real antisymmetric with eigenvalues +/- i lambda, so X^T X has
  // every lambda^2 twice.
  const RMatrix X = majorana_form(H);
  RMatrix gram = RMatrix::Zero(2 * L, 2 * L);
  gram.selfadjointView<Eigen::Lower>().rankUpdate(X.transpose());
  Eigen::SelfAdjointEigenSolver<RMatrix> es;
  es.compute(gram, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw Error(Errc::DegenerateSplitFailure, "eigensolver did not converge");
  const RVector& mu = es.eigenvalues();
  RVector lambda(L);
  for (Eigen::Index k = 0; k < L; ++k)
    lambda(k) = std::sqrt(std::max(0.0, 0.5 * (mu(2 * k) + mu(2 * k + 1))));
  return lambda;
}

}  // namespace gfs
