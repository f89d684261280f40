#pragma once

#include "gfs/linalg.hpp"

namespace gfs {

/// H = sum_ij c_i^dag A_ij c_j + 1/2 sum_ij (c_i^dag B_ij c_j^dag + c_i B*_ji c_j)
/// with A Hermitian and B antisymmetric, both L x L.
struct QuadraticHamiltonian {
  CMatrix A;
  CMatrix B;

  int sites() const { return static_cast<int>(A.rows()); }
};

struct ValidationReport {
  double hermiticity_violation = 0.0;   // max |A - A^dag|
  double antisymmetry_violation = 0.0;  // max |B + B^T|
  double tolerance = 0.0;
  bool shape_ok = true;
  bool ok = true;
};

/// Never throws. The tolerance is 1e-12 relative to the largest entry of A or B.
ValidationReport validate(const QuadraticHamiltonian& H);

/// M = [[A, B], [-B*, -A^T]], so that H = 1/2 Psi^dag M Psi + 1/2 tr A with
/// Psi = (c_1..c_L, c_1^dag..c_L^dag)^T.
struct NambuForm {
  CMatrix M;

  int sites() const { return static_cast<int>(M.rows() / 2); }
};

NambuForm assemble_nambu(const QuadraticHamiltonian& H);

/// Quasiparticles (eta; eta^dag) = U (c; c^dag) with U = [[g, h], [h*, g*]]
/// and U M U^dag = diag(energies, -energies). Row k of (g, h) annihilates the
/// quasiparticle vacuum for mode k.
///
/// `energies` are non-negative and ascending; many-body levels are
/// sum_k n_k energies_k + offset.
struct BogoliubovBasis {
  CMatrix g;
  CMatrix h;
  RVector energies;
  double offset = 0.0;

  int sites() const { return static_cast<int>(g.rows()); }
  CMatrix unitary() const;
};

/// Throws Errc::InvalidHamiltonian if validate() fails, and
/// Errc::DegenerateSplitFailure if the +/- pairing of M's spectrum breaks
/// down. Levels with |lambda| <= 1e-6 ||M|| (zero modes, edge modes of long
/// chains) are resolved together in a real (Majorana) basis of their span so
/// that each pair stays exactly particle-hole conjugate.
BogoliubovBasis diagonalize(const QuadraticHamiltonian& H);

/// U^dag diag(energies, -energies) U.
NambuForm reconstruct(const BogoliubovBasis& basis);

enum class EnergyRoute {
  // Eigenvalues of M itself (band solver when M is banded in the
  // site-interleaved ordering).
  Exact,
  // Dense matrices go through the Gram matrix X^T X of the real Majorana
  // form; about twice as fast, absolute error ~ eps ||M||^2 / lambda. Meant
  // for spectral statistics on large samples.
  Fast,
};

/// Single-particle energies only (ascending, non-negative), without
/// building eigenvectors.
RVector single_particle_energies(const QuadraticHamiltonian& H,
                                 EnergyRoute route = EnergyRoute::Exact);

/// Real antisymmetric Majorana form X with Q M Q^dag = i X,
/// Q = 2^{-1/2} [[I, I], [iI, -iI]].
RMatrix majorana_form(const QuadraticHamiltonian& H);

}  // namespace gfs
