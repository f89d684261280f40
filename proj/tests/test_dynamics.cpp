#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "fock_oracle.hpp"
#include "gfs/error.hpp"
#include "helpers.hpp"

using namespace gfs;

namespace {

double projector_error(const CorrelationMatrix& c) { return max_abs(c.C * c.C - c.C); }

std::vector<double> restricted_spectrum(const CorrelationMatrix& c, const Subsystem& A) {
  return testing::to_vector(hermitian_eigenvalues(restrict_to(c, A).C));
}

// Non-trivial part of an entanglement spectrum.
std::vector<double> mixed_part(const std::vector<double>& nu) {
  std::vector<double> out;
  for (double x : nu)
    if (x > 1e-9 && x < 1 - 1e-9) out.push_back(x);
  return out;
}

// (c_0^dag + c_1^dag)/sqrt(2) |0> on two sites.
CorrelationMatrix shared_fermion() {
  CorrelationMatrix c{CMatrix::Zero(4, 4)};
  // <c_i^dag c_j> = 1/2 for i, j in {0, 1}; <c c^dag> = I - <c^dag c>^T.
  CMatrix n = CMatrix::Constant(2, 2, 0.5);
  c.C.topLeftCorner(2, 2) = CMatrix::Identity(2, 2) - n.transpose();
  c.C.bottomRightCorner(2, 2) = n;
  return c;
}

}  // namespace

TEST_SUITE("dynamics") {

TEST_CASE("vacuum and trivial basis") {
  const auto v = vacuum_correlations(3);
  CHECK(max_abs(v.C.topLeftCorner(3, 3) - CMatrix::Identity(3, 3)) == 0.0);
  CHECK(max_abs(v.C.bottomRightCorner(3, 3)) == 0.0);

  BogoliubovBasis trivial{CMatrix::Identity(3, 3), CMatrix::Zero(3, 3), RVector::Ones(3), 0.0};
  CHECK(max_abs(ground_state_correlations(trivial).C - v.C) == 0.0);

  const auto A = Subsystem::block(1, 2, 3);
  const auto r = restrict_to(v, A);
  CHECK(max_abs(r.C - vacuum_correlations(2).C) == 0.0);
  CHECK(entanglement_entropy(r) == 0.0);
  CHECK(max_abs(restrict_to(v, Subsystem::all(3)).C - v.C) == 0.0);
}

TEST_CASE("ground state occupations match the Fock oracle") {
  const auto H = clean_ising(6, 2.0, 2.0);
  const auto C = ground_state_correlations(diagonalize(H));
  const auto psi = fock::ground_state(H);
  for (int i = 0; i < 6; ++i)
    CHECK(std::abs(C.C(6 + i, 6 + i) - fock::hopping(psi, 6, i, i)) < 1e-8);
  const auto res = residuals(C);
  CHECK(res.idempotency < 1e-8);
  CHECK(res.trace_error < 1e-8);
  CHECK(res.particle_hole < 1e-10);
  CHECK(res.pairing_antisymmetry < 1e-10);
}

TEST_CASE("ground state of GSYK2 is a projector") {
  for (std::uint64_t s = 0; s < 5; ++s)
    CHECK(projector_error(ground_state_correlations(diagonalize(gsyk2(12, 1.0, s)))) < 1e-8);
}

TEST_CASE("propagator") {
  const auto b = diagonalize(gsyk2(8, 1.0, 3));
  CHECK(max_abs(propagator(b, 0.0) - CMatrix::Identity(16, 16)) < 1e-10);
  CHECK(max_abs(propagator(b, 0.3) * propagator(b, 0.7) - propagator(b, 1.0)) < 1e-10);
  const CMatrix T = propagator(b, 2.5);
  CHECK(max_abs(T * T.adjoint() - CMatrix::Identity(16, 16)) < 1e-10);

  // One decoupled mode: A = [w], B = 0.
  QuadraticHamiltonian one{CMatrix::Constant(1, 1, 0.8), CMatrix::Zero(1, 1)};
  const CMatrix T1 = propagator(diagonalize(one), 1.7);
  CHECK(std::abs(T1(0, 0) - std::exp(cplx(0, -0.8 * 1.7))) < 1e-14);
  CHECK(std::abs(T1(1, 1) - std::exp(cplx(0, 0.8 * 1.7))) < 1e-14);
  CHECK(std::abs(T1(0, 1)) < 1e-14);
}

TEST_CASE("evolve") {
  const auto b = diagonalize(gsyk2(8, 1.0, 9));
  const auto C0 = ground_state_correlations(b);
  CHECK(max_abs(evolve(C0, b, 0.0).C - C0.C) < 1e-12);
  for (double t : {0.5, 3.0, 40.0}) CHECK(max_abs(evolve(C0, b, t).C - C0.C) < 1e-9);
  CHECK_THROWS_AS(evolve(vacuum_correlations(7), b, 1.0), Error);
}

TEST_CASE("quench entropy matches Schrodinger evolution") {
  const auto pre = clean_ising(8, 3.0, 2.0);
  const auto post = disordered_ising(8, 2.0, 1.0, 3.0, 4);
  const auto b_post = diagonalize(post);
  const auto C0 = ground_state_correlations(diagonalize(pre));
  const auto psi0 = fock::ground_state(pre);
  const auto spec = fock::diagonalize(fock::hamiltonian(post));
  const auto A = Subsystem::block(0, 4, 8);
  for (double t = 0.0; t <= 10.0; t += 1.25) {
    const double mine = subsystem_entropy(evolve(C0, b_post, t), A);
    const double ref = fock::entropy(fock::evolve(spec, psi0, t), 8, A.sites());
    CHECK(std::abs(mine - ref) < 1e-6);
  }
}

TEST_CASE("entropy of random pure Gaussian state, L=8, l=3") {
  const auto H = gsyk2(8, 1.0, 77);
  const auto C = ground_state_correlations(diagonalize(H));
  const auto psi = fock::ground_state(H);
  for (const auto& sites : {std::vector<int>{0, 1, 2}, std::vector<int>{1, 4, 6}}) {
    const auto A = Subsystem::from_sites(sites, 8);
    CHECK(std::abs(subsystem_entropy(C, A) - fock::entropy(psi, 8, sites)) < 1e-8);
  }
}

TEST_CASE("shared fermion") {
  const auto c = shared_fermion();
  const auto A = Subsystem::from_sites({0}, 2), B = Subsystem::from_sites({1}, 2);
  CHECK(subsystem_entropy(c, A) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(mutual_information(c, A, B) == doctest::Approx(2 * std::log(2.0)).epsilon(1e-12));
  CHECK(mutual_information(vacuum_correlations(4), A, B) == 0.0);
  CHECK_THROWS_AS(mutual_information(c, A, A), Error);
}

TEST_CASE("entropy clamping and range errors") {
  CorrelationMatrix c{CMatrix::Zero(2, 2)};
  c.C(0, 0) = 1.0 + 5e-11;
  c.C(1, 1) = -5e-11;
  CHECK(entanglement_entropy(c) == 0.0);
  c.C(0, 0) = 1.0 + 1e-6;
  CHECK_THROWS_AS(entanglement_entropy(c), Error);
}

TEST_CASE("complement spectra coincide") {
  const auto C = ground_state_correlations(diagonalize(gsyk2(10, 1.0, 2)));
  const auto A = Subsystem::from_sites({0, 3, 4, 8}, 10);
  auto a = mixed_part(restricted_spectrum(C, A));
  auto b = mixed_part(restricted_spectrum(C, A.complement(10)));
  REQUIRE(a.size() == b.size());
  for (std::size_t k = 0; k < a.size(); ++k) CHECK(std::abs(a[k] - b[k]) < 1e-8);
}

TEST_CASE("subsystems") {
  CHECK_THROWS_AS(Subsystem::from_sites({1, 1}, 4), Error);
  CHECK_THROWS_AS(Subsystem::from_sites({4}, 4), Error);
  CHECK_THROWS_AS(Subsystem::from_sites({-1}, 4), Error);
  const auto s = Subsystem::from_sites({3, 0}, 4);
  CHECK(s.sites() == std::vector<int>{0, 3});
  CHECK(s.complement(4).sites() == std::vector<int>{1, 2});
  CHECK((s | Subsystem::block(1, 1, 4)).sites() == std::vector<int>{0, 1, 3});
  CHECK(s.overlaps(Subsystem::block(2, 2, 4)));
  CHECK_FALSE(s.overlaps(Subsystem::block(1, 2, 4)));
}

TEST_CASE("TMI of product vacuum and overlap errors") {
  const auto v = vacuum_correlations(6);
  const auto a = Subsystem::block(0, 2, 6), b = Subsystem::block(2, 2, 6),
             c = Subsystem::block(4, 2, 6);
  CHECK(tripartite_mutual_information(v, a, b, c) == 0.0);
  CHECK_THROWS_AS(tripartite_mutual_information(v, a, a, c), Error);
}

TEST_CASE("TMI definition") {
  const auto C = ground_state_correlations(diagonalize(gsyk2(12, 1.0, 6)));
  const auto a = Subsystem::block(0, 3, 12), b = Subsystem::block(3, 3, 12),
             c = Subsystem::block(6, 3, 12);
  const double expected =
      mutual_information(C, a, b) + mutual_information(C, a, c) - mutual_information(C, a, b | c);
  CHECK(tripartite_mutual_information(C, a, b, c) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("Haar rotations") {
  const auto v = vacuum_correlations(8);
  const auto a = Subsystem::block(0, 2, 8), b = Subsystem::block(2, 2, 8),
             c = Subsystem::block(4, 2, 8);
  const auto rv = rotate_modes(v, haar_unitary(8, 1));
  CHECK(max_abs(rv.C - v.C) < 1e-12);
  const auto bound = haar_scrambled_tmi(v, a, b, c, 5, 4);
  CHECK(std::abs(bound.mean) < 1e-10);
  CHECK(bound.draws.size() == 4);

  const auto C0 = ground_state_correlations(diagonalize(clean_ising(8, 3.0, 2.0)));
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto r = rotate_modes(C0, haar_unitary(8, s));
    CHECK(projector_error(r) < 1e-8);
    const auto res = residuals(r);
    CHECK(res.particle_hole < 1e-10);
    CHECK(res.pairing_antisymmetry < 1e-10);
    const auto o = rotate_majorana(C0, haar_orthogonal(16, s));
    CHECK(projector_error(o) < 1e-8);
    CHECK(residuals(o).particle_hole < 1e-10);
  }
  const auto pc = haar_scrambled_tmi(C0, a, b, c, 11, 20, HaarGroup::ParticleConserving);
  CHECK(pc.mean < 0.0);
  CHECK(pc.std_error > 0.0);
}

TEST_CASE("particle-conserving rotation matches the Fock picture") {
  // c -> U c maps a Slater determinant to a Slater determinant; check one
  // entropy against the oracle built from the rotated hopping matrix.
  const int L = 6;
  const CMatrix U = haar_unitary(L, 8);
  QuadraticHamiltonian H{CMatrix::Zero(L, L), CMatrix::Zero(L, L)};
  for (int i = 0; i < L; ++i) H.A(i, i) = i < 3 ? -1.0 - i : 1.0 + i;
  const auto C0 = ground_state_correlations(diagonalize(H));
  // The ground state of U^dag A U is the original one with c -> U^dag c.
  QuadraticHamiltonian Hr{U.adjoint() * H.A * U, CMatrix::Zero(L, L)};
  Hr.A = 0.5 * (Hr.A + Hr.A.adjoint()).eval();
  const auto rotated = rotate_modes(C0, U.adjoint());
  const auto direct = ground_state_correlations(diagonalize(Hr));
  CHECK(max_abs(rotated.C - direct.C) < 1e-10);
}

TEST_CASE("evolver agrees with full evolution") {
  const auto pre = clean_ising(12, 3.0, 2.0);
  const auto post = gsyk2(12, 1.0, 1);
  const auto C0 = ground_state_correlations(diagonalize(pre));
  const auto b = diagonalize(post);
  const GaussianEvolver ev(C0, b);
  const auto A = Subsystem::from_sites({1, 2, 7, 11}, 12);
  for (double t : {0.0, 0.9, 13.0}) {
    const auto full = restrict_to(evolve(C0, b, t), A);
    CHECK(max_abs(ev.restricted(t, A).C - full.C) < 1e-10);
  }
}

TEST_CASE("series and quench protocol") {
  QuenchProtocol p;
  p.pre = {ModelKind::CleanIsing, 16, 3.0, 2.0, 1.0, 3.0, 1.0, 0};
  p.post = p.pre;
  p.times = {0.0};
  const std::vector<Subsystem> parts = {Subsystem::block(0, 5, 16)};
  const auto table = quench_series(p, parts, std::vector<Observable>{Observable::entropy(0, "S")});
  const auto C0 = ground_state_correlations(diagonalize(build(p.pre)));
  CHECK(table.column("S")[0] == doctest::Approx(subsystem_entropy(C0, parts[0])).epsilon(1e-12));
  CHECK_THROWS(table.column("missing"));

  // Observables evaluated through the shared support equal direct calls.
  p.post.kind = ModelKind::DisorderedIsing;
  p.times = {0.0, 1.0, 2.5};
  const std::vector<Subsystem> regions = {Subsystem::block(1, 3, 16), Subsystem::block(6, 3, 16),
                                          Subsystem::block(11, 3, 16)};
  const std::vector<Observable> obs = {Observable::mutual_information(0, 1, "I"),
                                       Observable::tripartite(0, 1, 2, "I3")};
  const auto t2 = quench_series(p, regions, obs);
  const auto b = diagonalize(build(p.post));
  for (std::size_t n = 0; n < p.times.size(); ++n) {
    const auto C = evolve(C0, b, p.times[n]);
    CHECK(t2.values[0][n] == doctest::Approx(mutual_information(C, regions[0], regions[1])).epsilon(1e-10));
    CHECK(t2.values[1][n] ==
          doctest::Approx(tripartite_mutual_information(C, regions[0], regions[1], regions[2])).epsilon(1e-10));
  }
}

TEST_CASE("memory detector") {
  const std::vector<double> t = {0, 1, 2, 3, 4, 5, 6, 7};
  const std::vector<double> spike = {0, 0.1, 2.0, 0.1, 0.1, 0.1, 0.1, 0.1};
  const auto v = detect_memory_effect(t, spike);
  CHECK(v.present);
  CHECK(v.peak == 2.0);
  CHECK(v.peak_time == 2.0);
  CHECK(v.late_mean == doctest::Approx(0.1));
  CHECK(v.ratio == doctest::Approx(20.0));

  const std::vector<double> flat = {0, 0.5, 0.6, 0.6, 0.6, 0.6, 0.6, 0.6};
  CHECK_FALSE(detect_memory_effect(t, flat).present);
  CHECK_THROWS_AS(detect_memory_effect(t, std::vector<double>{1.0}), Error);
}

}  // TEST_SUITE
