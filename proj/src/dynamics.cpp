#include "gfs/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <map>
#include <string>

#include "gfs/ensemble.hpp"
#include "gfs/error.hpp"

namespace gfs {

namespace {

constexpr double kSpectrumTol = 1e-10;

// Row indices {i} u {i + L} for i in A.
std::vector<Eigen::Index> nambu_rows(const Subsystem& A, int L) {
  std::vector<Eigen::Index> rows;
  rows.reserve(2 * A.sites().size());
  for (int s : A.sites()) rows.push_back(s);
  for (int s : A.sites()) rows.push_back(s + L);
  return rows;
}

void require_disjoint(const Subsystem& a, const Subsystem& b) {
  if (a.overlaps(b))
    throw Error(Errc::OverlappingSubsystems, "subsystems must be disjoint");
}

double binary_entropy_term(double nu) {
  return nu > 0.0 ? nu * std::log(nu) : 0.0;
}

}  // namespace

// --- Subsystem -------------------------------------------------------------

Subsystem Subsystem::from_sites(std::vector<int> sites, int L) {
  std::sort(sites.begin(), sites.end());
  if (std::adjacent_find(sites.begin(), sites.end()) != sites.end())
    throw Error(Errc::BadSubsystem, "duplicate site index");
  if (!sites.empty() && (sites.front() < 0 || sites.back() >= L))
    throw Error(Errc::BadSubsystem, "site index outside [0, " + std::to_string(L) + ")");
  Subsystem s;
  s.sites_ = std::move(sites);
  return s;
}

Subsystem Subsystem::block(int first, int length, int L) {
  if (length < 0) throw Error(Errc::BadSubsystem, "negative block length");
  std::vector<int> sites(length);
  for (int i = 0; i < length; ++i) sites[i] = first + i;
  return from_sites(std::move(sites), L);
}

Subsystem Subsystem::all(int L) { return block(0, L, L); }

bool Subsystem::overlaps(const Subsystem& other) const {
  auto a = sites_.begin(), b = other.sites_.begin();
  while (a != sites_.end() && b != other.sites_.end()) {
    if (*a == *b) return true;
    if (*a < *b) ++a; else ++b;
  }
  return false;
}

Subsystem Subsystem::operator|(const Subsystem& other) const {
  Subsystem s;
  std::set_union(sites_.begin(), sites_.end(), other.sites_.begin(), other.sites_.end(),
                 std::back_inserter(s.sites_));
  return s;
}

Subsystem Subsystem::complement(int L) const {
  Subsystem s;
  auto it = sites_.begin();
  for (int i = 0; i < L; ++i) {
    if (it != sites_.end() && *it == i) { ++it; continue; }
    s.sites_.push_back(i);
  }
  return s;
}

// --- Correlation matrices --------------------------------------------------

CorrelationResiduals residuals(const CorrelationMatrix& corr) {
  const CMatrix& C = corr.C;
  const Eigen::Index L = C.rows() / 2;
  CorrelationResiduals r;
  r.hermiticity = max_abs(C - C.adjoint());
  r.particle_hole = max_abs(C.bottomRightCorner(L, L) -
                            (CMatrix::Identity(L, L) - C.topLeftCorner(L, L).transpose()));
  r.pairing_antisymmetry =
      max_abs(C.topRightCorner(L, L) + C.topRightCorner(L, L).transpose());
  r.idempotency = max_abs(C * C - C);
  r.trace_error = std::abs(C.trace().real() - static_cast<double>(L));
  const RVector nu = hermitian_eigenvalues(0.5 * (C + C.adjoint()));
  r.min_eigenvalue = nu.minCoeff();
  r.max_eigenvalue = nu.maxCoeff();
  return r;
}

CorrelationMatrix vacuum_correlations(int L) {
  CorrelationMatrix c{CMatrix::Zero(2 * L, 2 * L)};
  c.C.topLeftCorner(L, L).setIdentity();
  return c;
}

CorrelationMatrix ground_state_correlations(const BogoliubovBasis& basis) {
  const Eigen::Index L = basis.sites();
  // U^dag diag(I, 0) U = (first L columns of U^dag)(first L rows of U).
  CMatrix rows(L, 2 * L);
  rows << basis.g, basis.h;
  return {rows.adjoint() * rows};
}

CMatrix propagator(const BogoliubovBasis& basis, double t) {
  const Eigen::Index L = basis.sites();
  const CMatrix U = basis.unitary();
  CVector phase(2 * L);
  for (Eigen::Index k = 0; k < L; ++k) {
    phase(k) = std::exp(-kI * (basis.energies(k) * t));
    phase(k + L) = std::conj(phase(k));
  }
  return U.adjoint() * phase.asDiagonal() * U;
}

CorrelationMatrix evolve(const CorrelationMatrix& initial, const BogoliubovBasis& basis,
                         double t) {
  if (initial.sites() != basis.sites())
    throw Error(Errc::SizeMismatch, "correlation matrix and basis have different L");
  const CMatrix T = propagator(basis, t);
  return {T * initial.C * T.adjoint()};
}

CorrelationMatrix restrict_to(const CorrelationMatrix& corr, const Subsystem& A) {
  const int L = corr.sites();
  if (!A.sites().empty() && (A.sites().front() < 0 || A.sites().back() >= L))
    throw Error(Errc::BadSubsystem, "subsystem does not fit the correlation matrix");
  const auto rows = nambu_rows(A, L);
  return {corr.C(rows, rows)};
}

double entanglement_entropy(const CorrelationMatrix& restricted) {
  if (restricted.C.size() == 0) return 0.0;
  const RVector nu = hermitian_eigenvalues(restricted.C);
  double s = 0.0;
  for (double v : nu) {
    if (v < -kSpectrumTol || v > 1.0 + kSpectrumTol)
      throw Error(Errc::SpectrumOutOfRange,
                  "correlation eigenvalue " + std::to_string(v) + " outside [0, 1]");
    v = std::clamp(v, 0.0, 1.0);
    s -= binary_entropy_term(v) + binary_entropy_term(1.0 - v);
  }
  return 0.5 * s;
}

double subsystem_entropy(const CorrelationMatrix& corr, const Subsystem& A) {
  return entanglement_entropy(restrict_to(corr, A));
}

double mutual_information(const CorrelationMatrix& corr, const Subsystem& A,
                          const Subsystem& B) {
  require_disjoint(A, B);
  return subsystem_entropy(corr, A) + subsystem_entropy(corr, B) -
         subsystem_entropy(corr, A | B);
}

double tripartite_mutual_information(const CorrelationMatrix& corr, const Subsystem& A1,
                                     const Subsystem& A2, const Subsystem& A3) {
  require_disjoint(A1, A2);
  require_disjoint(A1, A3);
  require_disjoint(A2, A3);
  return mutual_information(corr, A1, A2) + mutual_information(corr, A1, A3) -
         mutual_information(corr, A1, A2 | A3);
}

// --- Haar scrambling -------------------------------------------------------

CorrelationMatrix rotate_modes(const CorrelationMatrix& corr, const CMatrix& U) {
  const Eigen::Index L = corr.sites();
  if (U.rows() != L || U.cols() != L)
    throw Error(Errc::SizeMismatch, "rotation size does not match L");
  CMatrix W = CMatrix::Zero(2 * L, 2 * L);
  W.topLeftCorner(L, L) = U;
  W.bottomRightCorner(L, L) = U.conjugate();
  return {W * corr.C * W.adjoint()};
}

CorrelationMatrix rotate_majorana(const CorrelationMatrix& corr, const RMatrix& O) {
  const Eigen::Index L = corr.sites();
  if (O.rows() != 2 * L || O.cols() != 2 * L)
    throw Error(Errc::SizeMismatch, "rotation size does not match 2L");
  // W = Q^dag O Q with Q = 2^{-1/2} [[I, I], [iI, -iI]].
  const double s = 1.0 / std::sqrt(2.0);
  CMatrix Q = CMatrix::Zero(2 * L, 2 * L);
  Q.topLeftCorner(L, L).diagonal().setConstant(s);
  Q.topRightCorner(L, L).diagonal().setConstant(s);
  Q.bottomLeftCorner(L, L).diagonal().setConstant(s * kI);
  Q.bottomRightCorner(L, L).diagonal().setConstant(-s * kI);
  const CMatrix W = Q.adjoint() * O.cast<cplx>() * Q;
  return {W * corr.C * W.adjoint()};
}

std::string_view to_string(HaarGroup group) noexcept {
  return group == HaarGroup::ParticleConserving ? "particle_conserving" : "bogoliubov";
}

HaarTmi haar_scrambled_tmi(const CorrelationMatrix& initial, const Subsystem& A1,
                           const Subsystem& A2, const Subsystem& A3, std::uint64_t seed,
                           int n_draws, HaarGroup group) {
  if (n_draws < 1) throw Error(Errc::InvalidArgument, "need at least one Haar draw");
  require_disjoint(A1, A2);
  require_disjoint(A1, A3);
  require_disjoint(A2, A3);
  const int L = initial.sites();
  HaarTmi out;
  out.draws.reserve(n_draws);
  for (int i = 0; i < n_draws; ++i) {
    const std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(i));
    const CorrelationMatrix rotated =
        group == HaarGroup::ParticleConserving
            ? rotate_modes(initial, haar_unitary(L, s))
            : rotate_majorana(initial, haar_orthogonal(2 * L, s));
    out.draws.push_back(tripartite_mutual_information(rotated, A1, A2, A3));
  }
  const Aggregate agg = aggregate_scalar(out.draws);
  out.mean = agg.mean;
  out.std_error = agg.std_error;
  return out;
}

// --- Time evolution ----------------------------------------------------------

GaussianEvolver::GaussianEvolver(const CorrelationMatrix& initial,
                                 const BogoliubovBasis& generator)
    : energies_(generator.energies) {
  if (initial.sites() != generator.sites())
    throw Error(Errc::SizeMismatch, "initial state and generator have different L");
  const CMatrix U = generator.unitary();
  u_dagger_ = U.adjoint();
  const CMatrix rotated = U * initial.C * u_dagger_;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (rotated + rotated.adjoint()));
  const RVector& nu = es.eigenvalues();
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < nu.size(); ++i)
    if (nu(i) > 1e-13) keep.push_back(i);
  factor_.resize(rotated.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j)
    factor_.col(j) = es.eigenvectors().col(keep[j]) * std::sqrt(nu(keep[j]));
}

CorrelationMatrix GaussianEvolver::restricted(double t, const Subsystem& A) const {
  const int L = sites();
  if (!A.sites().empty() && A.sites().back() >= L)
    throw Error(Errc::BadSubsystem, "subsystem does not fit the evolver");
  const auto rows = nambu_rows(A, L);
  CMatrix left = u_dagger_(rows, Eigen::all);
  for (int k = 0; k < L; ++k) {
    const cplx phase = std::exp(-kI * (energies_(k) * t));
    left.col(k) *= phase;
    left.col(k + L) *= std::conj(phase);
  }
  const CMatrix z = left * factor_;
  return {z * z.adjoint()};
}

// --- Series ----------------------------------------------------------------

Observable Observable::entropy(int a, std::string name) {
  return {Kind::Entropy, {a}, std::move(name)};
}
Observable Observable::mutual_information(int a, int b, std::string name) {
  return {Kind::MutualInformation, {a, b}, std::move(name)};
}
Observable Observable::tripartite(int a, int b, int c, std::string name) {
  return {Kind::Tripartite, {a, b, c}, std::move(name)};
}

const std::vector<double>& SeriesTable::column(std::string_view name) const {
  for (std::size_t k = 0; k < names.size(); ++k)
    if (names[k] == name) return values[k];
  throw Error(Errc::InvalidArgument, "no column named " + std::string(name));
}

SeriesTable evaluate_series(const GaussianEvolver& evolver, std::span<const double> times,
                            std::span<const Subsystem> subsystems,
                            std::span<const Observable> observables) {
  const int L = evolver.sites();
  const auto part = [&](const Observable& o, std::size_t k) -> const Subsystem& {
    const int idx = o.parts.at(k);
    if (idx < 0 || idx >= static_cast<int>(subsystems.size()))
      throw Error(Errc::InvalidArgument, "observable " + o.name + " refers to a missing subsystem");
    return subsystems[idx];
  };

  // Every observable is a signed sum of entropies of unions of parts.
  struct Term { Subsystem region; double sign; };
  std::vector<std::vector<Term>> expansion;
  Subsystem support;
  for (const Observable& o : observables) {
    std::vector<Term> terms;
    switch (o.kind) {
      case Observable::Kind::Entropy:
        terms = {{part(o, 0), 1.0}};
        break;
      case Observable::Kind::MutualInformation: {
        const Subsystem &a = part(o, 0), &b = part(o, 1);
        require_disjoint(a, b);
        terms = {{a, 1.0}, {b, 1.0}, {a | b, -1.0}};
        break;
      }
      case Observable::Kind::Tripartite: {
        const Subsystem &a = part(o, 0), &b = part(o, 1), &c = part(o, 2);
        require_disjoint(a, b);
        require_disjoint(a, c);
        require_disjoint(b, c);
        terms = {{a, 1.0},       {b, 1.0},       {c, 1.0},          {a | b, -1.0},
                 {a | c, -1.0},  {b | c, -1.0},  {a | b | c, 1.0}};
        break;
      }
    }
    for (const Term& t : terms) support = support | t.region;
    expansion.push_back(std::move(terms));
  }
  if (!support.sites().empty() && support.sites().back() >= L)
    throw Error(Errc::BadSubsystem, "subsystem does not fit the chain");

  // Position of each supported site inside the restricted matrix.
  std::vector<int> local(L, -1);
  for (int i = 0; i < support.size(); ++i) local[support.sites()[i]] = i;
  const auto localize = [&](const Subsystem& s) {
    std::vector<int> idx;
    idx.reserve(s.sites().size());
    for (int site : s.sites()) idx.push_back(local[site]);
    return Subsystem::from_sites(std::move(idx), support.size());
  };

  SeriesTable table;
  table.times.assign(times.begin(), times.end());
  for (const Observable& o : observables) table.names.push_back(o.name);
  table.values.assign(observables.size(), std::vector<double>(times.size(), 0.0));

  for (std::size_t n = 0; n < times.size(); ++n) {
    const CorrelationMatrix c = evolver.restricted(times[n], support);
    std::map<std::vector<int>, double> cache;
    for (std::size_t k = 0; k < expansion.size(); ++k) {
      double value = 0.0;
      for (const Term& term : expansion[k]) {
        auto [it, fresh] = cache.try_emplace(term.region.sites(), 0.0);
        if (fresh) it->second = subsystem_entropy(c, localize(term.region));
        value += term.sign * it->second;
      }
      table.values[k][n] = value;
    }
  }
  return table;
}

SeriesTable quench_series(const QuenchProtocol& protocol,
                          std::span<const Subsystem> subsystems,
                          std::span<const Observable> observables) {
  if (protocol.pre.L != protocol.post.L)
    throw Error(Errc::SizeMismatch, "pre- and post-quench models have different L");
  for (std::size_t n = 0; n < protocol.times.size(); ++n)
    if (protocol.times[n] < 0.0 || (n > 0 && protocol.times[n] <= protocol.times[n - 1]))
      throw Error(Errc::InvalidArgument, "quench times must be non-negative and increasing");
  const CorrelationMatrix initial = ground_state_correlations(diagonalize(build(protocol.pre)));
  const GaussianEvolver evolver(initial, diagonalize(build(protocol.post)));
  return evaluate_series(evolver, protocol.times, subsystems, observables);
}

MemoryVerdict detect_memory_effect(std::span<const double> times,
                                   std::span<const double> mutual_information,
                                   double late_fraction, double threshold) {
  if (times.size() != mutual_information.size() || times.empty())
    throw Error(Errc::SizeMismatch, "times and series must be non-empty and equally long");
  if (!(late_fraction > 0.0 && late_fraction <= 1.0))
    throw Error(Errc::InvalidArgument, "late_fraction must lie in (0, 1]");
  MemoryVerdict v;
  const auto peak = std::max_element(mutual_information.begin(), mutual_information.end());
  v.peak = *peak;
  v.peak_time = times[peak - mutual_information.begin()];
  const std::size_t n = times.size();
  const std::size_t late = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(late_fraction * static_cast<double>(n))));
  double sum = 0.0;
  for (std::size_t i = n - late; i < n; ++i) sum += mutual_information[i];
  v.late_mean = sum / static_cast<double>(late);
  v.ratio = v.late_mean > 0.0 ? v.peak / v.late_mean
                              : (v.peak > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
  v.present = v.ratio > threshold;
  return v;
}

}  // namespace gfs
