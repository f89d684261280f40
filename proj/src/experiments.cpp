#include "gfs/experiments.hpp"

#include <algorithm>
#include <climits>
#include <cmath>

#include "gfs/error.hpp"

namespace gfs {

namespace {

ModelConfig with_size(ModelConfig m, int L, std::uint64_t seed) {
  m.L = L;
  m.seed = seed;
  return m;
}

CurveAggregate column_aggregate(const std::vector<SeriesTable>& tables, std::size_t k) {
  std::vector<std::vector<double>> curves;
  curves.reserve(tables.size());
  for (const SeriesTable& t : tables) curves.push_back(t.values[k]);
  return aggregate_curves(curves);
}

}  // namespace

std::vector<Subsystem> quench_subsystems(const RunConfig& config) {
  const int L = config.model.L;
  const Geometry& g = config.geometry;
  const int span = 2 * g.block + g.separation;
  const int first = g.offset ? *g.offset : (L - span) / 2;
  return {Subsystem::block(first, g.block, L),
          Subsystem::block(first + g.block + g.separation, g.block, L)};
}

std::vector<Subsystem> tmi_subsystems(const RunConfig& config) {
  const int L = config.model.L;
  const int width = L / config.geometry.parts;
  return {Subsystem::block(0, width, L), Subsystem::block(width, width, L),
          Subsystem::block(2 * width, width, L)};
}

QuadraticHamiltonian sample_hamiltonian(const RunConfig& config, std::uint64_t sample_seed) {
  return build(with_size(config.model, config.model.L, sample_seed));
}

CorrelationMatrix sample_initial_state(const RunConfig& config, std::uint64_t sample_seed) {
  const int L = config.model.L;
  if (!config.initial_kind) return vacuum_correlations(L);
  ModelConfig pre = with_size(config.initial, L, derive_seed(sample_seed, 0));
  pre.kind = *config.initial_kind;
  return ground_state_correlations(diagonalize(build(pre)));
}

QuenchResult run_quench(const RunConfig& config) {
  validate(config);
  const std::vector<double> times = make_times(config.time);
  const std::vector<Subsystem> parts = quench_subsystems(config);
  const std::vector<Observable> observables = {
      Observable::entropy(0, "S_A1"), Observable::entropy(1, "S_A2"),
      Observable::entropy(2, "S_A1uA2"), Observable::mutual_information(0, 1, "I_A1_A2")};
  const std::vector<Subsystem> regions = {parts[0], parts[1], parts[0] | parts[1]};

  const auto tables = run_samples<SeriesTable>(
      config.samples, config.seed, config.workers, [&](std::size_t, std::uint64_t seed) {
        const GaussianEvolver evolver(sample_initial_state(config, seed),
                                      diagonalize(sample_hamiltonian(config, seed)));
        return evaluate_series(evolver, times, regions, observables);
      });

  QuenchResult r;
  r.times = times;
  for (std::size_t k = 0; k < observables.size(); ++k) {
    r.names.push_back(observables[k].name);
    r.series.push_back(column_aggregate(tables, k));
  }
  r.memory = detect_memory_effect(times, r.series.back().mean, config.late_fraction,
                                  config.memory_threshold);
  return r;
}

TmiResult run_tmi(const RunConfig& config) {
  validate(config);
  const std::vector<double> times = make_times(config.time);
  const std::vector<Subsystem> parts = tmi_subsystems(config);
  const std::vector<Observable> observables = {Observable::tripartite(0, 1, 2, "I3")};

  const auto tables = run_samples<SeriesTable>(
      config.samples, config.seed, config.workers, [&](std::size_t, std::uint64_t seed) {
        const GaussianEvolver evolver(sample_initial_state(config, seed),
                                      diagonalize(sample_hamiltonian(config, seed)));
        return evaluate_series(evolver, times, parts, observables);
      });

  TmiResult r;
  r.times = times;
  r.i3 = column_aggregate(tables, 0);
  r.haar = haar_scrambled_tmi(sample_initial_state(config, derive_seed(config.seed, 0)),
                              parts[0], parts[1], parts[2],
                              derive_seed(config.seed, kHaarSeedIndex), config.haar_draws,
                              config.haar_group);
  return r;
}

SffResult run_sff(const RunConfig& config) {
  validate(config);
  const std::vector<double> times = make_times(config.time);
  struct Sample {
    std::vector<double> full, sp;
    double plateau = 0.0;
  };

  const auto samples = run_samples<Sample>(
      config.samples, config.seed, config.workers, [&](std::size_t, std::uint64_t seed) {
        const RVector lambda = single_particle_energies(sample_hamiltonian(config, seed));
        const std::span<const double> e(lambda.data(), static_cast<std::size_t>(lambda.size()));
        Sample s;
        s.full.reserve(times.size());
        s.sp.reserve(times.size());
        for (double t : times) {
          s.full.push_back(sff_mode_product(e, config.beta, t));
          s.sp.push_back(sff_single_particle(e, config.beta, t));
        }
        s.plateau = sff_plateau(e, config.beta);
        return s;
      });

  std::vector<std::vector<double>> full, sp;
  std::vector<double> plateaus;
  for (const Sample& s : samples) {
    full.push_back(s.full);
    sp.push_back(s.sp);
    plateaus.push_back(s.plateau);
  }
  return {times, aggregate_curves(full), aggregate_curves(sp), aggregate_scalar(plateaus)};
}

LevelStatsResult run_levelstats(const RunConfig& config) {
  validate(config);
  const bool many_body = config.spectrum == SpectrumMode::ManyBody;
  const int guard = config.override_size_guard ? INT_MAX - 1 : config.size_guard;
  if (many_body && config.model.L > guard)
    throw Error(Errc::TooLarge, "many-body level statistics at L = " +
                                    std::to_string(config.model.L) +
                                    " exceed the size guard " + std::to_string(guard));
  if (many_body && config.model.L > 40)
    throw Error(Errc::TooLarge, "2^L levels cannot be enumerated for L > 40");

  struct Sample {
    RatioSample ratios;
    RatioHistogram histogram{2};
  };
  const auto samples = run_samples<Sample>(
      config.samples, config.seed, config.workers, [&](std::size_t, std::uint64_t seed) {
        const QuadraticHamiltonian H = sample_hamiltonian(config, seed);
        SpectrumSample spectrum;
        if (many_body) {
          const RVector lambda = single_particle_energies(H);
          const double offset = 0.5 * (H.A.trace().real() - lambda.sum());
          spectrum = many_body_spectrum(
              std::span<const double>(lambda.data(), static_cast<std::size_t>(lambda.size())),
              offset, guard);
        } else {
          const RVector lambda = single_particle_energies(H, EnergyRoute::Fast);
          spectrum.energies.assign(lambda.begin(), lambda.end());
          std::sort(spectrum.energies.begin(), spectrum.energies.end());
        }
        Sample s;
        s.ratios = spacing_ratios(spectrum);
        s.histogram = ratio_histogram(s.ratios.ratios, config.bins);
        return s;
      });

  LevelStatsResult r;
  r.histogram = RatioHistogram(config.bins);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    r.seeds.push_back(derive_seed(config.seed, i));
    r.sample_means.push_back(samples[i].ratios.mean);
    r.sample_counts.push_back(samples[i].ratios.ratios.size());
    r.histogram.merge(samples[i].histogram);
  }
  r.pooled = aggregate_scalar(r.sample_means);
  return r;
}

ExperimentResult run_ensemble(const RunConfig& config) {
  switch (config.command) {
    case Command::Quench: return run_quench(config);
    case Command::Tmi: return run_tmi(config);
    case Command::Sff: return run_sff(config);
    case Command::LevelStats: return run_levelstats(config);
  }
  throw Error(Errc::InvalidArgument, "unknown command");
}

}  // namespace gfs
