#include <doctest.h>

#include <cmath>
#include <unordered_set>

#include "gfs/ensemble.hpp"
#include "gfs/error.hpp"
#include "gfs/experiments.hpp"
#include "gfs/rng.hpp"

using namespace gfs;

TEST_SUITE("ensemble") {

TEST_CASE("derive_seed is deterministic and collision free") {
  CHECK(derive_seed(42, 7) == derive_seed(42, 7));
  Rng rng(1);
  int collisions = 0;
  for (int k = 0; k < 1000000; ++k) {
    const std::uint64_t m = rng.bits();
    collisions += derive_seed(m, 0) == derive_seed(m, 1);
  }
  CHECK(collisions == 0);

  std::unordered_set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 200000; ++i) seen.insert(derive_seed(99, i));
  CHECK(seen.size() == 200000);

  // Pinned values guard against accidental changes of the mixing function.
  CHECK(mix64(0) == 0ULL);
  CHECK(derive_seed(0, 0) == mix64(0x9e3779b97f4a7c15ULL));
}

TEST_CASE("child streams of distinct masters differ") {
  Rng rng(5);
  int differ = 0;
  const int pairs = 100000;
  for (int k = 0; k < pairs; ++k) {
    const std::uint64_t m = rng.bits(), n = rng.bits();
    differ += Rng(derive_seed(m, 0)).bits() != Rng(derive_seed(n, 0)).bits();
  }
  CHECK(differ >= 0.9999 * pairs);
}

TEST_CASE("aggregation") {
  const std::vector<double> one = {3.0};
  CHECK(aggregate_scalar(one).mean == 3.0);
  CHECK(aggregate_scalar(one).std_error == 0.0);
  const std::vector<double> v = {1.0, 2.0, 3.0, 4.0};
  const auto a = aggregate_scalar(v);
  CHECK(a.mean == 2.5);
  CHECK(a.std_error == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)));
  CHECK_THROWS_AS(aggregate_scalar(std::vector<double>{}), Error);

  const auto c = aggregate_curves({{1, 2}, {3, 6}});
  CHECK(c.mean == std::vector<double>{2, 4});
  CHECK(c.n_samples == 2);
  CHECK_THROWS_AS(aggregate_curves({{1, 2}, {3}}), Error);
}

TEST_CASE("standard error scales as 1/sqrt(n)") {
  Rng rng(8);
  std::vector<double> x(4000);
  for (double& v : x) v = rng.normal();
  const auto full = aggregate_scalar(x);
  const auto half = aggregate_scalar(std::span<const double>(x).first(1000));
  const double ratio = half.std_error / full.std_error;
  CHECK(ratio > 2.0 / 1.3);
  CHECK(ratio < 2.0 * 1.3);
}

TEST_CASE("run_samples orders results and reports failures") {
  auto square = [](std::size_t i, std::uint64_t) { return static_cast<double>(i * i); };
  const auto serial = run_samples<double>(50, 3, 1, square);
  const auto parallel = run_samples<double>(50, 3, 4, square);
  CHECK(serial == parallel);
  CHECK(serial[7] == 49.0);

  auto seeds = run_samples<std::uint64_t>(5, 11, 3, [](std::size_t, std::uint64_t s) { return s; });
  for (std::size_t i = 0; i < 5; ++i) CHECK(seeds[i] == derive_seed(11, i));

  auto failing = [](std::size_t i, std::uint64_t) -> double {
    if (i == 3 || i == 6) throw Error(Errc::SpectrumOutOfRange, "boom");
    return 0.0;
  };
  for (int workers : {1, 3}) {
    try {
      run_samples<double>(10, 77, workers, failing);
      FAIL("expected a SampleFailure");
    } catch (const SampleFailure& e) {
      CHECK(e.index() == 3);
      CHECK(e.seed() == derive_seed(77, 3));
      CHECK(e.cause() == Errc::SpectrumOutOfRange);
    }
  }
}

TEST_CASE("ensemble without disorder has zero spread") {
  RunConfig c;
  c.command = Command::Quench;
  c.samples = 50;
  c.workers = 2;
  c.model = {ModelKind::DisorderedIsing, 24, 2.0, 2.0, 2.0, 2.0, 1.0, 0};
  c.geometry.block = 4;
  c.geometry.separation = 4;
  c.time.t_max = 2.0;
  c.time.dt = 0.5;
  const auto r = run_quench(c);
  for (const auto& s : r.series)
    for (double e : s.std_error) CHECK(e == 0.0);

  c.samples = 1;
  c.model.Jmin = 1.0;
  c.model.Jmax = 3.0;
  const auto single = run_quench(c);
  for (const auto& s : single.series)
    for (double e : s.std_error) CHECK(e == 0.0);
}

TEST_CASE("ensemble results do not depend on worker count") {
  RunConfig c;
  c.command = Command::Sff;
  c.samples = 12;
  c.model = {ModelKind::Gsyk2, 10, 0, 0, 0, 0, 1.0, 0};
  c.seed = 1234;
  c.time.kind = GridKind::Log;
  c.time.t_min = 0.1;
  c.time.t_max = 100;
  c.time.points = 20;
  c.workers = 1;
  const auto a = run_sff(c);
  c.workers = 5;
  const auto b = run_sff(c);
  CHECK(a.g_full.mean == b.g_full.mean);
  CHECK(a.g_full.std_error == b.g_full.std_error);
  CHECK(a.g_sp.mean == b.g_sp.mean);
}

}  // TEST_SUITE
