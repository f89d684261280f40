#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "gfs/error.hpp"
#include "gfs/rng.hpp"
#include "helpers.hpp"

using namespace gfs;

namespace {

// Composite Simpson rule on [0, 1].
template <class F>
double simpson(F&& f, int intervals = 20000) {
  const double h = 1.0 / intervals;
  double s = f(0.0) + f(1.0);
  for (int i = 1; i < intervals; ++i) s += (i % 2 ? 4.0 : 2.0) * f(i * h);
  return s * h / 3.0;
}

double relative(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST_SUITE("spectral") {

TEST_CASE("mode product closed forms") {
  const std::vector<double> lambda = {0.3, 1.1, 2.0};
  CHECK(sff_mode_product(lambda, 1.0, 0.0) == 1.0);
  CHECK(sff_mode_product(lambda, 0.0, 0.0) == 1.0);
  const std::vector<double> one = {0.7};
  for (double t : {0.1, 1.0, 4.2})
    CHECK(sff_mode_product(one, 0.0, t) == doctest::Approx(std::pow(std::cos(0.7 * t / 2), 2)).epsilon(1e-14));
}

TEST_CASE("single-particle form factor") {
  const std::vector<double> lambda = {0.3, 1.1, 2.0};
  CHECK(sff_single_particle(lambda, 1.0, 0.0) == 1.0);
  const std::vector<double> one = {1.3};
  CHECK(sff_single_particle(one, 0.5, 7.0) == doctest::Approx(1.0).epsilon(1e-15));
  const std::vector<double> two = {1.0, 2.0};
  for (double t : {0.2, 1.5, 9.0})
    CHECK(sff_single_particle(two, 0.0, t) == doctest::Approx(std::pow(std::cos(t / 2), 2)).epsilon(1e-13));
  CHECK_THROWS_AS(sff_single_particle(std::vector<double>{}, 0.0, 1.0), Error);
}

TEST_CASE("many-body enumeration") {
  const std::vector<double> a = {1.0, 2.0};
  CHECK(many_body_spectrum(a, 0.0).energies == std::vector<double>{0, 1, 2, 3});
  const std::vector<double> b = {1.0, 1.0};
  CHECK(many_body_spectrum(b, 0.0).energies == std::vector<double>{0, 1, 1, 2});
  CHECK(many_body_spectrum(a, 0.5).energies.front() == 0.5);
  CHECK(many_body_spectrum(a, 0.0).kind == SpectrumKind::ManyBody);
  const std::vector<double> big(17, 1.0);
  CHECK_THROWS_AS(many_body_spectrum(big, 0.0), Error);
  CHECK(many_body_spectrum(big, 0.0, 17).energies.size() == (1u << 17));
}

TEST_CASE("spectrum form factor basics") {
  const SpectrumSample s{{-1.0, 0.2, 0.9, 3.0}, SpectrumKind::ManyBody};
  CHECK(sff_from_spectrum(s, 1.0, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  SpectrumSample shifted = s;
  for (double& e : shifted.energies) e += 123.456;
  for (double beta : {0.0, 1.0})
    for (double t : {0.3, 2.0, 11.0})
      CHECK(sff_from_spectrum(shifted, beta, t) ==
            doctest::Approx(sff_from_spectrum(s, beta, t)).epsilon(1e-12));
}

TEST_CASE("mode product equals enumerated spectrum, GSYK2 L=10") {
  const auto b = diagonalize(gsyk2(10, 1.0, 12));
  const auto spectrum = many_body_spectrum(b);
  const std::vector<double> lambda = testing::to_vector(b.energies);
  for (int k = 0; k < 50; ++k) {
    const double t = 0.37 * k;
    CHECK(relative(sff_mode_product(lambda, 1.0, t), sff_from_spectrum(spectrum, 1.0, t)) < 1e-10);
  }
}

TEST_CASE("plateau is the long-time mean") {
  const std::vector<double> lambda = {0.31, 0.77, 1.234, 1.9};
  const double beta = 0.7;
  double sum = 0.0;
  const int n = 200000;
  for (int k = 0; k < n; ++k) sum += sff_mode_product(lambda, beta, 1e4 + 9.1 * k);
  CHECK(relative(sum / n, sff_plateau(lambda, beta)) < 0.02);
  CHECK(sff_plateau(std::vector<double>{0.0, 1.0}, 0.0) == 0.5);
}

TEST_CASE("spacing ratios") {
  const auto r = spacing_ratios({{0, 1, 2, 3}});
  CHECK(r.ratios == std::vector<double>{1.0, 1.0});
  CHECK(r.mean == 1.0);
  const auto r2 = spacing_ratios({{0, 1, 3}});
  CHECK(r2.ratios == std::vector<double>{0.5});
  CHECK_THROWS_AS(spacing_ratios({{0, 1}}), Error);
  CHECK_THROWS_AS(spacing_ratios({{0, 2, 1}}), Error);
  CHECK_THROWS_AS(spacing_ratios({{1, 1, 1}}), Error);

  // Degenerate spacing removes both ratios that touch it.
  const auto r3 = spacing_ratios({{0, 1, 1, 3, 4, 6}});
  CHECK(r3.ratios == std::vector<double>{0.5, 0.5});

  // Scale and shift invariance.
  const auto e = testing::to_vector(hermitian_eigenvalues(syk2(50, 1.0, 3).A));
  std::vector<double> f = e;
  for (double& x : f) x = 3.5 * x - 2.0;
  const auto a = spacing_ratios({e}), c = spacing_ratios({f});
  REQUIRE(a.ratios.size() == c.ratios.size());
  for (std::size_t k = 0; k < a.ratios.size(); ++k) CHECK(std::abs(a.ratios[k] - c.ratios[k]) < 1e-12);
}

TEST_CASE("Poisson spectrum ratio mean") {
  Rng rng(1);
  std::vector<double> e(1000000);
  for (double& x : e) x = rng.uniform();
  std::sort(e.begin(), e.end());
  const auto r = spacing_ratios({e});
  CHECK(std::abs(r.mean - (2 * std::log(2.0) - 1)) < 0.002);

  // Compared with the exact bin average, from the CDF 2r / (1 + r).
  const auto h = ratio_histogram(r.ratios, 50);
  const auto d = h.density();
  auto cdf = [](double x) { return 2 * x / (1 + x); };
  double worst = 0.0, worst_z = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double expected = 50 * (cdf((i + 1) / 50.0) - cdf(i / 50.0));
    const double sigma = std::sqrt(expected * 50 / h.total());
    worst = std::max(worst, std::abs(d[i] - expected));
    worst_z = std::max(worst_z, std::abs(d[i] - expected) / sigma);
  }
  // 0.02 is about two bin standard deviations near r = 0.
  CHECK(worst < 0.02);
  CHECK(worst_z < 4.0);
}

TEST_CASE("reference densities") {
  CHECK(reference_ratio_pdf(RatioEnsemble::Poisson, 0.0) == 2.0);
  CHECK(reference_ratio_pdf(RatioEnsemble::Poisson, 1.0) == 0.5);
  for (auto kind : {RatioEnsemble::Poisson, RatioEnsemble::GOE, RatioEnsemble::GUE, RatioEnsemble::GSE}) {
    INFO(to_string(kind));
    CHECK(std::abs(simpson([&](double r) { return reference_ratio_pdf(kind, r); }) - 1.0) < 1e-8);
    CHECK(parse_ratio_ensemble(to_string(kind)) == kind);
  }
  CHECK_THROWS_AS(reference_ratio_pdf(RatioEnsemble::GOE, 1.5), Error);
  CHECK_THROWS_AS(reference_ratio_pdf(RatioEnsemble::GOE, -0.1), Error);
  CHECK(wigner_ensemble(4) == RatioEnsemble::GSE);
  CHECK_FALSE(wigner_ensemble(3).has_value());
}

TEST_CASE("reference means by quadrature") {
  const double expected[] = {0.386, 0.536, 0.602, 0.676};
  int i = 0;
  for (auto kind : {RatioEnsemble::Poisson, RatioEnsemble::GOE, RatioEnsemble::GUE, RatioEnsemble::GSE}) {
    const double mean = simpson([&](double r) { return r * reference_ratio_pdf(kind, r); });
    CHECK(std::abs(mean - expected[i++]) < 0.001);
  }
}

TEST_CASE("histograms") {
  const std::vector<double> half(7, 0.5);
  const auto h = ratio_histogram(half, 10);
  const auto d = h.density();
  for (int i = 0; i < 10; ++i) CHECK(d[i] == (i == 5 ? 10.0 : 0.0));
  CHECK_THROWS_AS(ratio_histogram(std::vector<double>{}, 10), Error);
  CHECK_THROWS_AS(ratio_histogram(half, 1), Error);
  CHECK_THROWS_AS(RatioHistogram(10).density(), Error);

  RatioHistogram a(4), b(4), ab(4);
  const std::vector<double> x = {0.1, 0.3, 1.0}, y = {0.0, 0.6};
  a.add(x);
  b.add(y);
  ab.add(y);
  ab.add(x);
  a.merge(b);
  CHECK(a.counts() == ab.counts());
  CHECK(a.counts()[3] == 1);  // r = 1 lands in the last bin
  CHECK_THROWS_AS(a.merge(RatioHistogram(5)), Error);
}

TEST_CASE("GUE ratios follow the beta = 2 surmise") {
  RatioHistogram h(50);
  for (std::uint64_t s = 0; s < 40; ++s) {
    auto e = testing::to_vector(hermitian_eigenvalues(syk2(300, 1.0, 900 + s).A));
    h.add(spacing_ratios({e}).ratios);
  }
  const auto centers = h.centers();
  double chi2 = 0.0;
  const double n = static_cast<double>(h.total());
  for (int i = 0; i < 50; ++i) {
    const double expected = n / 50 * reference_ratio_pdf(RatioEnsemble::GUE, centers[i]);
    chi2 += std::pow(h.counts()[i] - expected, 2) / expected;
  }
  CHECK(chi2 / 50 < 2.0);
}

}  // TEST_SUITE
