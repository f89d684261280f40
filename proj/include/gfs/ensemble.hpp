#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "gfs/error.hpp"

namespace gfs {

/// Child seed for sample `index` of a run with master seed `master`:
/// mix64(mix64(master) + (index + 1) * 0x9e3779b97f4a7c15). For a fixed master
/// this is injective in index (odd multiplier, bijective mixer).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;

struct Aggregate {
  double mean = 0.0;
  double std_error = 0.0;
};

/// Mean and standard error of the mean (n - 1 normalisation; 0 when n = 1).
/// Sums run in index order. Throws EmptySample.
Aggregate aggregate_scalar(std::span<const double> values);

/// Pointwise mean and standard error over equally long curves.
struct CurveAggregate {
  std::vector<double> mean;
  std::vector<double> std_error;
  std::size_t n_samples = 0;
};

CurveAggregate aggregate_curves(const std::vector<std::vector<double>>& per_sample);

/// Runs fn(index, derive_seed(master, index)) for index in [0, n_samples) on
/// up to `workers` threads and returns the results in index order. The
/// first failing sample (lowest index) is rethrown as SampleFailure.
template <class Result, class Fn>
std::vector<Result> run_samples(std::size_t n_samples, std::uint64_t master, int workers,
                                Fn&& fn) {
  std::vector<Result> results(n_samples);
  if (n_samples == 0) return results;
  std::vector<std::exception_ptr> errors(n_samples);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};

  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n_samples || failed.load()) return;
      try {
        results[i] = fn(i, derive_seed(master, i));
      } catch (...) {
        errors[i] = std::current_exception();
        failed.store(true);
      }
    }
  };

  const std::size_t n_threads =
      std::clamp<std::size_t>(static_cast<std::size_t>(std::max(workers, 1)), 1, n_samples);
  if (n_threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n_threads);
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(work);
  }

  for (std::size_t i = 0; i < n_samples; ++i) {
    if (!errors[i]) continue;
    const std::uint64_t seed = derive_seed(master, i);
    try {
      std::rethrow_exception(errors[i]);
    } catch (const Error& e) {
      throw SampleFailure(i, seed, e.code(), e.what());
    } catch (const std::exception& e) {
      throw SampleFailure(i, seed, Errc::SampleFailure, e.what());
    }
  }
  return results;
}

}  // namespace gfs
