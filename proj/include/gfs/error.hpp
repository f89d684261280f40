#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gfs {

enum class Errc {
  InvalidArgument,
  InvalidHamiltonian,
  DegenerateSplitFailure,
  BadSize,
  BadWindow,
  SizeMismatch,
  BadSubsystem,
  OverlappingSubsystems,
  SpectrumOutOfRange,
  TooFewLevels,
  TooLarge,
  BadDomain,
  EmptySample,
  SampleFailure,
  Config,
  Io,
};

const char* to_string(Errc code) noexcept;

// All library failures are reported as gfs::Error carrying a category code.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// Raised by the ensemble runner; carries the reproducibility handle.
class SampleFailure : public Error {
 public:
  SampleFailure(std::size_t index, std::uint64_t seed, Errc cause,
                const std::string& what);
  std::size_t index() const noexcept { return index_; }
  std::uint64_t seed() const noexcept { return seed_; }
  Errc cause() const noexcept { return cause_; }

 private:
  std::size_t index_;
  std::uint64_t seed_;
  Errc cause_;
};

}  // namespace gfs
