#include "gfs/error.hpp"

namespace gfs {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::InvalidHamiltonian: return "InvalidHamiltonian";
    case Errc::DegenerateSplitFailure: return "DegenerateSplitFailure";
    case Errc::BadSize: return "BadSize";
    case Errc::BadWindow: return "BadWindow";
    case Errc::SizeMismatch: return "SizeMismatch";
    case Errc::BadSubsystem: return "BadSubsystem";
    case Errc::OverlappingSubsystems: return "OverlappingSubsystems";
    case Errc::SpectrumOutOfRange: return "SpectrumOutOfRange";
    case Errc::TooFewLevels: return "TooFewLevels";
    case Errc::TooLarge: return "TooLarge";
    case Errc::BadDomain: return "BadDomain";
    case Errc::EmptySample: return "EmptySample";
    case Errc::SampleFailure: return "SampleFailure";
    case Errc::Config: return "ConfigError";
    case Errc::Io: return "IoError";
  }
  return "Unknown";
}

SampleFailure::SampleFailure(std::size_t index, std::uint64_t seed, Errc cause,
                             const std::string& what)
    : Error(Errc::SampleFailure, "sample " + std::to_string(index) + " (seed " +
                                     std::to_string(seed) + ") failed: " + what),
      index_(index),
      seed_(seed),
      cause_(cause) {}

}  // namespace gfs
