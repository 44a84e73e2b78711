#pragma once

#include <stdexcept>
#include <string>

namespace cpe {

// Invalid arguments, malformed instances, broken invariants caught at entry.
struct ValidationError : std::invalid_argument {
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// Design matrix (or allocation span) is singular; message names the null direction.
struct RankDeficiencyError : std::runtime_error {
  explicit RankDeficiencyError(const std::string& what) : std::runtime_error(what) {}
};

// Instance has no unique best super arm, so gap quantities are undefined.
struct AmbiguousInstanceError : std::runtime_error {
  explicit AmbiguousInstanceError(const std::string& what) : std::runtime_error(what) {}
};

// Brute-force enumeration refused: the subset count exceeds the safety cap.
struct GuardError : std::runtime_error {
  explicit GuardError(const std::string& what) : std::runtime_error(what) {}
};

// Tracking sampler left the proven count envelope. Only thrown when validation is on.
struct TrackingError : std::logic_error {
  explicit TrackingError(const std::string& what) : std::logic_error(what) {}
};

// Unreadable or malformed input file; message names the path.
struct FileError : std::runtime_error {
  explicit FileError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cpe
