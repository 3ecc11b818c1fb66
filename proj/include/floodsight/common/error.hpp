#pragma once

#include <stdexcept>
#include <string>

namespace floodsight {

// Bad arguments, shapes, or configuration supplied by the caller.
class InvalidInputError : public std::invalid_argument {
 public:
  explicit InvalidInputError(const std::string& what) : std::invalid_argument(what) {}
};

// Normalization statistics that cannot be applied (zero std, channel mismatch).
class InvalidStatsError : public std::invalid_argument {
 public:
  explicit InvalidStatsError(const std::string& what) : std::invalid_argument(what) {}
};

// Rasters that cannot be brought onto a common grid.
class AlignmentError : public std::runtime_error {
 public:
  explicit AlignmentError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed strings or files (grid cells, GeoJSON, CSV).
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Key not present in a lookup table (e.g. zip code without a price).
class LookupError : public std::runtime_error {
 public:
  explicit LookupError(const std::string& what) : std::runtime_error(what) {}
};

// A record that cannot be assigned to any bucket/polygon.
class UnassignedError : public std::runtime_error {
 public:
  explicit UnassignedError(const std::string& what) : std::runtime_error(what) {}
};

// Coordinates outside the supported domain (e.g. polar latitudes).
class OutOfDomainError : public std::runtime_error {
 public:
  explicit OutOfDomainError(const std::string& what) : std::runtime_error(what) {}
};

// File system failures, always carrying the offending path.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// Non-finite loss during optimization.
class TrainingDivergedError : public std::runtime_error {
 public:
  explicit TrainingDivergedError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace floodsight
