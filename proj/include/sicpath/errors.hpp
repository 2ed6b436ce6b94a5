#pragma once

#include <stdexcept>
#include <string>

namespace sicpath {

// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ZeroVector : Error {
  explicit ZeroVector(const std::string& msg = "vector has zero norm") : Error(msg) {}
};

struct NotUnitNorm : Error {
  explicit NotUnitNorm(const std::string& msg) : Error(msg) {}
};

struct BadDimension : Error {
  explicit BadDimension(const std::string& msg) : Error(msg) {}
};

struct GaugeViolation : Error {
  explicit GaugeViolation(const std::string& msg = "gauge requires v(0) = 1") : Error(msg) {}
};

struct NotBiangular : Error {
  explicit NotBiangular(const std::string& msg) : Error(msg) {}
};

struct ParseError : Error {
  explicit ParseError(const std::string& msg) : Error(msg) {}
};

struct DimensionMismatch : Error {
  explicit DimensionMismatch(const std::string& msg) : Error(msg) {}
};

struct InvalidBracket : Error {
  explicit InvalidBracket(const std::string& msg) : Error(msg) {}
};

struct ProjectionLost : Error {
  explicit ProjectionLost(const std::string& msg) : Error(msg) {}
};

struct SeedOffVariety : Error {
  explicit SeedOffVariety(const std::string& msg) : Error(msg) {}
};

}  // namespace sicpath
