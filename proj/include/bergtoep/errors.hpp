#pragma once

#include <stdexcept>
#include <string>

namespace bergtoep {

struct SingularMatrix : std::runtime_error {
  explicit SingularMatrix(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotHermitianPSD : std::runtime_error {
  explicit NotHermitianPSD(const std::string& msg) : std::runtime_error(msg) {}
};

struct RejectionBudgetExceeded : std::runtime_error {
  explicit RejectionBudgetExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

struct MultiplicityViolation : std::runtime_error {
  explicit MultiplicityViolation(const std::string& msg) : std::runtime_error(msg) {}
};

struct DimensionMismatch : std::runtime_error {
  explicit DimensionMismatch(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotUnitary : std::runtime_error {
  explicit NotUnitary(const std::string& msg) : std::runtime_error(msg) {}
};

struct SymbolSyntaxError : std::runtime_error {
  std::size_t position;
  std::string expected;
  SymbolSyntaxError(std::size_t pos, const std::string& what_expected)
      : std::runtime_error("syntax error at position " + std::to_string(pos) +
                           ": expected " + what_expected),
        position(pos),
        expected(what_expected) {}
};

struct IndexOutOfRange : std::runtime_error {
  explicit IndexOutOfRange(const std::string& msg) : std::runtime_error(msg) {}
};

struct DivisorBelowBound : std::runtime_error {
  explicit DivisorBelowBound(const std::string& msg) : std::runtime_error(msg) {}
};

struct BoundExceeded : std::runtime_error {
  explicit BoundExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

struct GramNotPD : std::runtime_error {
  explicit GramNotPD(const std::string& msg) : std::runtime_error(msg) {}
};

struct BasisMismatch : std::runtime_error {
  explicit BasisMismatch(const std::string& msg) : std::runtime_error(msg) {}
};

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace bergtoep
