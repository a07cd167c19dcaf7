#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace groupeq {

enum class ErrorCode {
  NotAPrime,
  NotAUnit,
  NonCoprimeModuli,
  OutOfRange,
  DescriptorMismatch,
  NotAPGroup,
  NotPeriodic,
  NotDivisible,
  NotPiNonsingular,
  PSingular,
  MissingPrimeNonsingularity,
  Singular,
  UnsupportedGroup,
  DependentRow,
  SearchSpaceTooLarge,
  MissingVariable,
  NotUnimodular,
  NotCentral,
  CentralityAssertionFailed,
  DuplicatePrime,
  InvalidArgument,
  ParseError,
};

std::string_view error_name(ErrorCode code);

/// Single exception type for the library. `code` is the stable, scriptable
/// identity; the message is for humans.
///
/// Singularity errors carry a witness: integer coefficients, one per row of
/// the offending (truncated) system, whose combination of rows vanishes
/// (over Q, or modulo `prime` for p-singularity).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_name(code)) + ": " + message), code_(code) {}

  Error(ErrorCode code, const std::string& message, std::vector<mpz_class> witness,
        std::optional<mpz_class> prime = std::nullopt)
      : Error(code, message) {
    witness_ = std::move(witness);
    prime_ = std::move(prime);
  }

  ErrorCode code() const noexcept { return code_; }
  const std::vector<mpz_class>& witness() const noexcept { return witness_; }
  const std::optional<mpz_class>& prime() const noexcept { return prime_; }

 private:
  ErrorCode code_;
  std::vector<mpz_class> witness_;
  std::optional<mpz_class> prime_;
};

}  // namespace groupeq
