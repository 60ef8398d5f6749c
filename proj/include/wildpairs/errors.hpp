#pragma once

#include <stdexcept>
#include <string>

namespace wildpairs {

// Every error the library raises derives from Error, so callers (the CLI in
// particular) can catch one type and still report the specific kind.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "error"; }
};

#define WILDPAIRS_ERROR(Name, tag)                        \
  class Name : public Error {                             \
   public:                                                \
    using Error::Error;                                   \
    const char* kind() const noexcept override { return tag; } \
  };

WILDPAIRS_ERROR(InvalidArgument, "invalid_argument")
WILDPAIRS_ERROR(FieldMismatch, "field_mismatch")
WILDPAIRS_ERROR(DivisionByZero, "division_by_zero")
WILDPAIRS_ERROR(DimensionMismatch, "dimension_mismatch")
WILDPAIRS_ERROR(SingularMatrix, "singular_matrix")
WILDPAIRS_ERROR(CharacteristicTooSmall, "characteristic_too_small")
WILDPAIRS_ERROR(FieldTooSmall, "field_too_small")
WILDPAIRS_ERROR(BudgetExceeded, "budget_exceeded")
WILDPAIRS_ERROR(VerificationFailed, "verification_failed")
WILDPAIRS_ERROR(HypothesisViolated, "hypothesis_violated")
WILDPAIRS_ERROR(SearchExhausted, "search_exhausted")
WILDPAIRS_ERROR(ParseError, "parse_error")

#undef WILDPAIRS_ERROR

}  // namespace wildpairs
