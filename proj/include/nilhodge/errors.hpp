#pragma once

#include <stdexcept>
#include <string>

namespace nilhodge {

/// Base of every domain error raised by the library; the CLI prints what()
/// verbatim and exits nonzero.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "Error"; }
};

#define NILHODGE_ERROR(Name)                                         \
  struct Name : Error {                                              \
    using Error::Error;                                              \
    const char* kind() const noexcept override { return #Name; }     \
  }

NILHODGE_ERROR(ParseError);
NILHODGE_ERROR(JacobiError);
NILHODGE_ERROR(IntegrabilityError);
NILHODGE_ERROR(UnknownBuiltin);
NILHODGE_ERROR(PresentationMismatch);
NILHODGE_ERROR(SingularOperator);
NILHODGE_ERROR(SingularFrame);
NILHODGE_ERROR(NotIntegrable);
NILHODGE_ERROR(NotSolvable);
NILHODGE_ERROR(HypothesisFailed);
NILHODGE_ERROR(InvalidArrow);
NILHODGE_ERROR(DegreeMismatch);
NILHODGE_ERROR(NotCocycle);

#undef NILHODGE_ERROR

}  // namespace nilhodge
