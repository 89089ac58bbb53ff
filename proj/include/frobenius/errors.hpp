#pragma once

#include <stdexcept>
#include <string>

namespace frobenius {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define FROBENIUS_DECLARE_ERROR(Name)      \
  class Name : public Error {              \
   public:                                 \
    using Error::Error;                    \
  }

// Parameters outside the domain where the regular series exists.
FROBENIUS_DECLARE_ERROR(DomainError);
// Series evaluated beyond the potential's convergence radius, or K ceiling hit.
FROBENIUS_DECLARE_ERROR(ConvergenceError);
// Accumulated cancellation ate the working precision.
FROBENIUS_DECLARE_ERROR(PrecisionError);
FROBENIUS_DECLARE_ERROR(ResolutionError);
FROBENIUS_DECLARE_ERROR(InterleaveError);
FROBENIUS_DECLARE_ERROR(InsufficientRError);
FROBENIUS_DECLARE_ERROR(ConfinementError);
FROBENIUS_DECLARE_ERROR(NoSignChange);
FROBENIUS_DECLARE_ERROR(GridError);
FROBENIUS_DECLARE_ERROR(ConfigError);

#undef FROBENIUS_DECLARE_ERROR

}  // namespace frobenius
