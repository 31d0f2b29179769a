#pragma once

#include <stdexcept>
#include <string>

namespace levent {

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  InvalidState,       // non-symmetric, non-positive-definite or unphysical covariance
  Unstable,           // drift is not Hurwitz, no steady state
  UnsupportedVariant, // builder called outside its validity domain
  IllDefinedMode,     // Bogoliubov transformation undefined (lambda2 >= lambda1)
  DegenerateInput,    // e.g. Floquet embedding of a constant model
  StepSize,           // integrator step too coarse for the fastest scale
  Config,
  Io,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised when a steady state is requested for a non-Hurwitz drift. Carries the
/// spectral abscissa that failed the test.
class UnstableError : public Error {
 public:
  UnstableError(const std::string& what, double abscissa)
      : Error(ErrorCode::Unstable, what), abscissa_(abscissa) {}
  double spectral_abscissa() const noexcept { return abscissa_; }

 private:
  double abscissa_;
};

}  // namespace levent
