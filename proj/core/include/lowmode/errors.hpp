#pragma once

#include <stdexcept>
#include <string>

namespace lowmode {

// Base class for every error raised by the library. Each condition gets its
// own type so callers and the CLI can map failures to exit codes by name.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define LOWMODE_ERROR_TYPE(Name)                                  \
  class Name : public Error {                                     \
   public:                                                        \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
  }

LOWMODE_ERROR_TYPE(NegativeFrequencyError);
LOWMODE_ERROR_TYPE(NotDecomposableError);
LOWMODE_ERROR_TYPE(DivisionByZeroError);
LOWMODE_ERROR_TYPE(NotInSpanError);
LOWMODE_ERROR_TYPE(SaturationPreconditionError);
LOWMODE_ERROR_TYPE(BlowUpError);
LOWMODE_ERROR_TYPE(CflViolationError);
LOWMODE_ERROR_TYPE(NonZeroMeanError);
LOWMODE_ERROR_TYPE(NonPositivePhiError);
LOWMODE_ERROR_TYPE(IntervalOutOfWindowError);
LOWMODE_ERROR_TYPE(QuantizationTooCoarseError);
LOWMODE_ERROR_TYPE(RampTooWideError);
LOWMODE_ERROR_TYPE(WindowTooSmallError);
LOWMODE_ERROR_TYPE(WindowMismatchError);
LOWMODE_ERROR_TYPE(ConfigParseError);
LOWMODE_ERROR_TYPE(StageFailureError);
LOWMODE_ERROR_TYPE(IoError);

#undef LOWMODE_ERROR_TYPE

}  // namespace lowmode
