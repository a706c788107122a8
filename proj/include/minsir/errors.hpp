#pragma once

#include <stdexcept>
#include <string>

namespace minsir {

// Base for all library failures. name() returns the stable error class
// identifier that the CLI prints before exiting with code 3.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
  virtual const char* name() const noexcept = 0;
};

#define MINSIR_DEFINE_ERROR(ClassName)                                  \
  class ClassName final : public Error {                                \
  public:                                                               \
    explicit ClassName(const std::string& msg) : Error(msg) {}          \
    const char* name() const noexcept override { return #ClassName; }   \
  }

MINSIR_DEFINE_ERROR(InvalidParam);
MINSIR_DEFINE_ERROR(NonConvergent);
MINSIR_DEFINE_ERROR(OutOfConvergenceRegion);
MINSIR_DEFINE_ERROR(DimensionTooLarge);
MINSIR_DEFINE_ERROR(BracketFailure);
MINSIR_DEFINE_ERROR(QuadratureFailure);

#undef MINSIR_DEFINE_ERROR

}  // namespace minsir
