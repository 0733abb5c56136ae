#pragma once

#include <stdexcept>
#include <string>

namespace onecut {

/// Base of every error raised by the library.  `kind()` names the failure
/// class so callers (CLI, bindings) can map it without RTTI games.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define ONECUT_DEFINE_ERROR(Name)                                      \
  class Name : public Error {                                          \
   public:                                                             \
    explicit Name(const std::string& what) : Error(#Name, what) {}     \
  };

ONECUT_DEFINE_ERROR(ArgumentError)
ONECUT_DEFINE_ERROR(DomainError)
ONECUT_DEFINE_ERROR(ConvergenceError)
ONECUT_DEFINE_ERROR(NotOneCutError)
ONECUT_DEFINE_ERROR(QuadratureError)
ONECUT_DEFINE_ERROR(SeriesError)
ONECUT_DEFINE_ERROR(CancellationError)
ONECUT_DEFINE_ERROR(PrecisionError)
ONECUT_DEFINE_ERROR(IllConditionedError)
ONECUT_DEFINE_ERROR(ConfigError)

#undef ONECUT_DEFINE_ERROR

}  // namespace onecut
