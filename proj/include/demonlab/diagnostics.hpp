#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace demonlab {

// Raised for inputs that violate a documented precondition.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when a computation cannot proceed (path explosion, non-convergence,
// degenerate estimator, counter overflow).
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using WarningSink = std::function<void(std::string_view)>;

// Non-fatal diagnostics (e.g. nbar outside the low-photon regime) go through
// a process-wide sink. The default sink writes to std::clog. Returns the
// previous sink so tests can restore it.
WarningSink set_warning_sink(WarningSink sink);
void warn(std::string_view message);

}  // namespace demonlab
