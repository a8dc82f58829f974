#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cmaj {

enum class ErrorCode {
  InvalidModel,
  InvalidInput,
  InvalidParameter,
  CapacityExceeded,
  EmptyWalk,
  DegenerateInput,
  InexactArithmetic,
  UseLatticeModule,
  NoMass,
  SamplingFailed,
  NotInSupport,
  InvalidTest,
  Unsupported,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above, so
// callers (and the CLI) can branch on the kind without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

}  // namespace cmaj
