#include "cmaj/error.hpp"

namespace cmaj {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidModel: return "InvalidModel";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::CapacityExceeded: return "CapacityExceeded";
    case ErrorCode::EmptyWalk: return "EmptyWalk";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::InexactArithmetic: return "InexactArithmetic";
    case ErrorCode::UseLatticeModule: return "UseLatticeModule";
    case ErrorCode::NoMass: return "NoMass";
    case ErrorCode::SamplingFailed: return "SamplingFailed";
    case ErrorCode::NotInSupport: return "NotInSupport";
    case ErrorCode::InvalidTest: return "InvalidTest";
    case ErrorCode::Unsupported: return "Unsupported";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace cmaj
