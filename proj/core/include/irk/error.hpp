#pragma once

#include <stdexcept>
#include <string>

namespace irk {

enum class ErrorCode {
  usage,            // bad arguments / malformed input
  precondition,     // operation preconditions violated
  infeasible,       // exact computation not representable / empty range
  cap_exceeded,     // degree/order/enumeration caps
  budget_exhausted, // search budget ran out
  falsification,    // a paper claim failed on a concrete instance
  internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::usage: return "usage";
    case ErrorCode::precondition: return "precondition";
    case ErrorCode::infeasible: return "infeasible";
    case ErrorCode::cap_exceeded: return "cap_exceeded";
    case ErrorCode::budget_exhausted: return "budget_exhausted";
    case ErrorCode::falsification: return "falsification";
    case ErrorCode::internal: return "internal";
  }
  return "unknown";
}

}  // namespace irk
