#pragma once

#include <stdexcept>
#include <string>

namespace sparkproj {

enum class ErrorCode {
  kIo = 1,
  kParse = 2,
  kInvalidArgument = 3,
  kDomain = 4,
  kMissingLabel = 5,
  kBadWeights = 6,
  kBadSpec = 7,
};

// All core errors are thrown as Error; the C API boundary converts them
// into status codes plus a thread-local message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace sparkproj
