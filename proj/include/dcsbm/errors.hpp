#pragma once

#include <stdexcept>
#include <string>

namespace dcsbm {

// Error category drives the CLI exit code and the "error: <category>: ..." prefix.
enum class ErrorCategory { usage, io, format, model, numeric };

inline const char* to_string(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::usage: return "usage";
    case ErrorCategory::io: return "io";
    case ErrorCategory::format: return "format";
    case ErrorCategory::model: return "model";
    case ErrorCategory::numeric: return "numeric";
  }
  return "unknown";
}

class DcsbmError : public std::runtime_error {
 public:
  DcsbmError(ErrorCategory cat, const std::string& msg)
      : std::runtime_error(msg), category_(cat) {}
  ErrorCategory category() const { return category_; }

 private:
  ErrorCategory category_;
};

[[noreturn]] inline void fail(ErrorCategory cat, const std::string& msg) {
  throw DcsbmError(cat, msg);
}

}  // namespace dcsbm
