#pragma once

#include <stdexcept>
#include <string>

namespace refgen {

enum class ErrorCode {
  invalid_value,
  invalid_reference,
  invalid_specialization,
  domain_error,
  precondition,
  syntax,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace refgen
