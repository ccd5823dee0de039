#pragma once

#include <stdexcept>
#include <string>

namespace qwlab {

enum class ErrorCode {
  InvalidArgument = 1,
  NotOnEllipse = 2,
  Degenerate = 3,
  Numeric = 4,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qwlab
