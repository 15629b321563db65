#pragma once

#include <stdexcept>
#include <string>

namespace meanlab {

// Error taxonomy shared by the C++ core and the C API status codes.
enum class errc {
  invalid_argument = 1,  // bad construction parameters, failed preconditions
  domain = 2,            // point outside the working interval / function domain
  capability = 3,        // declared smoothness too low for the operation
  singular = 4,          // vanishing Wronskian, singular witness matrix
  numerical = 5,         // bracketing/root-finding failure
  parse = 6,             // malformed job file or expression description
};

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace meanlab
