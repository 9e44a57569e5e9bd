#pragma once

#include <stdexcept>
#include <string>

namespace rdpso {

enum class ErrorKind {
  input,          // contract violation by the caller
  dimension,      // vector/matrix size does not match the problem
  parse,          // malformed data or configuration file
  orthogonality,  // rotation matrix fails the orthogonality check
  numeric,        // non-finite value where a finite one is required
  domain,         // argument outside the mathematical domain of a formula
  accuracy,       // numerical routine missed its requested accuracy
  unknown_name,   // algorithm or problem name not registered
  io,             // file system failure
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Routes library warnings (parameters outside the stability region, quadrature
// fallbacks). Defaults to stderr.
using WarningHandler = void (*)(const char* message);
void set_warning_handler(WarningHandler handler);
void warn(const std::string& message);

}  // namespace rdpso
