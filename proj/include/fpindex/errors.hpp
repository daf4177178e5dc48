// Structured errors shared by the library and the CLI front end.

#pragma once

#include <stdexcept>
#include <string>

namespace fpindex {

enum class ErrorKind {
  kInput,               // malformed arguments, shape mismatches, bad simplices
  kParse,               // unreadable input files
  kInadmissible,        // fixed points possibly on the boundary
  kAcyclicityFailure,   // a carrier value obstructs a chain-level filling
  kResolutionExhausted  // no polyhedral inner approximation up to the level cap
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message, std::string detail = "")
      : std::runtime_error(std::move(message)), kind_(kind), detail_(std::move(detail)) {}

  ErrorKind kind() const { return kind_; }
  const std::string& detail() const { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;  // machine-readable payload (JSON text), may be empty
};

[[noreturn]] inline void throw_input(const std::string& msg, const std::string& detail = "") {
  throw Error(ErrorKind::kInput, msg, detail);
}

[[noreturn]] inline void throw_parse(const std::string& msg, const std::string& detail = "") {
  throw Error(ErrorKind::kParse, msg, detail);
}

}  // namespace fpindex
