#pragma once

#include <stdexcept>
#include <string>

namespace srle {

enum class ErrorKind {
  InvalidArgument,  // precondition violated by the caller
  Overflow,         // value does not fit the configured representation
  Truncated,        // bitstream or file ended early
  Corrupt,          // structurally invalid container or input
  Parse,            // malformed textual input (CSV)
  Io,               // filesystem failure
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace srle
