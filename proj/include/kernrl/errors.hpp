#pragma once

#include <stdexcept>
#include <string>

namespace kernrl {

/// Malformed arguments handed to an operation (dimension mismatch, out-of-order records, ...).
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

/// A configuration that cannot be honoured (bad kernel parameters, unsupported combinations).
class InvalidConfig : public std::invalid_argument {
 public:
  explicit InvalidConfig(const std::string& what) : std::invalid_argument(what) {}
};

/// The operation exists but the target object does not support it.
class UnsupportedOperation : public std::logic_error {
 public:
  explicit UnsupportedOperation(const std::string& what) : std::logic_error(what) {}
};

}  // namespace kernrl
