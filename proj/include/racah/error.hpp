#pragma once

#include <stdexcept>
#include <string>

namespace racah {

// Bad arguments: triangle violations, |m| > j, malformed files, ...
struct InvalidInput : std::invalid_argument {
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

// Well-formed requests outside what the library handles.
struct Unsupported : std::runtime_error {
  explicit Unsupported(const std::string& what) : std::runtime_error(what) {}
};

// A self-check failed; indicates a bug rather than bad input.
struct InternalError : std::logic_error {
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace racah
