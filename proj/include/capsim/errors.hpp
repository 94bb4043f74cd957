#pragma once

#include <stdexcept>
#include <string>

namespace capsim {

/// Bad user input: malformed config, invalid CLI arguments, violated
/// preconditions on externally supplied values. Maps to exit status 1.
class input_error : public std::runtime_error {
 public:
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

/// Domain violation reached at runtime (e.g. underutilised persons exceeding
/// the labour force). Maps to exit status 2.
class model_error : public std::runtime_error {
 public:
  explicit model_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace capsim
