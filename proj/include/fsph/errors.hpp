#pragma once

#include <stdexcept>
#include <string>

namespace fsph {

// Error taxonomy used across the library. The CLI maps config_error to
// exit code 2 and verification failures to exit code 1.

struct dimension_error : std::runtime_error {
  explicit dimension_error(const std::string& what) : std::runtime_error(what) {}
};

struct precondition_error : std::runtime_error {
  explicit precondition_error(const std::string& what) : std::runtime_error(what) {}
};

struct singularity_error : std::runtime_error {
  explicit singularity_error(const std::string& what) : std::runtime_error(what) {}
};

struct no_path_error : std::runtime_error {
  explicit no_path_error(const std::string& what) : std::runtime_error(what) {}
};

struct config_error : std::runtime_error {
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fsph
