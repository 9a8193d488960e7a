#pragma once

#include <stdexcept>
#include <string>

namespace r0 {

// Error families. Each maps onto one C API status code and one CLI exit
// code, so a failure surfaces with the same class everywhere. Plain
// std::invalid_argument is used for caller bugs (shape mismatches etc.).

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TrainingDiverged : std::runtime_error {
  int iteration;
  TrainingDiverged(int iter, const std::string& msg)
      : std::runtime_error("diverged at iteration " + std::to_string(iter) +
                           ": " + msg),
        iteration(iter) {}
};

}  // namespace r0
