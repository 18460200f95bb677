#pragma once

#include <stdexcept>
#include <string>

namespace mambo {

// Maps to process exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Contract violations and degenerate inputs. Maps to exit code 3.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Non-finite values detected mid-computation. Maps to exit code 4.
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& msg, long step) : std::runtime_error(msg), step_(step) {}
  long step() const { return step_; }

 private:
  long step_;
};

}  // namespace mambo
