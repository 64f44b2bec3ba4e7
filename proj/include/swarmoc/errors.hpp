#pragma once

#include <stdexcept>
#include <string>

namespace swarmoc {

/// Invalid configuration or parameter set; maps to CLI exit code 1.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Forward or backward solve left the admissible region (state norm outside
/// [1/2, 3/2] or a non-finite entry); maps to CLI exit code 2.
class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, int step)
      : std::runtime_error(what + " (step " + std::to_string(step) + ")"), step_(step) {}

  int step() const { return step_; }

 private:
  int step_;
};

}  // namespace swarmoc
