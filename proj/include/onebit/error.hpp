#pragma once

#include <stdexcept>
#include <string>

namespace onebit {

/// Invalid parameters or configuration. Maps to CLI exit code 1.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A pipeline stage failed at run time. The message carries the stage name.
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::string& what)
      : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}

  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

}  // namespace onebit
