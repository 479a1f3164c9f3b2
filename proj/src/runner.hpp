#pragma once

#include <optional>
#include <string>

#include "json_io.hpp"

namespace expcrit {

struct RunOutput {
  Json report;
  std::optional<std::string> csv;
};

// Orchestrates one subcommand over a validated config.  Throws
// std::invalid_argument for config/validation errors (exit 2) and
// NumericError when the numerics give up on a verdict (exit 3).
RunOutput run_subcommand(const std::string& name, const Json& config);

}  // namespace expcrit
