#pragma once

#include <string>

#include "json.hpp"

#include "extremal/config.hpp"

namespace extremal {

struct CommandResult {
  bool ok = false;
  nlohmann::json report;
  std::string summary;  // human-readable lines for the terminal
};

/// Dispatches on config.operation and writes any configured output files.
CommandResult run_command(const RunConfig& config);

CommandResult cmd_construct(const RunConfig& config);
CommandResult cmd_verify(const RunConfig& config);
CommandResult cmd_geometry(const RunConfig& config);
CommandResult cmd_classify(const RunConfig& config);
CommandResult cmd_extend(const RunConfig& config);
CommandResult cmd_polarity(const RunConfig& config);
CommandResult cmd_local(const RunConfig& config);
CommandResult cmd_suite(const RunConfig& config);

}  // namespace extremal
