#pragma once

#include <iosfwd>

#include "cli/config.hpp"

namespace sgspec::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// Each command validates the config first and writes under c.out. Human
// readable progress goes to `log`.
int cmd_generate(const ExperimentConfig& c, std::ostream& log);
int cmd_spectrum(const ExperimentConfig& c, std::ostream& log);
int cmd_rde(const ExperimentConfig& c, std::ostream& log);
int cmd_compare(const ExperimentConfig& c, std::ostream& log);
int cmd_localweak(const ExperimentConfig& c, std::ostream& log);

}  // namespace sgspec::cli
