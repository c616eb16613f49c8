#pragma once

#include <filesystem>

#include "config.hpp"

namespace dqm::cli {

void cmd_evolve(const RunConfig& config, const std::filesystem::path& out_dir);
void cmd_chaos(const RunConfig& config, const std::filesystem::path& out_dir);
void cmd_overlap(const RunConfig& config, const std::filesystem::path& out_dir);
void cmd_entropy(const RunConfig& config, const std::filesystem::path& out_dir);
void cmd_associate(const RunConfig& config, const std::filesystem::path& out_dir);
// Returns true when every formula deviation stays below 1e-8.
bool cmd_oracle_check(const RunConfig& config, const std::filesystem::path& out_dir,
                      int threads);
void cmd_oscillator(const RunConfig& config, const std::filesystem::path& out_dir);

}  // namespace dqm::cli
