#pragma once

#include <filesystem>
#include <optional>
#include <ostream>

#include "brandgraph/error.hpp"
#include "brandgraph/report.hpp"
#include "brandgraph/synth.hpp"

namespace brandgraph {

// Process exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitData = 1;
inline constexpr int kExitIo = 2;
inline constexpr int kExitUsage = 64;

int exit_code_for(const Error& e);

struct RunConfig {
  AnalysisConfig analysis;
  /// Optional extra graph exports written by analyze.
  std::optional<std::filesystem::path> graphml_path;
  std::optional<std::filesystem::path> edge_list_path;
};

/// Merges settings from a JSON config file into `config`. Flags parsed
/// afterwards override these values.
void apply_config_file(const std::filesystem::path& path, RunConfig& config);

int cmd_validate(const std::filesystem::path& dataset_dir, std::ostream& out,
                 std::ostream& err);

int cmd_analyze(const std::filesystem::path& dataset_dir,
                const std::filesystem::path& out_dir, const RunConfig& config,
                std::ostream& err);

int cmd_compare(const std::filesystem::path& dataset_a,
                const std::filesystem::path& dataset_b,
                const std::filesystem::path& out_dir, const RunConfig& config,
                std::ostream& err);

int cmd_layout(const std::filesystem::path& dataset_dir,
               const std::filesystem::path& out_svg, const RunConfig& config,
               std::ostream& err);

int cmd_synth(const PlantedSpec& spec, const std::filesystem::path& out_dir,
              std::ostream& err);

}  // namespace brandgraph
