#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace normgraph {

struct CliConfig {
  std::optional<std::filesystem::path> log_path;
  std::string output_format = "flat";
  std::string default_language = "pt";
};

// Reads NORMGRAPH_LOG and NORMGRAPH_LANG.
CliConfig config_from_environment();

// `args` excludes the program name. Returns the process exit code:
// 0 success, 1 domain error, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            const CliConfig& defaults = config_from_environment());

}  // namespace normgraph
