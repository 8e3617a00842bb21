#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "helastic/flow.hpp"
#include "helastic/shapes.hpp"

namespace helastic {

/// Parses the TOML subset used by run files: [table] headers, key = value with
/// numbers, booleans, basic strings and (nested) arrays, and # comments.
/// Throws ContractError with a line number on anything else.
nlohmann::json parse_toml_subset(std::string_view text);

/// Reads a .toml or .json run file into a JSON object.
nlohmann::json load_config_file(const std::filesystem::path& path);

/// Everything needed to reproduce one flow run.
struct RunConfig {
  FlowConfig flow;
  CurveDescriptor curve;
  std::uint64_t seed = 0;
};

/// Applies the "flow", "curve" and "seed" entries of j on top of base. Other
/// top-level keys (as found in run manifests) are ignored.
RunConfig run_config_from_json(const nlohmann::json& j, RunConfig base = {});
nlohmann::json to_json(const RunConfig& c);

/// Version string of the tool and the build it came from.
std::string_view tool_version();
std::string_view build_info();

}  // namespace helastic
