#pragma once

#include <filesystem>
#include <string>

#include "cargoload/model.hpp"
#include "json.hpp"

namespace cargoload {

// Instance file layout:
//   { "containers": [{"id", "weight", "ctype": 1|2|3}],
//     "slots": [{"index", "distance"}],
//     "w_max", "r_min", "r_max",
//     "shear": [[distance, limit], ...] }
nlohmann::json instance_to_json(const ProblemInstance& inst);
ProblemInstance instance_from_json(const nlohmann::json& doc);

ProblemInstance load_instance(const std::filesystem::path& path);
void save_instance(const std::filesystem::path& path, const ProblemInstance& inst);

nlohmann::json read_json_file(const std::filesystem::path& path);
// Writes via a temporary sibling and rename so a failed write never leaves a
// truncated artifact behind.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace cargoload
