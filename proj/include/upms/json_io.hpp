#pragma once

// Canonical JSON interchange for instances and schedules.

#include <filesystem>
#include <string>

#include "json.hpp"
#include "upms/core.hpp"
#include "upms/validator.hpp"

namespace upms {

using Json = nlohmann::json;

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json instance_to_json(const Instance& instance);
/// Throws FormatError on missing or mistyped fields.
Instance instance_from_json(const Json& json);

Json schedule_to_json(const Schedule& schedule);
Schedule schedule_from_json(const Json& json);

/// {"feasible": bool, "violations": [{"code", "entities", "slack", "detail"}]}
Json violation_report_to_json(const ViolationReport& report);

/// Reads and parses a JSON file; FormatError names the file on failure.
Json read_json_file(const std::filesystem::path& path);
/// Writes `json` pretty-printed with a trailing newline.
void write_json_file(const std::filesystem::path& path, const Json& json);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path,
                     const std::string& text);

}  // namespace upms
