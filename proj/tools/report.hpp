#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"

namespace sumprod::cli {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1.0.0";

enum class OutputMode { json, table };

/// Exit codes shared by every subcommand.
enum ExitCode : int { kOk = 0, kNegative = 1, kError = 2 };

/// The common envelope: schema version, command, config, descriptor, status
/// and the command-specific result.
json envelope(const std::string& command, const json& config, const std::string& descriptor_key,
              const std::string& descriptor, const std::string& status, json result);

/// Pretty JSON (two-space indent) or an aligned human-readable table.
void emit(std::ostream& out, const json& report, OutputMode mode);

/// Aligned rendering: scalars as "key  value", arrays of flat objects as
/// column tables, nested objects as indented sections.
std::string render_table(const json& report);

}  // namespace sumprod::cli
