#pragma once
// Deterministic CSV/JSON emission: fixed field order, locale-independent
// %.17g doubles, no timestamps. Every file starts with a schema marker.

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace glassey::report {

inline constexpr int kSchema = 1;

// Shortest-roundtrip-safe decimal form of x (17 significant digits).
std::string fmt(double x);

// Writes "# schema=1", then the header row, then the data rows.
void write_csv(const std::filesystem::path& path,
               const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

// Adds "schema": 1 and writes with 2-space indentation and ordered keys.
void write_json(const std::filesystem::path& path, nlohmann::ordered_json j);

std::string render_json(nlohmann::ordered_json j);

// Output directory: --outdir flag beats GLASSEY_OUTDIR beats "./out".
// Created if missing.
std::filesystem::path out_dir(const std::string& cli_override);

}  // namespace glassey::report
