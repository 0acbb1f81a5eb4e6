#include "glassey/report.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace glassey::report {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_csv(const std::filesystem::path& path,
               const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path.string());
  os << "# schema=" << kSchema << "\n";
  for (size_t i = 0; i < header.size(); ++i)
    os << header[i] << (i + 1 < header.size() ? "," : "\n");
  for (const auto& row : rows) {
    if (row.size() != header.size())
      throw std::invalid_argument("csv row width mismatch in " + path.string());
    for (size_t i = 0; i < row.size(); ++i)
      os << row[i] << (i + 1 < row.size() ? "," : "\n");
  }
  if (!os) throw std::runtime_error("write failed: " + path.string());
}

std::string render_json(nlohmann::ordered_json j) {
  nlohmann::ordered_json out;
  out["schema"] = kSchema;
  for (auto& [k, v] : j.items()) out[k] = std::move(v);
  return out.dump(2) + "\n";
}

void write_json(const std::filesystem::path& path, nlohmann::ordered_json j) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path.string());
  os << render_json(std::move(j));
  if (!os) throw std::runtime_error("write failed: " + path.string());
}

std::filesystem::path out_dir(const std::string& cli_override) {
  std::filesystem::path dir;
  if (!cli_override.empty()) {
    dir = cli_override;
  } else if (const char* env = std::getenv("GLASSEY_OUTDIR"); env && *env) {
    dir = env;
  } else {
    dir = "out";
  }
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace glassey::report
