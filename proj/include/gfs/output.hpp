#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace gfs {

/// Scientific notation with 17 significant digits ("%.16e").
std::string format_real(double x);

struct CsvTable {
  std::vector<std::string> comments;  // written as "# <text>" before the header
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

/// Comma separated, LF line endings, no trailing spaces.
std::string render_csv(const CsvTable& table);
void write_text(const std::filesystem::path& path, const std::string& text);
void write_csv(const std::filesystem::path& path, const CsvTable& table);

inline const char* kUnitsComment =
    "units: energies in units of the mean coupling, times in inverse energy, "
    "entropies in nats";

}  // namespace gfs
