#pragma once

#include <filesystem>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "brownq/path.hpp"
#include "brownq/stats.hpp"
#include "json.hpp"

namespace brownq::cli {

/// %.17g: parses back to the identical double.
std::string format_real(double v);

/// LF-terminated CSV with a mandatory header row.
class CsvBuilder {
 public:
  explicit CsvBuilder(std::initializer_list<std::string_view> header);

  CsvBuilder& row(std::initializer_list<std::string> fields);
  /// Appends `replicate,t,value` rows for every grid point of `path`.
  CsvBuilder& path_rows(std::size_t replicate, const Path& path);

  const std::string& str() const noexcept { return text_; }

 private:
  std::size_t columns_;
  std::string text_;
};

struct OutputFile {
  std::string name;
  std::string content;
};

nlohmann::ordered_json to_json(const TestReport& report);

/// Parses a CSV produced by CsvBuilder into header + string cells.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};
CsvTable parse_csv(std::string_view text);

void write_file(const std::filesystem::path& file, std::string_view content);

}  // namespace brownq::cli
