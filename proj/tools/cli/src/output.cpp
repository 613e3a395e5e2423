#include "brownq/cli/output.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace brownq::cli {

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvBuilder::CsvBuilder(std::initializer_list<std::string_view> header) : columns_(header.size()) {
  bool first = true;
  for (auto h : header) {
    if (!first) text_ += ',';
    text_ += h;
    first = false;
  }
  text_ += '\n';
}

CsvBuilder& CsvBuilder::row(std::initializer_list<std::string> fields) {
  if (fields.size() != columns_) throw std::logic_error("CsvBuilder: wrong number of fields");
  bool first = true;
  for (const auto& f : fields) {
    if (!first) text_ += ',';
    text_ += f;
    first = false;
  }
  text_ += '\n';
  return *this;
}

CsvBuilder& CsvBuilder::path_rows(std::size_t replicate, const Path& path) {
  const std::string rep = std::to_string(replicate);
  for (std::size_t i = 0; i < path.size(); ++i)
    row({rep, format_real(path.grid().time(i)), format_real(path[i])});
  return *this;
}

nlohmann::ordered_json to_json(const TestReport& r) {
  nlohmann::ordered_json j;
  j["name"] = r.name;
  j["statistic"] = r.statistic;
  j["threshold"] = r.threshold;
  j["p_value"] = r.p_value ? nlohmann::ordered_json(*r.p_value) : nlohmann::ordered_json(nullptr);
  j["sample_size"] = r.sample_size;
  j["pass"] = r.pass;
  j["notes"] = r.notes;
  return j;
}

CsvTable parse_csv(std::string_view text) {
  CsvTable table;
  bool header = true;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    const std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    std::vector<std::string> cells;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == ',') {
        cells.emplace_back(line.substr(start, i - start));
        start = i + 1;
      }
    }
    if (header) {
      table.header = std::move(cells);
      header = false;
    } else {
      table.rows.push_back(std::move(cells));
    }
  }
  return table;
}

void write_file(const std::filesystem::path& file, std::string_view content) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + file.string() + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("write to '" + file.string() + "' failed");
}

}  // namespace brownq::cli
