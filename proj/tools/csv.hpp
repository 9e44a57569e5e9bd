#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

namespace rdpso_cli {

// Shortest text that reads back to the same double ("inf", "nan" included).
std::string format_number(double value);

inline constexpr std::string_view kRawHeader = "algorithm,problem,run,seed,final_best,wall_ms";

struct RawRow {
  std::string algorithm;
  std::string problem;
  std::size_t run = 0;
  std::uint64_t seed = 0;
  double final_best = 0.0;
  double wall_ms = 0.0;
};

class CsvWriter {
 public:
  // Creates parent directories; throws std::runtime_error if the file
  // cannot be opened.
  CsvWriter(const std::filesystem::path& path, std::string_view header);

  CsvWriter& field(std::string_view text);
  CsvWriter& field(double value);
  CsvWriter& field(std::uint64_t value);
  void end_row();
  // Flushes and reports write failures.
  void close();

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  bool row_started_ = false;
};

void write_raw_row(CsvWriter& out, const RawRow& row);

// Throws std::runtime_error naming the file and line on malformed input.
std::vector<RawRow> read_raw_csv(const std::filesystem::path& path);

// Labels end up unquoted in CSV cells.
void require_plain_label(std::string_view label);

}  // namespace rdpso_cli
