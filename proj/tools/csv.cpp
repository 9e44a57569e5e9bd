#include "csv.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace rdpso_cli {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return {buf.data(), res.ptr};
}

CsvWriter::CsvWriter(const std::filesystem::path& path, std::string_view header) : path_(path) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  out_.open(path, std::ios::binary | std::ios::trunc);
  if (!out_) throw std::runtime_error("cannot write " + path.string());
  out_ << header << '\n';
}

CsvWriter& CsvWriter::field(std::string_view text) {
  if (row_started_) out_ << ',';
  out_ << text;
  row_started_ = true;
  return *this;
}

CsvWriter& CsvWriter::field(double value) { return field(format_number(value)); }

CsvWriter& CsvWriter::field(std::uint64_t value) { return field(std::to_string(value)); }

void CsvWriter::end_row() {
  out_ << '\n';
  row_started_ = false;
}

void CsvWriter::close() {
  out_.flush();
  if (!out_) throw std::runtime_error("error writing " + path_.string());
  out_.close();
}

void write_raw_row(CsvWriter& out, const RawRow& row) {
  out.field(row.algorithm)
      .field(row.problem)
      .field(static_cast<std::uint64_t>(row.run))
      .field(row.seed)
      .field(row.final_best)
      .field(row.wall_ms)
      .end_row();
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_double(const std::string& s, bool& ok) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  ok = !s.empty() && *end == '\0';
  return v;
}

std::uint64_t parse_unsigned(const std::string& s, bool& ok) {
  std::uint64_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  ok = !s.empty() && res.ec == std::errc{} && res.ptr == s.data() + s.size();
  return v;
}

}  // namespace

std::vector<RawRow> read_raw_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::string line;
  auto strip_cr = [&] {
    if (!line.empty() && line.back() == '\r') line.pop_back();
  };
  if (!std::getline(in, line)) throw std::runtime_error(path.string() + ": empty file");
  strip_cr();
  if (line != kRawHeader) {
    throw std::runtime_error(path.string() + ": expected header '" + std::string(kRawHeader) + "'");
  }
  std::vector<RawRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr();
    if (line.empty()) continue;
    const auto cells = split(line);
    auto fail = [&](const std::string& what) {
      return std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": " + what);
    };
    if (cells.size() != 6) throw fail("expected 6 fields");
    bool ok1 = false, ok2 = false, ok3 = false, ok4 = false;
    RawRow row;
    row.algorithm = cells[0];
    row.problem = cells[1];
    row.run = static_cast<std::size_t>(parse_unsigned(cells[2], ok1));
    row.seed = parse_unsigned(cells[3], ok2);
    row.final_best = parse_double(cells[4], ok3);
    row.wall_ms = parse_double(cells[5], ok4);
    if (!(ok1 && ok2 && ok3 && ok4)) throw fail("malformed number");
    if (row.algorithm.empty() || row.problem.empty()) throw fail("empty name");
    rows.push_back(std::move(row));
  }
  return rows;
}

void require_plain_label(std::string_view label) {
  if (label.empty() || label.find_first_of(",\"/\\\r\n") != std::string_view::npos) {
    throw std::runtime_error("label '" + std::string(label) +
                             "' must be non-empty and free of commas, quotes, slashes and newlines");
  }
}

}  // namespace rdpso_cli
