#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "torusgaps/core/form.hpp"

namespace torusgaps {

/// RFC 4180 CSV: CRLF line ends, fields quoted when they contain a comma,
/// quote, CR or LF, with embedded quotes doubled.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : columns_(header.size()) { add_row(std::move(header)); }

  static std::string quote(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
      if (c == '"') out += '"';
      out += c;
    }
    out += '"';
    return out;
  }

  void add_row(const std::vector<std::string>& fields) {
    if (fields.size() != columns_) throw Error(Errc::InvalidArgument, "CSV row width does not match header");
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i > 0) text_ += ',';
      text_ += quote(fields[i]);
    }
    text_ += "\r\n";
    ++rows_;
  }

  const std::string& text() const noexcept { return text_; }
  std::size_t data_rows() const noexcept { return rows_ - 1; }

 private:
  std::size_t columns_;
  std::size_t rows_ = 0;
  std::string text_;
};

inline std::string csv_num(double x) { return format_double(x); }
inline std::string csv_num(std::uint64_t x) { return std::to_string(x); }
inline std::string csv_num(std::int64_t x) { return std::to_string(x); }
inline std::string csv_bool(bool b) { return b ? "true" : "false"; }

}  // namespace torusgaps
