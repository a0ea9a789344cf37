#pragma once
// RFC-4180-style CSV reading and writing: quoted fields, "" escapes,
// LF or CRLF line endings.

#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "rankbench/error.hpp"

namespace rankbench::csv {

// Parses the whole stream into rows of fields. A trailing newline does not
// produce an empty row.
inline std::vector<std::vector<std::string>> parse(std::istream& in) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  bool row_started = false;

  auto end_field = [&] {
    row.push_back(field);
    field.clear();
    field_started = false;
  };
  auto end_row = [&] {
    end_field();
    rows.push_back(std::move(row));
    row.clear();
    row_started = false;
  };

  char c;
  while (in.get(c)) {
    if (in_quotes) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          field += '"';
        } else {
          in_quotes = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        if (field_started && !field.empty())
          fail(ErrorCode::MalformedCsv, "quote inside unquoted field");
        in_quotes = true;
        field_started = true;
        row_started = true;
        break;
      case ',':
        end_field();
        row_started = true;
        break;
      case '\r':
        break;
      case '\n':
        end_row();
        break;
      default:
        field += c;
        field_started = true;
        row_started = true;
        break;
    }
  }
  if (in_quotes) fail(ErrorCode::MalformedCsv, "unterminated quoted field");
  if (row_started || field_started || !row.empty()) end_row();
  return rows;
}

inline std::string escape_field(const std::string& s) {
  bool needs_quotes = false;
  for (char c : s) {
    if (c == ',' || c == '"' || c == '\n' || c == '\r') {
      needs_quotes = true;
      break;
    }
  }
  if (!needs_quotes) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

inline void write_row(std::ostream& out, std::span<const std::string> fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << escape_field(fields[i]);
  }
  out << '\n';
}

}  // namespace rankbench::csv
