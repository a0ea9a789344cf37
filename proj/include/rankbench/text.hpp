#pragma once
// Locale-independent number formatting and small string helpers.
// All output paths (CSV, SVG, JSON) go through these so identical inputs
// produce byte-identical files.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>
#include <string_view>

namespace rankbench {

// Shortest decimal string that round-trips the double exactly.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// General format with a fixed number of significant digits (plot coordinates).
inline std::string format_double(double v, int significant_digits) {
  if (std::isnan(v)) return "nan";
  if (v == 0.0) return "0";  // avoid "-0"
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v,
                           std::chars_format::general, significant_digits);
  return std::string(buf, res.ptr);
}

inline std::string format_int(long long v) { return std::to_string(v); }

inline std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

// Filesystem-safe identifier for figure/data file names.
inline std::string sanitize_id(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '-' || c == '_';
    out += ok ? c : '_';
  }
  if (out.empty()) out = "_";
  return out;
}

}  // namespace rankbench
