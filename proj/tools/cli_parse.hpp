#ifndef OUL_TOOLS_CLI_PARSE_HPP
#define OUL_TOOLS_CLI_PARSE_HPP

// Argument parsing for the oul command line tool. Every parser throws
// std::invalid_argument with a message naming the offending input.

#include <cctype>
#include <charconv>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "oul/oul.hpp"

namespace oul::cli {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

inline double parse_real(const std::string& text) {
  const std::string s = trim(text);
  double v = 0.0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (s.empty() || ec != std::errc() || ptr != end || !std::isfinite(v))
    throw std::invalid_argument("not a finite number: '" + text + "'");
  return v;
}

inline std::size_t parse_count(const std::string& text) {
  const std::string s = trim(text);
  std::size_t v = 0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (s.empty() || ec != std::errc() || ptr != end) throw std::invalid_argument("not a count: '" + text + "'");
  return v;
}

/// "inf", "infinity" or a number >= 1.
inline LpExponent parse_exponent(const std::string& text) {
  std::string s = trim(text);
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (s == "inf" || s == "infinity") return LpExponent::infinity();
  const double p = parse_real(s);
  if (p < 1.0) throw std::invalid_argument("exponent must be >= 1 or inf: '" + text + "'");
  return LpExponent::finite(p);
}

/// Comma list of exponents for a sweep; an empty string is an empty grid.
inline std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  if (trim(text).empty()) return out;
  for (const auto& item : split(text, ',')) {
    const LpExponent p = parse_exponent(item);
    if (p.is_infinite() || !(p.value() > 1.0))
      throw std::invalid_argument("sweep exponents must lie strictly between 1 and inf: '" + item + "'");
    out.push_back(p.value());
  }
  return out;
}

/// Comma-separated decimals, e<k> (1-based coordinate vector) or sign:+-+...
inline VectorN parse_vector(const std::string& text, std::size_t dim) {
  const std::string s = trim(text);
  if (s.size() >= 2 && s[0] == 'e' && std::isdigit(static_cast<unsigned char>(s[1]))) {
    const std::size_t k = parse_count(s.substr(1));
    if (k == 0 || k > dim) throw std::invalid_argument("coordinate index out of range: '" + text + "'");
    return VectorN::basis(dim, k - 1);
  }
  if (s.rfind("sign:", 0) == 0) {
    const std::string pat = s.substr(5);
    if (pat.size() != dim) throw std::invalid_argument("sign pattern length does not match --dim: '" + text + "'");
    std::vector<double> v;
    for (char c : pat) {
      if (c != '+' && c != '-') throw std::invalid_argument("sign pattern may only contain + and -: '" + text + "'");
      v.push_back(c == '+' ? 1.0 : -1.0);
    }
    return VectorN(std::move(v));
  }
  std::vector<double> v;
  for (const auto& item : split(s, ',')) v.push_back(parse_real(item));
  if (v.size() != dim)
    throw std::invalid_argument("vector has " + std::to_string(v.size()) + " entries, expected " + std::to_string(dim));
  return VectorN(std::move(v));
}

/// Order unit space family: r1, linf:n, l1ice:n[:k] (k 1-based, default 1).
inline OusPtr parse_v_family(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts[0] == "r1" && parts.size() == 1) return real_line();
  if (parts[0] == "linf" && parts.size() == 2) return linf_natural(parse_count(parts[1]));
  if (parts[0] == "l1ice" && (parts.size() == 2 || parts.size() == 3)) {
    const std::size_t n = parse_count(parts[1]);
    const std::size_t k = parts.size() == 3 ? parse_count(parts[2]) : 1;
    if (k == 0) throw std::invalid_argument("l1ice index is 1-based: '" + text + "'");
    return l1_ice(n, k - 1);
  }
  throw std::invalid_argument("unsupported V family: '" + text + "' (expected r1, linf:n or l1ice:n[:k])");
}

/// Normed space family: r, l1:m, l2:m, linf:m, lp:p:m.
inline SpaceDesc parse_x_family(const std::string& text) {
  const auto parts = split(text, ':');
  std::optional<SpaceDesc> out;
  if (parts[0] == "r" && parts.size() == 1) out = SpaceDesc::l1(1);
  if (parts.size() == 2) {
    const std::size_t m = parse_count(parts[1]);
    if (parts[0] == "l1") out = SpaceDesc::l1(m);
    if (parts[0] == "l2") out = SpaceDesc::l2(m);
    if (parts[0] == "linf") out = SpaceDesc::linf(m);
  }
  if (parts[0] == "lp" && parts.size() == 3) out = SpaceDesc::lp(parse_count(parts[2]), parse_exponent(parts[1]));
  if (!out) throw std::invalid_argument("unsupported X family: '" + text + "' (expected r, l1:m, l2:m, linf:m or lp:p:m)");
  if (out->dim() == 0) throw std::invalid_argument("X must have positive dimension: '" + text + "'");
  return *out;
}

/// One RFC-4180 field.
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string csv_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += csv_field(fields[i]);
  }
  return out + "\r\n";
}

/// Vector as a single CSV cell, entries separated by spaces.
inline std::string csv_vector(const VectorN& v) {
  std::string out;
  for (std::size_t i = 0; i < v.dim(); ++i) {
    if (i) out += ' ';
    out += format_real(v[i]);
  }
  return out;
}

}  // namespace oul::cli

#endif  // OUL_TOOLS_CLI_PARSE_HPP
