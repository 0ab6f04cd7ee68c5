#pragma once

// Key/value settings for the command-line driver. Values come from an
// optional --config file (key = value lines, # comments; or the echoed
// header of a previous output) and from --key value / --key=value flags,
// which override the file.

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lerch/geometry.hpp"

namespace lerch::cli {

/// Keys that are never echoed into outputs: they do not affect results.
bool is_operational_key(std::string_view key);

class Settings {
 public:
  /// allowed: exact keys, or prefixes ending in '.' for indexed keys (set.1).
  static Settings parse(std::span<const std::string> args, std::span<const std::string_view> allowed);

  bool help() const { return help_; }
  bool has(const std::string& key) const { return raw_.count(key) != 0; }

  // Accessors record the resolved value so it can be echoed.
  std::string text(const std::string& key, const std::string& fallback);
  std::string required(const std::string& key);
  double number(const std::string& key, const std::string& fallback);
  std::int64_t integer(const std::string& key, const std::string& fallback);
  bool boolean(const std::string& key, const std::string& fallback);

  /// Resolved non-operational settings, sorted by key.
  const std::map<std::string, std::string>& effective() const { return effective_; }

 private:
  std::map<std::string, std::string> raw_;
  std::map<std::string, std::string> effective_;
  bool help_ = false;
};

/// Reads settings from a config file. A file starting with '{' is a JSON
/// output whose "config" object is used; a file containing "#@" lines (a CSV
/// header) contributes only those lines.
std::map<std::string, std::string> load_config_file(const std::string& path);

/// Reals: decimal/scientific, "pi", and quotients such as "1/3" or "1/pi".
double parse_number(std::string_view text);
/// "1.5", "-2i", "0.3+0.4i", "1e-3-2e-2i"; pi forms allowed in either part.
std::complex<double> parse_complex(std::string_view text);
/// Items separated by commas and/or whitespace.
std::vector<std::string> split_list(std::string_view text);
std::vector<double> parse_number_list(std::string_view text);
std::vector<std::complex<double>> parse_complex_list(std::string_view text);
/// "disk re im r" or "rect a b c d" for [a, b] x [c, d].
Shape parse_shape(std::string_view text);

/// %.17g formatting (round-trip exact).
std::string format_double(double x);

}  // namespace lerch::cli
