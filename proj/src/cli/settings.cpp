#include "lerch/cli/settings.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "lerch/error.hpp"

namespace lerch::cli {
namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

bool key_allowed(const std::string& key, std::span<const std::string_view> allowed) {
  for (const auto a : allowed) {
    if (!a.empty() && a.back() == '.') {
      if (key.size() > a.size() && key.compare(0, a.size(), a) == 0) {
        const std::string idx = key.substr(a.size());
        if (std::all_of(idx.begin(), idx.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) &&
            idx != "0" && idx.front() != '0') {
          return true;
        }
      }
    } else if (key == a) {
      return true;
    }
  }
  return false;
}

double parse_atom(std::string_view s) {
  const std::string t = trim(s);
  if (t == "pi") return std::numbers::pi;
  if (t == "-pi") return -std::numbers::pi;
  double v = 0.0;
  const char* end = t.data() + t.size();
  const auto [ptr, ec] = std::from_chars(t.data(), end, v);
  if (t.empty() || ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw InvalidArgument("not a number: '" + t + "'");
  }
  return v;
}

void parse_line(const std::string& line, std::map<std::string, std::string>& out) {
  const std::string t = trim(line);
  if (t.empty()) return;
  const auto eq = t.find('=');
  if (eq == std::string::npos) throw InvalidArgument("config line lacks '=': '" + t + "'");
  const std::string key = trim(t.substr(0, eq));
  if (key.empty()) throw InvalidArgument("config line lacks a key: '" + t + "'");
  out[key] = trim(t.substr(eq + 1));
}

}  // namespace

bool is_operational_key(std::string_view key) {
  return key == "output" || key == "trace" || key == "threads" || key == "config";
}

std::map<std::string, std::string> load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string content = buf.str();
  std::map<std::string, std::string> out;
  const std::string head = trim(content.substr(0, std::min<std::size_t>(content.size(), 64)));
  if (!head.empty() && head.front() == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(content);
    } catch (const nlohmann::json::exception& e) {
      throw InvalidArgument("config file '" + path + "' is not valid JSON: " + e.what());
    }
    if (!j.contains("config") || !j["config"].is_object()) {
      throw InvalidArgument("JSON config file lacks a \"config\" object");
    }
    for (const auto& [k, v] : j["config"].items()) {
      out[k] = v.is_string() ? v.get<std::string>() : v.dump();
    }
    return out;
  }
  std::vector<std::string> lines;
  std::istringstream ls(content);
  for (std::string line; std::getline(ls, line);) lines.push_back(line);
  const bool header_only = std::any_of(lines.begin(), lines.end(),
                                       [](const std::string& l) { return l.rfind("#@", 0) == 0; });
  for (const auto& line : lines) {
    if (header_only) {
      if (line.rfind("#@", 0) == 0) parse_line(line.substr(2), out);
      continue;
    }
    parse_line(line.substr(0, line.find('#')), out);
  }
  return out;
}

Settings Settings::parse(std::span<const std::string> args, std::span<const std::string_view> allowed) {
  Settings s;
  std::map<std::string, std::string> flags;
  std::string config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a == "--help" || a == "-h") {
      s.help_ = true;
      continue;
    }
    if (a.rfind("--", 0) != 0 || a.size() == 2) throw InvalidArgument("unexpected argument '" + a + "'");
    std::string key = a.substr(2), value;
    if (const auto eq = key.find('='); eq != std::string::npos) {
      value = key.substr(eq + 1);
      key = key.substr(0, eq);
    } else if (i + 1 < args.size() && args[i + 1].rfind("--", 0) != 0) {
      value = args[++i];
    } else {
      value = "true";
    }
    if (key == "config") {
      config_path = value;
      continue;
    }
    if (!key_allowed(key, allowed)) throw InvalidArgument("unknown option '--" + key + "'");
    flags[key] = value;
  }
  if (s.help_) return s;
  if (!config_path.empty()) {
    for (auto& [k, v] : load_config_file(config_path)) {
      if (!key_allowed(k, allowed)) throw InvalidArgument("unknown config key '" + k + "'");
      s.raw_[k] = v;
    }
  }
  for (auto& [k, v] : flags) s.raw_[k] = v;
  return s;
}

std::string Settings::text(const std::string& key, const std::string& fallback) {
  const auto it = raw_.find(key);
  const std::string v = it == raw_.end() ? fallback : it->second;
  if (!is_operational_key(key)) effective_[key] = v;
  return v;
}

std::string Settings::required(const std::string& key) {
  if (!has(key)) throw InvalidArgument("missing required setting '" + key + "'");
  return text(key, "");
}

double Settings::number(const std::string& key, const std::string& fallback) {
  const std::string v = text(key, fallback);
  try {
    return parse_number(v);
  } catch (const InvalidArgument&) {
    throw InvalidArgument("setting '" + key + "': not a number: '" + v + "'");
  }
}

std::int64_t Settings::integer(const std::string& key, const std::string& fallback) {
  const std::string v = trim(text(key, fallback));
  std::int64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc() || ptr != v.data() + v.size()) {
    throw InvalidArgument("setting '" + key + "': not an integer: '" + v + "'");
  }
  return out;
}

bool Settings::boolean(const std::string& key, const std::string& fallback) {
  const std::string v = trim(text(key, fallback));
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw InvalidArgument("setting '" + key + "': not a boolean: '" + v + "'");
}

double parse_number(std::string_view text) {
  const std::string t = trim(text);
  if (const auto slash = t.find('/'); slash != std::string::npos) {
    const double den = parse_atom(std::string_view(t).substr(slash + 1));
    if (den == 0.0) throw InvalidArgument("division by zero in '" + t + "'");
    return parse_atom(std::string_view(t).substr(0, slash)) / den;
  }
  return parse_atom(t);
}

std::complex<double> parse_complex(std::string_view text) {
  const std::string t = trim(text);
  if (t.empty()) throw InvalidArgument("empty complex number");
  if (t.back() != 'i' || t == "pi" || (t.size() >= 3 && t.compare(t.size() - 3, 3, "/pi") == 0)) {
    return {parse_number(t), 0.0};
  }
  const std::string body = t.substr(0, t.size() - 1);
  std::size_t split = std::string::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  auto imag_part = [](const std::string& s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return parse_number(s.front() == '+' ? s.substr(1) : s);
  };
  if (split == std::string::npos) return {0.0, imag_part(body)};
  return {parse_number(body.substr(0, split)), imag_part(body.substr(split))};
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (const char c : text) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::vector<double> parse_number_list(std::string_view text) {
  std::vector<double> out;
  for (const auto& item : split_list(text)) out.push_back(parse_number(item));
  return out;
}

std::vector<std::complex<double>> parse_complex_list(std::string_view text) {
  std::vector<std::complex<double>> out;
  for (const auto& item : split_list(text)) out.push_back(parse_complex(item));
  return out;
}

Shape parse_shape(std::string_view text) {
  const auto items = split_list(text);
  if (items.empty()) throw InvalidArgument("empty shape");
  std::vector<double> v;
  for (std::size_t i = 1; i < items.size(); ++i) v.push_back(parse_number(items[i]));
  if (items[0] == "disk" && v.size() == 3) return Disk{{v[0], v[1]}, v[2]};
  if (items[0] == "rect" && v.size() == 4) return Rectangle{{v[0], v[2]}, {v[1], v[3]}};
  throw InvalidArgument("shape must be 'disk re im r' or 'rect a b c d': '" + std::string(text) + "'");
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace lerch::cli
