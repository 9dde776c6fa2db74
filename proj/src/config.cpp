#include "qconn/config.hpp"

#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace qconn::cli {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

std::pair<std::string, std::string> Config::split_pair(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) {
    throw std::invalid_argument("expected key=value, got '" + text + "'");
  }
  const std::string key = trim(text.substr(0, eq));
  if (key.empty()) {
    throw std::invalid_argument("empty key in '" + text + "'");
  }
  return {key, trim(text.substr(eq + 1))};
}

void Config::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot read config file '" + path + "'");
  }
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;
    try {
      auto [key, value] = split_pair(stripped);
      set(key, value);
    } catch (const std::invalid_argument& err) {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": " +
                                  err.what());
    }
  }
}

void Config::set(const std::string& key, const std::string& value) {
  entries_[key] = value;
}

bool Config::has(const std::string& key) const {
  return entries_.find(key) != entries_.end();
}

std::string Config::get_string(const std::string& key,
                               const std::string& fallback) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key, double fallback) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  const char* text = it->second.c_str();
  char* end = nullptr;
  const double value = std::strtod(text, &end);
  if (end == text || *end != '\0') {
    throw std::invalid_argument("config value for '" + key +
                                "' is not a number: '" + it->second + "'");
  }
  return value;
}

int Config::get_int(const std::string& key, int fallback) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  const char* text = it->second.c_str();
  char* end = nullptr;
  const long value = std::strtol(text, &end, 10);
  if (end == text || *end != '\0') {
    throw std::invalid_argument("config value for '" + key +
                                "' is not an integer: '" + it->second + "'");
  }
  return static_cast<int>(value);
}

std::vector<double> Config::get_double_list(const std::string& key,
                                            std::vector<double> fallback) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  std::vector<double> out;
  std::string::size_type start = 0;
  const std::string& text = it->second;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    if (comma == std::string::npos) comma = text.size();
    const std::string piece = trim(text.substr(start, comma - start));
    if (piece.empty()) {
      throw std::invalid_argument("config value for '" + key +
                                  "' has an empty list entry");
    }
    const char* begin = piece.c_str();
    char* end = nullptr;
    const double value = std::strtod(begin, &end);
    if (end == begin || *end != '\0') {
      throw std::invalid_argument("config value for '" + key +
                                  "' is not a number list: '" + text + "'");
    }
    out.push_back(value);
    start = comma + 1;
  }
  return out;
}

}  // namespace qconn::cli
