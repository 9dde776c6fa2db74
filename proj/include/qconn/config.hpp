#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace qconn::cli {

// Flat key=value configuration. Files hold one `key = value` entry per line
// (blank lines and lines starting with '#' are skipped); command-line
// `key=value` arguments are applied on top, so later settings win.
class Config {
 public:
  // Splits "key=value"; throws std::invalid_argument when there is no '=' or
  // the key is empty. Whitespace around both sides is trimmed.
  static std::pair<std::string, std::string> split_pair(const std::string& text);

  void load_file(const std::string& path);
  void set(const std::string& key, const std::string& value);

  bool has(const std::string& key) const;
  const std::map<std::string, std::string>& entries() const { return entries_; }

  std::string get_string(const std::string& key, const std::string& fallback) const;
  // Numeric getters throw std::invalid_argument when the stored text does not
  // parse completely as a number.
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  // Comma-separated list of numbers.
  std::vector<double> get_double_list(const std::string& key,
                                      std::vector<double> fallback) const;

 private:
  std::map<std::string, std::string> entries_;
};

}  // namespace qconn::cli
