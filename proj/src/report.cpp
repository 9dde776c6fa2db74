#include "qconn/report.hpp"

#include <fstream>
#include <iostream>
#include <stdexcept>

namespace qconn::cli {

bool Report::pass() const {
  for (const auto& row : results) {
    if (!row.pass) return false;
  }
  return true;
}

Json Report::to_json() const {
  Json j;
  j["schema_version"] = 1;
  j["subcommand"] = subcommand;
  j["inputs"] = inputs;
  Json rows = Json::array();
  for (const auto& row : results) {
    Json rj;
    rj["name"] = row.name;
    for (const auto& item : row.fields.items()) {
      rj[item.key()] = item.value();
    }
    rj["pass"] = row.pass;
    rows.push_back(std::move(rj));
  }
  j["results"] = std::move(rows);
  j["pass"] = pass();
  return j;
}

std::string Report::to_json_text(bool with_timing, double seconds) const {
  Json j = to_json();
  if (with_timing) {
    j["duration_seconds"] = seconds;
  }
  return j.dump(2) + "\n";
}

namespace {

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    out += c;
  }
  out += '"';
  return out;
}

std::string csv_value(const Json& v) {
  return v.is_string() ? v.get<std::string>() : v.dump();
}

}  // namespace

std::string Report::to_csv_text() const {
  std::string out = "result,field,value\n";
  for (const auto& row : results) {
    for (const auto& item : row.fields.items()) {
      out += csv_quote(row.name) + "," + csv_quote(item.key()) + "," +
             csv_quote(csv_value(item.value())) + "\n";
    }
    out += csv_quote(row.name) + ",pass," + (row.pass ? "true" : "false") + "\n";
  }
  out += "report,pass,";
  out += pass() ? "true" : "false";
  out += '\n';
  return out;
}

void write_text(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open output file '" + out_path + "'");
  }
  out << text;
  if (!out) {
    throw std::runtime_error("failed writing output file '" + out_path + "'");
  }
}

}  // namespace qconn::cli
