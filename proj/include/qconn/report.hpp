#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace qconn::cli {

using Json = nlohmann::ordered_json;

// One named check inside a report. `fields` holds the measured numbers and
// rendered values; `pass` states whether this check met its declared
// threshold (informational rows carry pass = true and say so in a field).
struct ResultRow {
  std::string name;
  Json fields = Json::object();
  bool pass = true;
};

// Machine-readable run report. The JSON layout is
//   {schema_version, subcommand, inputs, results[], pass[, duration_seconds]}
// with one results[] entry per check: {name, ...fields, pass}. The overall
// pass is the conjunction of the row flags, so the verdict is recomputable
// from the report alone. The CSV rendering is the flattened results[] table
// with columns result,field,value (every value quoted).
struct Report {
  std::string subcommand;
  Json inputs = Json::object();
  std::vector<ResultRow> results;

  bool pass() const;
  Json to_json() const;
  // `with_timing` appends the wall-clock duration; golden comparisons leave
  // it off so reruns stay byte-identical.
  std::string to_json_text(bool with_timing = false, double seconds = 0.0) const;
  std::string to_csv_text() const;
};

// Writes to the path, or to stdout when the path is empty.
void write_text(const std::string& text, const std::string& out_path);

}  // namespace qconn::cli
