#pragma once

/// @file output.hpp
/// Flat output records and their text / JSON-lines / CSV renderings.
/// All numbers travel as exact decimal strings.

#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "eigencount/oracle.hpp"

namespace eigencount {

using KeyValues = std::vector<std::pair<std::string, std::string>>;

struct OutputRecord {
  std::string command;
  KeyValues parameters;
  std::optional<std::string> polynomial;
  std::optional<std::string> value;
  std::optional<std::string> verdict;
  std::string provenance = "formula";  // formula | oracle | both
  KeyValues details;
};

enum class OutputFormat { text, json, csv };

inline OutputFormat parse_format(const std::string& s) {
  if (s == "text") return OutputFormat::text;
  if (s == "json") return OutputFormat::json;
  if (s == "csv") return OutputFormat::csv;
  throw std::invalid_argument("unknown output format '" + s + "'");
}

/// Flat record for an oracle scan. Elapsed time is optional so that default
/// output stays byte-identical between runs.
inline KeyValues report_fields(const OracleCountReport& r, bool with_timing) {
  KeyValues kv{{"n", std::to_string(r.n)},
               {"p", std::to_string(r.p)},
               {"spec", r.spec},
               {"count", r.count.str()},
               {"scanned", std::to_string(r.matrices_scanned)}};
  if (with_timing) kv.emplace_back("millis", std::to_string(r.elapsed.count()));
  return kv;
}

inline nlohmann::ordered_json to_json(const KeyValues& kv) {
  auto obj = nlohmann::ordered_json::object();
  for (const auto& [k, v] : kv) obj[k] = v;
  return obj;
}

inline nlohmann::ordered_json to_json(const OutputRecord& r) {
  nlohmann::ordered_json j;
  j["command"] = r.command;
  j["parameters"] = to_json(r.parameters);
  if (r.polynomial) j["polynomial"] = *r.polynomial;
  if (r.value) j["value"] = *r.value;
  if (r.verdict) j["verdict"] = *r.verdict;
  j["provenance"] = r.provenance;
  if (!r.details.empty()) j["details"] = to_json(r.details);
  return j;
}

class RecordWriter {
 public:
  RecordWriter(std::ostream& out, OutputFormat format) : out_(out), format_(format) {}

  void write(const OutputRecord& r) {
    if (!r.polynomial && !r.value && !r.verdict)
      throw std::logic_error("output record carries no polynomial, value or verdict");
    switch (format_) {
      case OutputFormat::json: out_ << to_json(r).dump() << '\n'; break;
      case OutputFormat::csv: write_csv(r); break;
      case OutputFormat::text: write_text(r); break;
    }
  }

 private:
  static std::string join(const KeyValues& kv, char sep) {
    std::string s;
    for (const auto& [k, v] : kv) {
      if (!s.empty()) s += sep;
      s += k + '=' + v;
    }
    return s;
  }

  static std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + '"';
  }

  void write_csv(const OutputRecord& r) {
    if (!header_written_) {
      out_ << "command,parameters,polynomial,value,verdict,provenance,details\n";
      header_written_ = true;
    }
    out_ << csv_field(r.command) << ',' << csv_field(join(r.parameters, ';')) << ','
         << csv_field(r.polynomial.value_or("")) << ',' << csv_field(r.value.value_or("")) << ','
         << csv_field(r.verdict.value_or("")) << ',' << csv_field(r.provenance) << ','
         << csv_field(join(r.details, ';')) << '\n';
  }

  void write_text(const OutputRecord& r) {
    if (r.verdict && (*r.verdict == "MISMATCH" || *r.verdict == "FAIL")) out_ << "! ";
    out_ << r.command;
    if (!r.parameters.empty()) out_ << ' ' << join(r.parameters, ' ');
    if (r.polynomial) out_ << "  " << *r.polynomial;
    if (r.value) out_ << "  value=" << *r.value;
    if (r.verdict) out_ << "  [" << *r.verdict << ']';
    if (!r.details.empty()) out_ << "  " << join(r.details, ' ');
    out_ << "  (" << r.provenance << ")\n";
  }

  std::ostream& out_;
  OutputFormat format_;
  bool header_written_ = false;
};

}  // namespace eigencount
