#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qratio/ci.hpp"
#include "qratio/estimator.hpp"
#include "qratio/mc.hpp"
#include "qratio/types.hpp"

namespace qratio::io {

/// Raised on malformed input data; the message names the offending line.
class parse_error : public std::runtime_error {
 public:
  explicit parse_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ColumnSpec {
  std::size_t column = 1;   // 1-based token index within each line
  bool skip_header = false; // ignore the first non-blank line
};

/// Reads one positive value per line from a whitespace- or comma-separated
/// stream. Blank lines are skipped. Throws parse_error (with the line
/// number) on missing columns, unparseable tokens, or nonpositive values.
std::vector<double> read_values(std::istream& in, const ColumnSpec& spec,
                                const std::string& name);

/// read_values on a file path; parse_error if the file cannot be opened.
std::vector<double> read_values_file(const std::string& path,
                                     const ColumnSpec& spec);

nlohmann::json to_json(const DagumParams& params);
nlohmann::json to_json(const RatioSpec& spec);
nlohmann::json to_json(const RatioEstimate& est);
nlohmann::json to_json(const ConfidenceInterval& interval);
nlohmann::json to_json(const mc::CoverageReport& report);
nlohmann::json to_json(const mc::TableRow& row);
nlohmann::json to_json(const std::vector<mc::TableRow>& rows);

/// Fixed-width text rendering of an interval comparison table.
std::string render_table(const std::vector<mc::TableRow>& rows);

}  // namespace qratio::io
