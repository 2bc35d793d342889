#include "qratio/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>

namespace qratio::io {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',' || c == ' ' || c == '\t' || c == '\r') {
      if (!cur.empty()) {
        out.push_back(cur);
        cur.clear();
      }
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

double parse_double(const std::string& tok, std::size_t line_no,
                    const std::string& name) {
  double value = 0.0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw parse_error(name + ": line " + std::to_string(line_no) +
                      ": cannot parse '" + tok + "' as a number");
  }
  return value;
}

}  // namespace

std::vector<double> read_values(std::istream& in, const ColumnSpec& spec,
                                const std::string& name) {
  if (spec.column == 0) {
    throw std::domain_error("read_values: column indices are 1-based");
  }
  std::vector<double> out;
  std::string line;
  std::size_t line_no = 0;
  bool header_pending = spec.skip_header;
  while (std::getline(in, line)) {
    ++line_no;
    const std::vector<std::string> toks = tokenize(line);
    if (toks.empty()) continue;
    if (header_pending) {
      header_pending = false;
      continue;
    }
    if (toks.size() < spec.column) {
      throw parse_error(name + ": line " + std::to_string(line_no) +
                        ": expected at least " + std::to_string(spec.column) +
                        " columns, found " + std::to_string(toks.size()));
    }
    const double v = parse_double(toks[spec.column - 1], line_no, name);
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw parse_error(name + ": line " + std::to_string(line_no) +
                        ": values must be positive and finite");
    }
    out.push_back(v);
  }
  return out;
}

std::vector<double> read_values_file(const std::string& path,
                                     const ColumnSpec& spec) {
  std::ifstream in(path);
  if (!in) {
    throw parse_error(path + ": cannot open file");
  }
  return read_values(in, spec, path);
}

nlohmann::json to_json(const DagumParams& params) {
  return {{"a", params.a}, {"v", params.v}, {"lambda", params.lambda}};
}

nlohmann::json to_json(const RatioSpec& spec) {
  return {{"alpha", spec.alpha}, {"beta", spec.beta}};
}

nlohmann::json to_json(const RatioEstimate& est) {
  return {{"r_star", est.r_star},
          {"n", est.n},
          {"alpha", est.spec.alpha},
          {"beta", est.spec.beta},
          {"a_hat", est.a_hat}};
}

nlohmann::json to_json(const ConfidenceInterval& interval) {
  return {{"lower", interval.lower},       {"upper", interval.upper},
          {"level", interval.level},       {"under_risk", interval.under_risk},
          {"over_risk", interval.over_risk}, {"length", interval.length}};
}

nlohmann::json to_json(const mc::CoverageReport& report) {
  return {{"true_ratio", report.true_ratio},
          {"coverage", report.coverage},
          {"miss_below", report.miss_below},
          {"miss_above", report.miss_above},
          {"mean_length", report.mean_length},
          {"mean_over_risk", report.mean_over_risk},
          {"mean_under_risk", report.mean_under_risk},
          {"replicates", report.replicates},
          {"failures", report.failures},
          {"seed", report.seed},
          {"valid", report.valid}};
}

nlohmann::json to_json(const mc::TableRow& row) {
  return {{"a", row.a},
          {"r_star", row.r_star},
          {"over_risk", row.over_risk},
          {"under_risk", row.under_risk},
          {"shortest_length", row.shortest_length},
          {"standard_length", row.standard_length},
          {"reduction_pct", row.reduction_pct}};
}

nlohmann::json to_json(const std::vector<mc::TableRow>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& row : rows) arr.push_back(to_json(row));
  return {{"rows", arr}};
}

std::string render_table(const std::vector<mc::TableRow>& rows) {
  std::ostringstream os;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%6s %6s %9s %9s %10s %10s %10s\n", "a",
                "r*", "over", "under", "short", "standard", "reduction");
  os << buf;
  for (const auto& row : rows) {
    std::snprintf(buf, sizeof(buf),
                  "%6.2f %6.2f %9.5f %9.5f %10.6f %10.6f %9.3f%%\n", row.a,
                  row.r_star, row.over_risk, row.under_risk,
                  row.shortest_length, row.standard_length,
                  row.reduction_pct);
    os << buf;
  }
  return os.str();
}

}  // namespace qratio::io
