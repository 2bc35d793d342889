#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qratio/ci.hpp"
#include "qratio/types.hpp"

namespace qratio::mc {

/// Which shape parameter the interval construction gets to see.
enum class ShapeMode { known, estimated };

/// How the shape is recovered when ShapeMode::estimated is in effect.
enum class FitMethod { quantile_match, mle };

struct SimulationConfig {
  DagumParams params;
  RatioSpec spec;
  std::size_t n = 1000;
  std::size_t replicates = 10000;
  double level = 0.95;
  IntervalMethod method = IntervalMethod::standard;
  ShapeMode shape = ShapeMode::known;
  FitMethod fit = FitMethod::mle;
  std::uint64_t seed = 1;
  unsigned threads = 0;  // 0 means use all hardware threads
};

struct CoverageReport {
  double true_ratio = 0.0;
  double coverage = 0.0;    // share of valid replicates whose interval covers
  double miss_below = 0.0;  // share with the true ratio under the interval
  double miss_above = 0.0;
  double mean_length = 0.0;
  double mean_over_risk = 0.0;
  double mean_under_risk = 0.0;
  std::size_t replicates = 0;
  std::size_t failures = 0;  // replicates where estimation or construction failed
  std::uint64_t seed = 0;
  bool valid = false;  // true when failures stay within 1% of replicates
};

/// Runs the coverage experiment described by cfg: per replicate, draw a
/// sample, estimate the ratio (and the shape, if requested), build the
/// interval, and record whether it covers the true ratio. Replicate i uses
/// the sample stream derive_seed(cfg.seed, i), so results are identical for
/// any thread count. Aggregation runs in replicate order. Replicates whose
/// construction fails are counted in `failures` and excluded from the
/// averages; the report is flagged invalid when they exceed 1%.
CoverageReport run_coverage(const SimulationConfig& cfg);

/// One line of the interval comparison tables: both constructions evaluated
/// at a fixed point estimate r_star with known shape a.
struct TableRow {
  double a = 0.0;
  double r_star = 0.0;
  double over_risk = 0.0;   // risk above the shortest interval
  double under_risk = 0.0;  // risk below it
  double shortest_length = 0.0;
  double standard_length = 0.0;
  double reduction_pct = 0.0;  // length saved by the shortest construction
};

/// Builds the cartesian product of shapes and point estimates, one TableRow
/// per (a, r_star) pair, a varying slowest.
std::vector<TableRow> compare_intervals(const RatioSpec& spec, std::size_t n,
                                        double level,
                                        std::span<const double> a_values,
                                        std::span<const double> r_values);

}  // namespace qratio::mc
