#include "qratio/mc.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

#include "qratio/dagum.hpp"
#include "qratio/errors.hpp"
#include "qratio/estimator.hpp"

namespace qratio::mc {

namespace {

struct Replicate {
  double lower = 0.0;
  double upper = 0.0;
  double length = 0.0;
  double over_risk = 0.0;
  double under_risk = 0.0;
  bool ok = false;
};

Replicate run_one(const SimulationConfig& cfg, std::size_t index) {
  Replicate rec;
  const std::uint64_t seed = dagum::derive_seed(cfg.seed, index);
  const std::vector<double> data = dagum::sample(cfg.params, cfg.n, seed);
  try {
    const double r_star = estimator::sample_quantile_ratio(data, cfg.spec);
    double a_hat = cfg.params.a;
    if (cfg.shape == ShapeMode::estimated) {
      a_hat = (cfg.fit == FitMethod::mle)
                  ? estimator::fit_mle(data).a
                  : estimator::fit_quantile_match(data).a;
    }
    const RatioEstimate est{r_star, cfg.n, cfg.spec, a_hat};
    const ConfidenceInterval iv = (cfg.method == IntervalMethod::shortest)
                                      ? ci::shortest_interval(est, cfg.level)
                                      : ci::standard_interval(est, cfg.level);
    rec.lower = iv.lower;
    rec.upper = iv.upper;
    rec.length = iv.length;
    rec.over_risk = iv.over_risk;
    rec.under_risk = iv.under_risk;
    rec.ok = true;
  } catch (const std::domain_error&) {
  } catch (const numerical_error&) {
  }
  return rec;
}

}  // namespace

CoverageReport run_coverage(const SimulationConfig& cfg) {
  validate(cfg.params);
  validate(cfg.spec);
  if (cfg.n < 10) {
    throw std::domain_error("run_coverage: sample size must be at least 10");
  }
  if (cfg.replicates == 0) {
    throw std::domain_error("run_coverage: need at least one replicate");
  }
  if (!(cfg.level > 0.0 && cfg.level < 1.0)) {
    throw std::domain_error("run_coverage: level must lie in (0, 1)");
  }

  const double r_true = dagum::ratio_of_quantiles(cfg.params, cfg.spec);
  std::vector<Replicate> recs(cfg.replicates);

  unsigned nt = cfg.threads ? cfg.threads : std::thread::hardware_concurrency();
  if (nt == 0) nt = 1;
  if (static_cast<std::size_t>(nt) > cfg.replicates) {
    nt = static_cast<unsigned>(cfg.replicates);
  }
  if (nt == 1) {
    for (std::size_t j = 0; j < cfg.replicates; ++j) {
      recs[j] = run_one(cfg, j);
    }
  } else {
    // Each worker owns a contiguous block; replicate j depends only on
    // (seed, j), so the partition does not affect the numbers.
    std::vector<std::thread> pool;
    pool.reserve(nt);
    const std::size_t chunk = (cfg.replicates + nt - 1) / nt;
    for (unsigned t = 0; t < nt; ++t) {
      const std::size_t begin = static_cast<std::size_t>(t) * chunk;
      const std::size_t end = std::min(begin + chunk, cfg.replicates);
      if (begin >= end) break;
      pool.emplace_back([&cfg, &recs, begin, end] {
        for (std::size_t j = begin; j < end; ++j) {
          recs[j] = run_one(cfg, j);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  CoverageReport rep;
  rep.true_ratio = r_true;
  rep.replicates = cfg.replicates;
  rep.seed = cfg.seed;
  std::size_t covered = 0, below = 0, above = 0;
  double len_sum = 0.0, over_sum = 0.0, under_sum = 0.0;
  for (const Replicate& rec : recs) {
    if (!rec.ok) {
      ++rep.failures;
      continue;
    }
    if (r_true < rec.lower) {
      ++below;
    } else if (r_true > rec.upper) {
      ++above;
    } else {
      ++covered;
    }
    len_sum += rec.length;
    over_sum += rec.over_risk;
    under_sum += rec.under_risk;
  }
  const std::size_t valid_n = cfg.replicates - rep.failures;
  if (valid_n == 0) {
    throw numerical_error("run_coverage: every replicate failed");
  }
  const double dn = static_cast<double>(valid_n);
  rep.coverage = static_cast<double>(covered) / dn;
  rep.miss_below = static_cast<double>(below) / dn;
  rep.miss_above = static_cast<double>(above) / dn;
  rep.mean_length = len_sum / dn;
  rep.mean_over_risk = over_sum / dn;
  rep.mean_under_risk = under_sum / dn;
  rep.valid = rep.failures * 100 <= cfg.replicates;
  return rep;
}

std::vector<TableRow> compare_intervals(const RatioSpec& spec, std::size_t n,
                                        double level,
                                        std::span<const double> a_values,
                                        std::span<const double> r_values) {
  validate(spec);
  std::vector<TableRow> rows;
  rows.reserve(a_values.size() * r_values.size());
  for (double a : a_values) {
    for (double r : r_values) {
      const RatioEstimate est{r, n, spec, a};
      const ConfidenceInterval shortest = ci::shortest_interval(est, level);
      const ConfidenceInterval standard = ci::standard_interval(est, level);
      TableRow row;
      row.a = a;
      row.r_star = r;
      row.over_risk = shortest.over_risk;
      row.under_risk = shortest.under_risk;
      row.shortest_length = shortest.length;
      row.standard_length = standard.length;
      row.reduction_pct = 100.0 * (1.0 - shortest.length / standard.length);
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace qratio::mc
