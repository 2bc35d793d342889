#include <cinttypes>
#include <cstdio>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qratio/ci.hpp"
#include "qratio/dagum.hpp"
#include "qratio/errors.hpp"
#include "qratio/estimator.hpp"
#include "qratio/io.hpp"
#include "qratio/mc.hpp"

namespace {

using namespace qratio;

constexpr const char* kVersion = "1.0.0";

void emit_json(const nlohmann::json& j) { std::cout << j.dump() << "\n"; }

std::uint64_t generate_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

void print_kv(const char* key, const std::string& value) {
  std::printf("%-28s %s\n", key, value.c_str());
}

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

void print_interval_block(const char* name, const ConfidenceInterval& iv) {
  std::printf("%s interval                [%0.6f, %0.6f]\n", name, iv.lower,
              iv.upper);
  std::printf("length of the %s confidence interval  %0.6f\n", name,
              iv.length);
}

struct EstimateView {
  RatioEstimate est;
  double level = 0.95;
  std::string mode = "both";
};

// Shared renderer for `ci` and `estimate`: both end in intervals around a
// point estimate.
int print_intervals(const EstimateView& view, const std::string& format,
                    nlohmann::json extra) {
  const bool want_short = view.mode != "standard";
  const bool want_std = view.mode != "shortest";
  ConfidenceInterval shortest, standard;
  if (want_short) shortest = ci::shortest_interval(view.est, view.level);
  if (want_std) standard = ci::standard_interval(view.est, view.level);

  if (format == "json") {
    nlohmann::json j = io::to_json(view.est);
    j["level"] = view.level;
    for (auto& [k, v] : extra.items()) j[k] = v;
    if (want_short) j["shortest"] = io::to_json(shortest);
    if (want_std) j["standard"] = io::to_json(standard);
    if (want_short && want_std) {
      j["reduction_pct"] = 100.0 * (1.0 - shortest.length / standard.length);
    }
    emit_json(j);
    return 0;
  }

  print_kv("r*", fmt("%0.6f", view.est.r_star));
  print_kv("shape a", fmt("%0.6f", view.est.a_hat));
  print_kv("sample size", std::to_string(view.est.n));
  print_kv("quantile orders",
           fmt("%0.3f", view.est.spec.alpha) + " / " +
               fmt("%0.3f", view.est.spec.beta));
  print_kv("confidence level", fmt("%0.3f", view.level));
  if (want_short) {
    print_kv("risk of underestimation", fmt("%0.5f", shortest.under_risk));
    print_kv("risk of overestimation", fmt("%0.5f", shortest.over_risk));
    print_interval_block("shortest", shortest);
  }
  if (want_std) {
    print_interval_block("standard", standard);
  }
  if (want_short && want_std) {
    print_kv("length reduction",
             fmt("%0.3f", 100.0 * (1.0 - shortest.length / standard.length)) +
                 "%");
  }
  return 0;
}

struct CiOpts {
  double alpha = 0.2, beta = 0.8, r = 2.5, a = 0.1, level = 0.95;
  std::size_t n = 1000;
  std::string mode = "both", format = "table";
};

struct EstimateOpts {
  std::string input;
  std::size_t column = 1;
  bool skip_header = false;
  double alpha = 0.2, beta = 0.8, level = 0.95;
  double a = 0.0;
  bool a_given = false;
  std::string mode = "both", format = "table";
};

struct TableOpts {
  std::string which;
  double alpha = 0.0, beta = 0.0, level = 0.95;
  std::size_t n = 1000;
  std::string format = "table";
};

struct SimulateOpts {
  double a = 1.0, v = 1.0, lambda = 1.0;
  double alpha = 0.2, beta = 0.8, level = 0.95;
  std::size_t n = 1000, replicates = 10000;
  std::string method = "standard", a_mode = "known", fit = "mle";
  std::uint64_t seed = 0;
  bool seed_given = false;
  unsigned threads = 0;
  std::string format = "table";
};

struct FitOpts {
  std::string input;
  std::size_t column = 1;
  bool skip_header = false;
  std::string method = "mle", format = "table";
};

struct SampleOpts {
  double a = 1.0, v = 1.0, lambda = 1.0;
  std::size_t count = 10;
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string format = "table";
};

int run_ci(const CiOpts& o) {
  EstimateView view{RatioEstimate{o.r, o.n, RatioSpec{o.alpha, o.beta}, o.a},
                    o.level, o.mode};
  return print_intervals(view, o.format, nlohmann::json::object());
}

int run_estimate(const EstimateOpts& o) {
  const std::vector<double> values =
      io::read_values_file(o.input, io::ColumnSpec{o.column, o.skip_header});
  const RatioSpec spec{o.alpha, o.beta};
  const double r_star = estimator::sample_quantile_ratio(values, spec);
  nlohmann::json extra;
  double a_used = o.a;
  if (o.a_given) {
    extra["a_source"] = "given";
  } else {
    const DagumParams fitted = estimator::fit_mle(values);
    a_used = fitted.a;
    extra["a_source"] = "mle";
    extra["fit"] = io::to_json(fitted);
  }
  EstimateView view{RatioEstimate{r_star, values.size(), spec, a_used},
                    o.level, o.mode};
  return print_intervals(view, o.format, std::move(extra));
}

int run_table(const TableOpts& o) {
  RatioSpec spec;
  if (o.which == "t1") {
    spec = RatioSpec{0.2, 0.8};
  } else if (o.which == "t2") {
    spec = RatioSpec{0.1, 0.9};
  } else {
    if (o.alpha == 0.0 || o.beta == 0.0) {
      throw std::domain_error(
          "table custom requires --alpha and --beta");
    }
    spec = RatioSpec{o.alpha, o.beta};
  }
  const std::vector<double> a_values{0.1, 0.5, 1.0};
  const std::vector<double> r_values{2.0, 3.0, 4.0, 5.0, 6.0};
  const std::vector<mc::TableRow> rows =
      mc::compare_intervals(spec, o.n, o.level, a_values, r_values);
  if (o.format == "json") {
    nlohmann::json j = io::to_json(rows);
    j["alpha"] = spec.alpha;
    j["beta"] = spec.beta;
    j["n"] = o.n;
    j["level"] = o.level;
    emit_json(j);
  } else {
    std::fputs(io::render_table(rows).c_str(), stdout);
  }
  return 0;
}

int run_simulate(SimulateOpts o) {
  if (!o.seed_given) {
    if (o.format == "json") {
      throw std::domain_error("--seed is required with --format json");
    }
    o.seed = generate_seed();
  }
  mc::SimulationConfig cfg;
  cfg.params = DagumParams{o.a, o.v, o.lambda};
  cfg.spec = RatioSpec{o.alpha, o.beta};
  cfg.n = o.n;
  cfg.replicates = o.replicates;
  cfg.level = o.level;
  cfg.method = o.method == "shortest" ? IntervalMethod::shortest
                                      : IntervalMethod::standard;
  cfg.shape =
      o.a_mode == "estimated" ? mc::ShapeMode::estimated : mc::ShapeMode::known;
  cfg.fit = o.fit == "quantile-match" ? mc::FitMethod::quantile_match
                                      : mc::FitMethod::mle;
  cfg.seed = o.seed;
  cfg.threads = o.threads;
  const mc::CoverageReport report = mc::run_coverage(cfg);
  if (o.format == "json") {
    emit_json(io::to_json(report));
    return 0;
  }
  print_kv("true ratio", fmt("%0.6f", report.true_ratio));
  print_kv("coverage", fmt("%0.4f", report.coverage));
  print_kv("miss below", fmt("%0.4f", report.miss_below));
  print_kv("miss above", fmt("%0.4f", report.miss_above));
  print_kv("mean length", fmt("%0.6f", report.mean_length));
  print_kv("mean over-risk", fmt("%0.5f", report.mean_over_risk));
  print_kv("mean under-risk", fmt("%0.5f", report.mean_under_risk));
  print_kv("failures", std::to_string(report.failures));
  print_kv("replicates", std::to_string(report.replicates));
  char seed_buf[32];
  std::snprintf(seed_buf, sizeof(seed_buf), "%" PRIu64, report.seed);
  print_kv("seed", seed_buf);
  print_kv("valid", report.valid ? "yes" : "no");
  return 0;
}

int run_fit(const FitOpts& o) {
  const std::vector<double> values =
      io::read_values_file(o.input, io::ColumnSpec{o.column, o.skip_header});
  const DagumParams params = o.method == "quantile-match"
                                 ? estimator::fit_quantile_match(values)
                                 : estimator::fit_mle(values);
  const double ll = estimator::log_likelihood(params, values);
  if (o.format == "json") {
    nlohmann::json j = io::to_json(params);
    j["log_likelihood"] = ll;
    j["n"] = values.size();
    j["method"] = o.method;
    emit_json(j);
    return 0;
  }
  print_kv("a", fmt("%0.6f", params.a));
  print_kv("v", fmt("%0.6f", params.v));
  print_kv("lambda", fmt("%0.6f", params.lambda));
  print_kv("log likelihood", fmt("%0.6f", ll));
  print_kv("n", std::to_string(values.size()));
  print_kv("method", o.method);
  return 0;
}

int run_sample(SampleOpts o) {
  if (!o.seed_given) {
    if (o.format == "json") {
      throw std::domain_error("--seed is required with --format json");
    }
    o.seed = generate_seed();
  }
  const std::vector<double> values =
      dagum::sample(DagumParams{o.a, o.v, o.lambda}, o.count, o.seed);
  if (o.format == "json") {
    nlohmann::json j;
    j["seed"] = o.seed;
    j["values"] = values;
    emit_json(j);
    return 0;
  }
  std::printf("# seed %" PRIu64 "\n", o.seed);
  for (double v : values) std::printf("%.17g\n", v);
  return 0;
}

void add_format_option(CLI::App* cmd, std::string& fmt_var) {
  cmd->add_option("--format", fmt_var, "Output format")
      ->check(CLI::IsMember({"table", "json"}))
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Point estimates and confidence intervals (standard and shortest) for "
      "ratios of quantiles of the Dagum income distribution"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  CiOpts ci_opts;
  auto* ci_cmd = app.add_subcommand(
      "ci", "Confidence intervals from a given point estimate");
  ci_cmd->add_option("--alpha", ci_opts.alpha, "Lower quantile order")
      ->capture_default_str();
  ci_cmd->add_option("--beta", ci_opts.beta, "Upper quantile order")
      ->capture_default_str();
  ci_cmd->add_option("--n", ci_opts.n, "Sample size behind the estimate")
      ->capture_default_str();
  ci_cmd->add_option("--r", ci_opts.r, "Observed quantile ratio r*")
      ->capture_default_str();
  ci_cmd->add_option("--a", ci_opts.a, "Dagum shape parameter a")
      ->capture_default_str();
  ci_cmd->add_option("--level", ci_opts.level, "Confidence level")
      ->capture_default_str();
  ci_cmd->add_option("--mode", ci_opts.mode, "Which interval(s) to compute")
      ->check(CLI::IsMember({"standard", "shortest", "both"}))
      ->capture_default_str();
  add_format_option(ci_cmd, ci_opts.format);

  EstimateOpts est_opts;
  auto* est_cmd = app.add_subcommand(
      "estimate", "Estimate the quantile ratio from an income data file");
  est_cmd->add_option("--input", est_opts.input, "Data file, one income per row")
      ->required();
  est_cmd->add_option("--column", est_opts.column, "1-based column to read")
      ->capture_default_str();
  est_cmd->add_flag("--skip-header", est_opts.skip_header,
                    "Ignore the first non-blank line");
  est_cmd->add_option("--alpha", est_opts.alpha, "Lower quantile order")
      ->capture_default_str();
  est_cmd->add_option("--beta", est_opts.beta, "Upper quantile order")
      ->capture_default_str();
  est_cmd->add_option("--level", est_opts.level, "Confidence level")
      ->capture_default_str();
  auto* a_opt = est_cmd->add_option(
      "--a", est_opts.a, "Use this shape a instead of fitting it");
  est_cmd->add_option("--mode", est_opts.mode, "Which interval(s) to compute")
      ->check(CLI::IsMember({"standard", "shortest", "both"}))
      ->capture_default_str();
  add_format_option(est_cmd, est_opts.format);

  TableOpts tab_opts;
  auto* tab_cmd = app.add_subcommand(
      "table", "Interval comparison table over a grid of (a, r*)");
  tab_cmd
      ->add_option("which", tab_opts.which,
                   "t1 (orders 0.2/0.8), t2 (0.1/0.9), or custom")
      ->required()
      ->check(CLI::IsMember({"t1", "t2", "custom"}));
  tab_cmd->add_option("--alpha", tab_opts.alpha,
                      "Lower quantile order (custom)");
  tab_cmd->add_option("--beta", tab_opts.beta, "Upper quantile order (custom)");
  tab_cmd->add_option("--n", tab_opts.n, "Sample size")->capture_default_str();
  tab_cmd->add_option("--level", tab_opts.level, "Confidence level")
      ->capture_default_str();
  add_format_option(tab_cmd, tab_opts.format);

  SimulateOpts sim_opts;
  auto* sim_cmd =
      app.add_subcommand("simulate", "Monte Carlo coverage experiment");
  sim_cmd->add_option("--a", sim_opts.a, "Dagum shape a")->capture_default_str();
  sim_cmd->add_option("--v", sim_opts.v, "Dagum shape v")->capture_default_str();
  sim_cmd->add_option("--lambda", sim_opts.lambda, "Dagum scale lambda")
      ->capture_default_str();
  sim_cmd->add_option("--alpha", sim_opts.alpha, "Lower quantile order")
      ->capture_default_str();
  sim_cmd->add_option("--beta", sim_opts.beta, "Upper quantile order")
      ->capture_default_str();
  sim_cmd->add_option("--n", sim_opts.n, "Sample size per replicate")
      ->capture_default_str();
  sim_cmd->add_option("--replicates", sim_opts.replicates, "Replicate count")
      ->capture_default_str();
  sim_cmd->add_option("--level", sim_opts.level, "Confidence level")
      ->capture_default_str();
  sim_cmd->add_option("--method", sim_opts.method, "Interval construction")
      ->check(CLI::IsMember({"standard", "shortest"}))
      ->capture_default_str();
  sim_cmd->add_option("--a-mode", sim_opts.a_mode, "Shape knowledge")
      ->check(CLI::IsMember({"known", "estimated"}))
      ->capture_default_str();
  sim_cmd->add_option("--fit", sim_opts.fit, "Shape fit when estimated")
      ->check(CLI::IsMember({"mle", "quantile-match"}))
      ->capture_default_str();
  auto* sim_seed = sim_cmd->add_option("--seed", sim_opts.seed, "Master seed");
  sim_cmd->add_option("--threads", sim_opts.threads,
                      "Worker threads (0 = all cores)")
      ->capture_default_str();
  add_format_option(sim_cmd, sim_opts.format);

  FitOpts fit_opts;
  auto* fit_cmd = app.add_subcommand(
      "fit", "Fit Dagum parameters to an income data file");
  fit_cmd->add_option("--input", fit_opts.input, "Data file, one income per row")
      ->required();
  fit_cmd->add_option("--column", fit_opts.column, "1-based column to read")
      ->capture_default_str();
  fit_cmd->add_flag("--skip-header", fit_opts.skip_header,
                    "Ignore the first non-blank line");
  fit_cmd->add_option("--method", fit_opts.method, "Fitting method")
      ->check(CLI::IsMember({"mle", "quantile-match"}))
      ->capture_default_str();
  add_format_option(fit_cmd, fit_opts.format);

  SampleOpts smp_opts;
  auto* smp_cmd =
      app.add_subcommand("sample", "Draw reproducible Dagum variates");
  smp_cmd->add_option("--a", smp_opts.a, "Dagum shape a")->capture_default_str();
  smp_cmd->add_option("--v", smp_opts.v, "Dagum shape v")->capture_default_str();
  smp_cmd->add_option("--lambda", smp_opts.lambda, "Dagum scale lambda")
      ->capture_default_str();
  smp_cmd->add_option("--count", smp_opts.count, "Number of draws")
      ->capture_default_str();
  auto* smp_seed = smp_cmd->add_option("--seed", smp_opts.seed, "Stream seed");
  add_format_option(smp_cmd, smp_opts.format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  est_opts.a_given = a_opt->count() > 0;
  sim_opts.seed_given = sim_seed->count() > 0;
  smp_opts.seed_given = smp_seed->count() > 0;

  try {
    if (ci_cmd->parsed()) return run_ci(ci_opts);
    if (est_cmd->parsed()) return run_estimate(est_opts);
    if (tab_cmd->parsed()) return run_table(tab_opts);
    if (sim_cmd->parsed()) return run_simulate(sim_opts);
    if (fit_cmd->parsed()) return run_fit(fit_opts);
    if (smp_cmd->parsed()) return run_sample(smp_opts);
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const io::parse_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const numerical_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 0;
}
