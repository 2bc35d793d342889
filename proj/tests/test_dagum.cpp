#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "oracles.hpp"
#include "qratio/dagum.hpp"
#include "qratio/types.hpp"

using qratio::DagumParams;
using qratio::RatioSpec;
namespace dg = qratio::dagum;

TEST_CASE("cdf reference values") {
  // F(lambda) = 2^-a regardless of v.
  CHECK(dg::cdf({1.0, 2.0, 1.0}, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(dg::cdf({2.0, 1.0, 3.0}, 3.0) ==
        doctest::Approx(0.25).epsilon(1e-15));
  CHECK(dg::cdf({0.5, 2.0, 2.0}, 2.0) ==
        doctest::Approx(0.707106781186547524).epsilon(1e-15));
  CHECK(dg::cdf({1.0, 2.0, 1.0}, 0.0) == 0.0);
  CHECK(dg::cdf({1.0, 2.0, 1.0},
                std::numeric_limits<double>::infinity()) == 1.0);
  CHECK_THROWS_AS(dg::cdf({1.0, 2.0, 1.0}, -1.0), std::domain_error);
}

TEST_CASE("cdf is a distribution function") {
  const DagumParams p{0.7, 1.9, 2.3};
  double prev = -1.0;
  for (double lx = -8.0; lx <= 8.0; lx += 0.25) {
    const double c = dg::cdf(p, std::exp(lx));
    CHECK(c >= 0.0);
    CHECK(c <= 1.0);
    CHECK(c >= prev);
    prev = c;
  }
  CHECK(dg::cdf(p, 1e-300) < 1e-12);
  CHECK(dg::cdf(p, 1e300) > 1.0 - 1e-12);
}

TEST_CASE("pdf reference values and cdf derivative") {
  CHECK(dg::pdf({1.0, 1.0, 1.0}, 1.0) ==
        doctest::Approx(0.25).epsilon(1e-15));
  CHECK(dg::pdf({1.0, 2.0, 1.0}, 1.0) ==
        doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(dg::pdf({1.0, 1.0, 1.0}, -0.5), std::domain_error);

  const std::vector<DagumParams> grid = {
      {0.5, 2.0, 1.0}, {1.0, 3.0, 10.0}, {2.0, 1.5, 0.3}, {0.1, 4.0, 2.0}};
  for (const auto& p : grid) {
    for (double x : {0.5, 1.0, 5.0}) {
      const double h = x * 1e-6;
      const double num = (dg::cdf(p, x + h) - dg::cdf(p, x - h)) / (2.0 * h);
      if (num > 1e-12) {
        CHECK(dg::pdf(p, x) == doctest::Approx(num).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("pdf integrates to one") {
  const std::vector<DagumParams> grid = {{0.5, 2.0, 1.0},
                                         {1.0, 1.0, 1.0},
                                         {0.1, 4.0, 3.0},
                                         {2.0, 0.7, 0.5},
                                         {5.0, 3.0, 10.0}};
  for (const auto& p : grid) {
    // Substitute x = e^t so the mass near zero is resolved even when the
    // density is unbounded there.
    const double t_lo = std::log(dg::quantile(p, 1e-12));
    const double t_hi = std::log(dg::quantile(p, 1.0 - 1e-9));
    const double mass = oracles::simpson(
        [&](double t) { return dg::pdf(p, std::exp(t)) * std::exp(t); }, t_lo,
        t_hi, 8192);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("quantile reference values") {
  CHECK(dg::quantile({2.0, 1.0, 1.0}, 0.25) ==
        doctest::Approx(1.0).epsilon(1e-15));
  CHECK(dg::quantile({2.0, 3.0, 10.0}, 0.3) ==
        doctest::Approx(10.6590516476829232).epsilon(1e-14));
  CHECK_THROWS_AS(dg::quantile({1.0, 1.0, 1.0}, 0.0), std::domain_error);
  CHECK_THROWS_AS(dg::quantile({1.0, 1.0, 1.0}, 1.0), std::domain_error);
}

TEST_CASE("quantile inverts cdf") {
  const std::vector<DagumParams> grid = {
      {0.5, 2.0, 1.0}, {1.0, 1.0, 1.0}, {0.1, 4.0, 3.0}, {5.0, 0.5, 0.2}};
  std::vector<double> qs = {1e-6, 1e-3, 0.999, 1.0 - 1e-6};
  for (int k = 1; k <= 99; ++k) qs.push_back(k / 100.0);
  for (const auto& p : grid) {
    for (double q : qs) {
      CHECK(dg::cdf(p, dg::quantile(p, q)) ==
            doctest::Approx(q).epsilon(1e-12));
    }
  }
}

TEST_CASE("quantile strictly increasing and scale equivariant") {
  const DagumParams base{0.8, 2.5, 1.0};
  double prev = 0.0;
  for (int k = 1; k <= 999; ++k) {
    const double x = dg::quantile(base, k / 1000.0);
    CHECK(x > prev);
    prev = x;
  }
  for (double c : {1e-3, 1.0, 1e6}) {
    const DagumParams scaled{base.a, base.v, c};
    for (double q : {0.05, 0.3, 0.5, 0.9}) {
      CHECK(dg::quantile(scaled, q) ==
            doctest::Approx(c * dg::quantile(base, q)).epsilon(1e-14));
    }
  }
}

TEST_CASE("ratio of quantiles") {
  const RatioSpec mid{0.2, 0.8};
  CHECK(dg::ratio_of_quantiles({1.0, 1.0, 1.0}, mid) ==
        doctest::Approx(16.0).epsilon(1e-14));
  CHECK(dg::ratio_of_quantiles({0.5, 4.0, 1.0}, {0.1, 0.9}) ==
        doctest::Approx(4.53254008000176621).epsilon(1e-14));
  // Scale free in lambda.
  for (double lam : {1e-4, 1.0, 37.5, 1e7}) {
    CHECK(dg::ratio_of_quantiles({0.5, 4.0, lam}, {0.1, 0.9}) ==
          doctest::Approx(4.53254008000176621).epsilon(1e-14));
  }
  // Agrees with the quotient of quantiles.
  for (double a : {0.05, 0.3, 1.0, 4.0}) {
    const DagumParams p{a, 2.2, 3.0};
    CHECK(dg::ratio_of_quantiles(p, mid) ==
          doctest::Approx(dg::quantile(p, 0.8) / dg::quantile(p, 0.2))
              .epsilon(1e-10));
  }
}

TEST_CASE("shape rate from a target ratio") {
  const RatioSpec mid{0.2, 0.8};
  CHECK(dg::v_from_ratio(1.0, 16.0, mid) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(dg::v_from_ratio(1.0, 4.0, mid) ==
        doctest::Approx(2.0).epsilon(1e-14));
  for (double a : {0.1, 0.5, 1.0, 3.0}) {
    for (double v : {0.5, 1.0, 4.0}) {
      const double r = dg::ratio_of_quantiles({a, v, 1.0}, mid);
      CHECK(dg::v_from_ratio(a, r, mid) ==
            doctest::Approx(v).epsilon(1e-10));
    }
  }
  CHECK_THROWS_AS(dg::v_from_ratio(1.0, 1.0, mid), std::domain_error);
  CHECK_THROWS_AS(dg::v_from_ratio(1.0, 0.5, mid), std::domain_error);
}

TEST_CASE("sampling is deterministic and positive") {
  const DagumParams p{0.5, 2.0, 1.0};
  const auto s1 = dg::sample(p, 1000, 42);
  const auto s2 = dg::sample(p, 1000, 42);
  const auto s3 = dg::sample(p, 1000, 43);
  REQUIRE(s1.size() == 1000);
  CHECK(s1 == s2);
  CHECK(s1 != s3);
  for (double x : s1) CHECK(x > 0.0);
  CHECK_THROWS_AS(dg::sample(p, 0, 42), std::domain_error);
}

TEST_CASE("samples follow the distribution") {
  const DagumParams p{1.0, 2.0, 1.0};
  const auto draws = dg::sample(p, 100000, 20240817);
  const double d = oracles::ks_statistic(
      draws, [&](double x) { return dg::cdf(p, x); });
  CHECK(d < 0.006);  // ~1.4x the 1% critical value at n = 1e5
}

TEST_CASE("uniform draws and seed derivation") {
  const double u = dg::uniform_draw(7, 0);
  CHECK(u > 0.0);
  CHECK(u < 1.0);
  CHECK(dg::uniform_draw(7, 0) == u);
  CHECK(dg::uniform_draw(7, 1) != u);
  CHECK(dg::derive_seed(7, 0) != dg::derive_seed(7, 1));
  CHECK(dg::derive_seed(7, 0) == dg::derive_seed(7, 0));

  // Draws should look uniform in aggregate.
  std::vector<double> us;
  us.reserve(100000);
  for (std::uint64_t i = 0; i < 100000; ++i) {
    us.push_back(dg::uniform_draw(99, i));
  }
  const double d =
      oracles::ks_statistic(us, [](double x) { return x; });
  CHECK(d < 0.006);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(qratio::validate(DagumParams{0.0, 1.0, 1.0}),
                  std::domain_error);
  CHECK_THROWS_AS(qratio::validate(DagumParams{1.0, -1.0, 1.0}),
                  std::domain_error);
  CHECK_THROWS_AS(qratio::validate(DagumParams{1.0, 1.0, 0.0}),
                  std::domain_error);
  CHECK_THROWS_AS(
      qratio::validate(DagumParams{std::nan(""), 1.0, 1.0}),
      std::domain_error);
  CHECK_NOTHROW(qratio::validate(DagumParams{0.1, 2.0, 3.0}));
  CHECK_THROWS_AS(qratio::validate(RatioSpec{0.8, 0.2}), std::domain_error);
  CHECK_THROWS_AS(qratio::validate(RatioSpec{0.5, 0.5}), std::domain_error);
  CHECK_THROWS_AS(qratio::validate(RatioSpec{0.0, 0.5}), std::domain_error);
  CHECK_THROWS_AS(qratio::validate(RatioSpec{0.5, 1.0}), std::domain_error);
  CHECK_NOTHROW(qratio::validate(RatioSpec{0.2, 0.8}));
}
