#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "qratio/ci.hpp"
#include "qratio/errors.hpp"
#include "qratio/estimator.hpp"
#include "qratio/special_fn.hpp"

using qratio::ConfidenceInterval;
using qratio::numerical_error;
using qratio::RatioEstimate;
using qratio::RatioSpec;
using qratio::RiskSplit;
namespace ci = qratio::ci;
namespace est = qratio::estimator;
namespace sf = qratio::special_fn;

namespace {

const RatioEstimate kDefault{2.5, 1000, RatioSpec{0.2, 0.8}, 0.1};

// Residual of the defining equation sqrt(n)(r* - rho) = u_g w(a) rho log rho.
double defining_residual(double gamma, const RatioEstimate& e, double rho) {
  const double u = sf::normal_quantile(gamma);
  const double w = std::sqrt(est::asymptotic_w2(e.a_hat, e.spec));
  const double sn = std::sqrt(static_cast<double>(e.n));
  return sn * (e.r_star - rho) - u * w * rho * std::log(rho);
}

}  // namespace

TEST_CASE("endpoint reference values") {
  CHECK(ci::endpoint_closed_form(0.975, kDefault) ==
        doctest::Approx(2.33057879465465007).epsilon(1e-9));
  CHECK(ci::endpoint_closed_form(0.9, kDefault) ==
        doctest::Approx(2.38368051607992903).epsilon(1e-9));
  CHECK(ci::endpoint_closed_form(0.1, kDefault) ==
        doctest::Approx(2.64446970591550854).epsilon(1e-9));
  CHECK(ci::endpoint_closed_form(0.025, kDefault) ==
        doctest::Approx(2.73671680979360718).epsilon(1e-9));
  CHECK(ci::endpoint_closed_form(0.01, kDefault) ==
        doctest::Approx(2.79242489207793032).epsilon(1e-9));
}

TEST_CASE("closed form agrees with root finding") {
  // Where the defining equation has a root the two evaluations must agree;
  // where it has none (extreme tails at small n) both must refuse.
  const std::vector<double> gammas{0.01, 0.025, 0.1,  0.3,   0.45,
                                   0.55, 0.7,   0.9,  0.975, 0.99};
  int compared = 0;
  for (double r : {1.2, 2.5, 6.0}) {
    for (double a : {0.1, 1.0}) {
      for (std::size_t n : {100, 1000}) {
        const RatioEstimate e{r, n, RatioSpec{0.2, 0.8}, a};
        for (double g : gammas) {
          double closed = 0.0;
          bool closed_ok = true;
          try {
            closed = ci::endpoint_closed_form(g, e);
          } catch (const numerical_error&) {
            closed_ok = false;
          }
          if (closed_ok) {
            const double root = ci::endpoint_root_find(g, e);
            CHECK(std::abs(closed - root) <= 1e-9 * root);
            ++compared;
          } else {
            CHECK_THROWS_AS(ci::endpoint_root_find(g, e), numerical_error);
          }
        }
      }
    }
  }
  CHECK(compared >= 100);
}

TEST_CASE("root finding satisfies the defining equation") {
  for (double g : {0.01, 0.1, 0.45, 0.55, 0.9, 0.99}) {
    const double rho = ci::endpoint_root_find(g, kDefault);
    CHECK(std::abs(defining_residual(g, kDefault, rho)) <=
          1e-9 * std::sqrt(1000.0) * kDefault.r_star);
  }
  for (double g : {0.025, 0.5 - 1e-9, 0.5 + 1e-9, 0.975}) {
    const double rho = ci::endpoint_closed_form(g, kDefault);
    CHECK(std::abs(defining_residual(g, kDefault, rho)) <=
          1e-9 * std::sqrt(1000.0) * kDefault.r_star);
  }
}

TEST_CASE("endpoint approaches the point estimate at the center") {
  for (double g : {0.5 - 1e-9, 0.5 + 1e-9}) {
    const double rho = ci::endpoint_closed_form(g, kDefault);
    CHECK(std::abs(rho - kDefault.r_star) <= 1e-6 * kDefault.r_star);
  }
}

TEST_CASE("endpoint ordering around the point estimate") {
  for (double g : {0.55, 0.7, 0.9, 0.975, 0.99}) {
    CHECK(ci::endpoint_closed_form(g, kDefault) < kDefault.r_star);
  }
  for (double g : {0.01, 0.025, 0.1, 0.3, 0.45}) {
    CHECK(ci::endpoint_closed_form(g, kDefault) > kDefault.r_star);
  }
  CHECK(ci::endpoint_closed_form(0.9, kDefault) >
        ci::endpoint_closed_form(0.975, kDefault));
  CHECK(ci::endpoint_closed_form(0.025, kDefault) >
        ci::endpoint_closed_form(0.1, kDefault));
}

TEST_CASE("endpoint validation") {
  CHECK_THROWS_AS(ci::endpoint_closed_form(0.5, kDefault), std::domain_error);
  CHECK_THROWS_AS(ci::endpoint_closed_form(0.0, kDefault), std::domain_error);
  CHECK_THROWS_AS(ci::endpoint_closed_form(1.0, kDefault), std::domain_error);
  CHECK_THROWS_AS(ci::endpoint_closed_form(-0.1, kDefault),
                  std::domain_error);
  CHECK_THROWS_AS(ci::endpoint_root_find(0.5, kDefault), std::domain_error);

  RatioEstimate bad = kDefault;
  bad.r_star = 1.0;
  CHECK_THROWS_AS(ci::endpoint_closed_form(0.975, bad), std::domain_error);
  bad.r_star = 0.5;
  CHECK_THROWS_AS(ci::endpoint_closed_form(0.975, bad), std::domain_error);
  bad = kDefault;
  bad.n = 0;
  CHECK_THROWS_AS(ci::endpoint_closed_form(0.975, bad), std::domain_error);
  bad = kDefault;
  bad.a_hat = 0.0;
  CHECK_THROWS_AS(ci::endpoint_closed_form(0.975, bad), std::domain_error);
}

TEST_CASE("endpoint handles a point estimate barely above one") {
  const RatioEstimate e{1.0 + 1e-9, 1000, RatioSpec{0.2, 0.8}, 0.1};
  for (double g : {0.025, 0.975}) {
    const double closed = ci::endpoint_closed_form(g, e);
    const double root = ci::endpoint_root_find(g, e);
    CHECK(closed > 1.0);
    CHECK(std::abs(closed - root) <= 1e-9 * root);
  }
}

TEST_CASE("no real endpoint for tiny samples at extreme tails") {
  const RatioEstimate e{2.5, 4, RatioSpec{0.2, 0.8}, 0.1};
  CHECK_THROWS_AS(ci::endpoint_closed_form(0.025, e), numerical_error);
  CHECK_THROWS_AS(ci::endpoint_root_find(0.025, e), numerical_error);
  CHECK_THROWS_AS(ci::standard_interval(e, 0.95), numerical_error);
  CHECK_THROWS_AS(ci::shortest_interval(e, 0.95), numerical_error);
  // The lower endpoint still exists; only the upper tail is out of reach.
  CHECK(ci::endpoint_closed_form(0.975, e) > 1.0);
}

TEST_CASE("endpoint fallback wrapper matches the closed form") {
  for (double g : {0.025, 0.1, 0.9, 0.975}) {
    CHECK(ci::endpoint(g, kDefault) ==
          doctest::Approx(ci::endpoint_closed_form(g, kDefault))
              .epsilon(1e-12));
  }
}

TEST_CASE("standard interval reference lengths") {
  const ConfidenceInterval one =
      ci::standard_interval({2.0, 1000, {0.2, 0.8}, 0.1}, 0.95);
  CHECK(std::abs(one.length - 0.244047) <= 1e-5);
  CHECK(one.over_risk == one.under_risk);
  CHECK(one.over_risk == doctest::Approx(0.025).epsilon(1e-13));
  CHECK(one.level == 0.95);
  CHECK(one.length == one.upper - one.lower);
  CHECK(one.lower < 2.0);
  CHECK(one.upper > 2.0);

  const ConfidenceInterval two =
      ci::standard_interval({4.0, 1000, {0.2, 0.8}, 0.5}, 0.95);
  CHECK(std::abs(two.length - 0.832625) <= 1e-5);

  const ConfidenceInterval three =
      ci::standard_interval({6.0, 1000, {0.1, 0.9}, 1.0}, 0.95);
  CHECK(std::abs(three.length - 1.395974) <= 1e-5);
}

TEST_CASE("interval length matches the assembled interval") {
  const double sym = 0.025;
  CHECK(ci::interval_length(kDefault, 0.95, {sym}) ==
        doctest::Approx(ci::standard_interval(kDefault, 0.95).length)
            .epsilon(1e-14));
  const RiskSplit split{0.034};
  const ConfidenceInterval iv = ci::interval_from_split(kDefault, 0.95, split);
  CHECK(ci::interval_length(kDefault, 0.95, split) ==
        doctest::Approx(iv.length).epsilon(1e-14));
  CHECK(iv.over_risk == split.over_risk);
  CHECK(iv.under_risk == doctest::Approx(0.05 - 0.034).epsilon(1e-12));
}

TEST_CASE("length at a reference optimal split") {
  const RatioEstimate e{2.0, 1000, {0.2, 0.8}, 0.1};
  CHECK(std::abs(ci::interval_length(e, 0.95, {0.03339}) - 0.241322) <= 1e-5);
}

TEST_CASE("shortest interval reference case") {
  const ConfidenceInterval sh = ci::shortest_interval(kDefault, 0.95);
  const ConfidenceInterval st = ci::standard_interval(kDefault, 0.95);
  CHECK(sh.over_risk == doctest::Approx(0.034424333578).epsilon(1e-5));
  CHECK(sh.under_risk ==
        doctest::Approx(0.05 - 0.034424333578).epsilon(1e-4));
  CHECK(sh.length ==
        doctest::Approx(0.40030405504810805).epsilon(1e-9));
  CHECK(st.length ==
        doctest::Approx(0.40613801513895711).epsilon(1e-9));
  CHECK(sh.lower == doctest::Approx(2.3162099030851539).epsilon(1e-8));
  CHECK(sh.upper == doctest::Approx(2.7165139581332620).epsilon(1e-8));
  CHECK(100.0 * (1.0 - sh.length / st.length) ==
        doctest::Approx(1.4364476787).epsilon(1e-4));
}

TEST_CASE("shortest interval reference rows") {
  // Lengths are tight; the optimal split itself is conditioned like any
  // argmin of a flat objective, so risks get the looser tolerance.
  const ConfidenceInterval t1 =
      ci::shortest_interval({2.0, 1000, {0.2, 0.8}, 0.1}, 0.95);
  CHECK(std::abs(t1.length - 0.241322) <= 1e-5);
  CHECK(std::abs(t1.over_risk - 0.03339) <= 1e-4);
  CHECK(std::abs(t1.under_risk - 0.01661) <= 1e-4);
  CHECK(t1.over_risk == doctest::Approx(0.033400788607).epsilon(1e-6));

  const ConfidenceInterval t2 =
      ci::shortest_interval({6.0, 1000, {0.1, 0.9}, 1.0}, 0.95);
  CHECK(std::abs(t2.length - 1.373322) <= 1e-5);
  CHECK(std::abs(t2.over_risk - 0.03496) <= 1e-4);
  CHECK(t2.over_risk == doctest::Approx(0.0349589704201).epsilon(1e-6));
}

TEST_CASE("shortest interval never beats the standard by accident") {
  for (double r : {1.5, 2.0, 4.0, 6.0}) {
    for (double a : {0.1, 0.5, 1.0, 3.0}) {
      const RatioEstimate e{r, 1000, {0.2, 0.8}, a};
      const ConfidenceInterval sh = ci::shortest_interval(e, 0.95);
      const ConfidenceInterval st = ci::standard_interval(e, 0.95);
      CHECK(sh.length <= st.length * (1.0 + 1e-9));
      CHECK(sh.lower < sh.upper);
      CHECK(sh.level == 0.95);
      CHECK(sh.over_risk + sh.under_risk ==
            doctest::Approx(0.05).epsilon(1e-12));
      // The optimal split sends more risk above, pulling both ends down.
      CHECK(sh.upper < st.upper);
      CHECK(sh.lower < st.lower);
      // A lopsided split must do worse than the optimum.
      CHECK(ci::interval_length(e, 0.95, {1e-6}) > sh.length);
      CHECK(ci::interval_length(e, 0.95, {0.05 - 1e-6}) > sh.length);
    }
  }
}

TEST_CASE("shortest interval at other levels") {
  for (double level : {0.90, 0.99}) {
    const ConfidenceInterval sh = ci::shortest_interval(kDefault, level);
    const ConfidenceInterval st = ci::standard_interval(kDefault, level);
    CHECK(sh.level == level);
    CHECK(sh.length <= st.length * (1.0 + 1e-9));
    CHECK(sh.over_risk > 0.0);
    CHECK(sh.over_risk < 1.0 - level);
  }
}

TEST_CASE("interval construction validation") {
  CHECK_THROWS_AS(ci::interval_from_split(kDefault, 0.95, {0.0}),
                  std::domain_error);
  CHECK_THROWS_AS(ci::interval_from_split(kDefault, 0.95, {0.05}),
                  std::domain_error);
  CHECK_THROWS_AS(ci::interval_from_split(kDefault, 0.95, {-0.01}),
                  std::domain_error);
  CHECK_THROWS_AS(ci::interval_from_split(kDefault, 0.95, {0.06}),
                  std::domain_error);
  CHECK_THROWS_AS(ci::interval_from_split(kDefault, 0.0, {0.01}),
                  std::domain_error);
  CHECK_THROWS_AS(ci::interval_from_split(kDefault, 1.0, {0.01}),
                  std::domain_error);
  CHECK_THROWS_AS(ci::standard_interval(kDefault, 1.5), std::domain_error);
  CHECK_THROWS_AS(ci::shortest_interval(kDefault, 0.0), std::domain_error);
}
