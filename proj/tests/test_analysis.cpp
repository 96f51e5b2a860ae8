#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nlr/analysis.h"
#include "nlr/filters.h"

using namespace nlr;

namespace {

const KernelSpec kH01 = KernelSpec::gaussian(0.1);

double gauss(double xi, double h) { return std::exp(-(xi / h) * (xi / h)); }

}  // namespace

TEST_CASE("boundary term point values") {
  const Profile lin = linear_profile();
  for (double h : {0.05, 0.2, 1.0}) {
    CHECK(ktilde(lin, KernelSpec::gaussian(h), 0.5) == 0.0);
  }
  const double expect = std::exp(-0.25) - std::exp(-20.25);
  CHECK(std::abs(ktilde(lin, KernelSpec::gaussian(0.2), 0.1) - expect) <= 1e-12);
  CHECK(expect == doctest::Approx(0.7788008).epsilon(1e-7));

  // w vanishing at both ends kills both terms.
  const Profile vanish = with_contrast_weight(
      lin, [](double v) { return v * (1 - v); }, [](double v) { return 1 - 2 * v; });
  for (double t : {0.1, 0.3, 0.77}) CHECK(ktilde(vanish, kH01, t) == 0.0);
}

TEST_CASE("boundary term decays exponentially in the interior") {
  const Profile p = exponential_profile();
  double prev = std::abs(ktilde(p, KernelSpec::gaussian(0.4), 0.5));
  for (double h = 0.2; h > 0.01; h /= 2) {
    const double k = std::abs(ktilde(p, KernelSpec::gaussian(h), 0.5));
    CHECK(k < prev * prev);
    prev = k;
  }
}

TEST_CASE("predicted increment sub-terms") {
  const Profile lin = linear_profile();
  for (double h : {0.025, 0.1, 0.3}) {
    CHECK(predicted_increment(lin, KernelSpec::gaussian(h), 0.5) == 0.0);
  }

  const Profile p = exponential_profile();
  const double t = 0.5, h = 0.1;
  const double kt = gauss(std::exp(-t) - std::exp(-1.0), h) / -std::exp(-1.0) -
                    gauss(std::exp(-t) - 1.0, h) / -1.0;
  CHECK(std::abs(ktilde(p, kH01, t) - kt) <= 1e-15);
  const double dv = -std::exp(-t), d2v = std::exp(-t);
  for (const ExpansionConstants c :
       {ExpansionConstants::derived(), ExpansionConstants::stated()}) {
    const double expect = c.alpha1 * kt * dv * h - c.alpha2 * d2v / (dv * dv) * h * h;
    CHECK(std::abs(predicted_increment(p, kH01, t, c) - expect) <= 1e-15);
  }
  CHECK(ExpansionConstants::stated().alpha1 == 1 / std::sqrt(std::numbers::pi));
  CHECK(ExpansionConstants::stated().alpha2 == 1.0);
  CHECK(ExpansionConstants::derived().alpha1 == 0.5 / std::sqrt(std::numbers::pi));
  CHECK(ExpansionConstants::derived().alpha2 == 0.5);
}

TEST_CASE("a contrast-change weight contributes a nonnegative source term") {
  const Profile base = exponential_profile();
  const Profile p = with_contrast_weight(
      base, [](double v) { return 1 + v * v; }, [](double v) { return 2 * v; });
  for (double t = 0.3; t <= 0.7001; t += 0.05) {
    for (double h : {0.2, 0.05}) {
      const KernelSpec k = KernelSpec::gaussian(h);
      const ExpansionConstants c = ExpansionConstants::derived();
      const double w = p.w(t);
      const double first_two = c.alpha1 * ktilde(p, k, t) * p.dv(t) / w * h -
                               c.alpha2 * p.d2v(t) / (p.dv(t) * p.dv(t)) * h * h;
      const double source = predicted_increment(p, k, t, c) - first_two;
      CHECK(source >= 0);
      const double v = base.v(t);
      CHECK(source == doctest::Approx(c.alpha2 * 2 * v / (1 + v * v) * h * h));
    }
  }
}

TEST_CASE("predicted increment is odd under reflection") {
  const Profile s = sigmoid_profile();
  for (double t = 0.3; t <= 0.7001; t += 0.05) {
    for (double h : {0.2, 0.1, 0.05}) {
      const KernelSpec k = KernelSpec::gaussian(h);
      CHECK(predicted_increment(s, k, t) ==
            doctest::Approx(-predicted_increment(s, k, 1 - t)).epsilon(1e-9));
    }
  }
}

TEST_CASE("one continuous step") {
  CHECK(std::abs(actual_increment(linear_profile(), kH01, 0.5, 4096)) <= 1e-15);
  CHECK_THROWS_AS(actual_increment(linear_profile(), kH01, 0.5, 999), std::invalid_argument);

  const Profile p = exponential_profile();
  const double a = actual_increment(p, kH01, 0.5, 1L << 14);
  const double b = actual_increment(p, kH01, 0.5, 1L << 15);
  CHECK(std::abs(a - b) < 1e-10);
  const QuadratureResult r = actual_increment_converged(p, kH01, 0.5);
  CHECK(r.change < 1e-10);
  CHECK(r.panels >= (1L << 15));
}

TEST_CASE("continuous step matches a dense discrete neighborhood filter") {
  constexpr int kSamples = 4096;
  std::vector<std::int64_t> breaks(kSamples + 1);
  std::vector<double> values(kSamples);
  for (int k = 0; k <= kSamples; ++k) breaks[k] = k;
  for (int k = 0; k < kSamples; ++k) values[k] = std::exp(-(k + 0.5) / kSamples);
  const auto out = nf_filter_levels(Rearrangement(breaks, values), kH01);
  const Profile p = exponential_profile();
  for (int k : {2047, 2048, 1500, 2600}) {
    const double t = (k + 0.5) / kSamples;
    const double discrete = out[k] - values[k];
    CHECK(std::abs(discrete - actual_increment_converged(p, kH01, t).value) <= 1e-4);
  }
}

TEST_CASE("order studies") {
  const std::vector<double> hs{0.2, 0.1, 0.05, 0.025};
  const auto grid = parse_range("0.3:0.7:0.05");
  REQUIRE(grid.size() == 9);

  const ExpansionReport e = order_study(exponential_profile(), grid, hs);
  REQUIRE(e.rows.size() == 36);
  REQUIRE(e.max_ratio.size() == 4);
  for (std::size_t i = 1; i < e.max_ratio.size(); ++i) {
    CHECK(e.max_ratio[i] < e.max_ratio[i - 1]);
  }
  for (const ExpansionRow& row : e.rows) {
    CHECK(std::isfinite(row.residual));
    CHECK(row.residual == row.actual - row.predicted);
  }
  CHECK(e.worst_quadrature_change < 1e-10);

  const ExpansionReport l = order_study(linear_profile(), grid, hs);
  for (std::size_t i = 1; i < l.max_ratio.size(); ++i) {
    CHECK(l.max_ratio[i] < l.max_ratio[i - 1]);
  }

  CHECK_THROWS_AS(order_study(exponential_profile(), grid, {0.2, 0.1, 0.05}),
                  std::invalid_argument);
  CHECK_THROWS_AS(order_study(exponential_profile(), grid, {0.1, 0.2, 0.05, 0.01}),
                  std::invalid_argument);
}

TEST_CASE("shock sign on a sigmoid profile") {
  const Profile s = sigmoid_profile();
  for (double t = 0.3; t <= 0.7001; t += 0.05) {
    if (std::abs(t - 0.5) < 1e-9) continue;
    const double inc = actual_increment_converged(s, KernelSpec::gaussian(0.05), t).value;
    CHECK(inc * s.d2v(t) < 0);
  }
}

TEST_CASE("steeper profiles move less") {
  double prev = 1e300;
  for (double slope : {1.0, 2.0, 4.0, 8.0}) {
    const double inc =
        std::abs(actual_increment_converged(sloped_linear_profile(slope), kH01, 0.3).value);
    CHECK(inc < prev);
    prev = inc;
  }
}

TEST_CASE("profiles and ranges") {
  CHECK(profile_by_name("exp").v(0) == 1);
  CHECK(profile_by_name("linear").v(1) == 0);
  const Profile s = profile_by_name("sigmoid");
  CHECK(std::abs(s.v(0) - 1) <= 1e-15);
  CHECK(std::abs(s.v(1)) <= 1e-15);
  for (double t = 0.01; t < 1; t += 0.01) {
    CHECK(s.dv(t) < 0);
    CHECK(s.dv(t) == doctest::Approx((s.v(t + 1e-6) - s.v(t - 1e-6)) / 2e-6).epsilon(1e-6));
    CHECK(s.d2v(t) ==
          doctest::Approx((s.dv(t + 1e-6) - s.dv(t - 1e-6)) / 2e-6).epsilon(1e-5).scale(1));
  }
  CHECK_THROWS_AS(profile_by_name("cubic"), std::invalid_argument);
  CHECK(parse_range("0:1:0.25") == std::vector<double>{0, 0.25, 0.5, 0.75, 1});
  CHECK_THROWS_AS(parse_range("0:1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_range("1:0:0.1"), std::invalid_argument);
}
