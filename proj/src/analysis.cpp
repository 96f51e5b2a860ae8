#include "nlr/analysis.h"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "nlr/parallel.h"

namespace nlr {

Profile exponential_profile() {
  auto one = [](double) { return 1.0; };
  auto zero = [](double) { return 0.0; };
  return {"exp",
          [](double t) { return std::exp(-t); },
          [](double t) { return -std::exp(-t); },
          [](double t) { return std::exp(-t); },
          one,
          zero};
}

Profile linear_profile() { return sloped_linear_profile(1.0); }

Profile sloped_linear_profile(double slope) {
  if (!(slope > 0)) throw std::invalid_argument("slope must be positive");
  return {"linear",
          [slope](double t) { return 1.0 - slope * t; },
          [slope](double) { return -slope; },
          [](double) { return 0.0; },
          [](double) { return 1.0; },
          [](double) { return 0.0; }};
}

Profile sigmoid_profile(double c) {
  auto s = [c](double t) { return 1.0 / (1.0 + std::exp(c * (t - 0.5))); };
  const double scale = s(0.0) - s(1.0);
  const double floor = s(1.0);
  return {"sigmoid",
          [=](double t) { return (s(t) - floor) / scale; },
          [=](double t) {
            const double st = s(t);
            return -c * st * (1 - st) / scale;
          },
          [=](double t) {
            const double st = s(t);
            return c * c * st * (1 - st) * (1 - 2 * st) / scale;
          },
          [](double) { return 1.0; },
          [](double) { return 0.0; }};
}

Profile with_contrast_weight(Profile p, std::function<double(double)> f,
                             std::function<double(double)> df) {
  auto v = p.v;
  auto dv = p.dv;
  p.w = [f, v](double t) { return f(v(t)); };
  p.dw = [df, v, dv](double t) { return df(v(t)) * dv(t); };
  return p;
}

Profile profile_by_name(const std::string& name) {
  if (name == "exp") return exponential_profile();
  if (name == "linear") return linear_profile();
  if (name == "sigmoid") return sigmoid_profile();
  throw std::invalid_argument("unknown profile '" + name +
                              "' (expected exp, linear or sigmoid)");
}

ExpansionConstants ExpansionConstants::derived() {
  return {0.5 * std::numbers::inv_sqrtpi, 0.5};
}

ExpansionConstants ExpansionConstants::stated() {
  return {std::numbers::inv_sqrtpi, 1.0};
}

double ktilde(const Profile& p, const KernelSpec& k, double t) {
  const double d0 = p.dv(0.0);
  const double d1 = p.dv(1.0);
  if (d0 == 0 || d1 == 0) {
    throw std::domain_error("ktilde: profile slope vanishes at an endpoint");
  }
  const double vt = p.v(t);
  return p.w(1.0) * eval_range_kernel(k, vt - p.v(1.0)) / d1 -
         p.w(0.0) * eval_range_kernel(k, vt - p.v(0.0)) / d0;
}

double predicted_increment(const Profile& p, const KernelSpec& k, double t,
                           ExpansionConstants c) {
  const double dv = p.dv(t);
  const double w = p.w(t);
  if (dv == 0) throw std::domain_error("predicted_increment: v'(t) = 0");
  if (!(w > 0)) throw std::domain_error("predicted_increment: w*(t) <= 0");
  const double h = k.h;
  return c.alpha1 * ktilde(p, k, t) * dv / w * h -
         c.alpha2 * p.d2v(t) / (dv * dv) * h * h +
         c.alpha2 * p.dw(t) / (w * dv) * h * h;
}

namespace {

// Neumaier compensated sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0;
  double carry_ = 0;
};

}  // namespace

double actual_increment(const Profile& p, const KernelSpec& k, double t,
                        long panels) {
  if (panels < 1000) {
    throw std::invalid_argument("actual_increment: need at least 1000 panels");
  }
  const double vt = p.v(t);
  const double ds = 1.0 / static_cast<double>(panels);
  CompensatedSum num;
  CompensatedSum den;
  for (long j = 0; j < panels; ++j) {
    const double s = (static_cast<double>(j) + 0.5) * ds;
    const double vs = p.v(s);
    const double kw = eval_range_kernel(k, vt - vs) * p.w(s);
    num.add(kw * (vs - vt));
    den.add(kw);
  }
  const double result = num.value() / den.value();
  if (!std::isfinite(result)) {
    throw std::domain_error("actual_increment: non-finite quadrature result");
  }
  return result;
}

QuadratureResult actual_increment_converged(const Profile& p,
                                            const KernelSpec& k, double t,
                                            double tolerance,
                                            long start_panels,
                                            long max_panels) {
  long panels = start_panels;
  double previous = actual_increment(p, k, t, panels);
  double change = 0;
  while (true) {
    panels *= 2;
    const double current = actual_increment(p, k, t, panels);
    change = std::abs(current - previous);
    previous = current;
    if (change < tolerance || panels >= max_panels) break;
  }
  return {previous, panels, change};
}

ExpansionReport order_study(const Profile& p,
                            const std::vector<double>& t_grid,
                            const std::vector<double>& h_sequence,
                            ExpansionConstants c,
                            KernelSpec::Family family) {
  if (h_sequence.size() < 4) {
    throw std::invalid_argument("order_study: need at least 4 h values");
  }
  for (std::size_t i = 1; i < h_sequence.size(); ++i) {
    if (!(h_sequence[i] < h_sequence[i - 1])) {
      throw std::invalid_argument(
          "order_study: h sequence must be strictly decreasing");
    }
  }
  if (t_grid.empty()) throw std::invalid_argument("order_study: empty t grid");
  for (double t : t_grid) {
    if (!(t > 0 && t < 1)) {
      throw std::invalid_argument("order_study: t must lie in (0, 1)");
    }
  }

  const std::size_t nt = t_grid.size();
  const auto cells = static_cast<std::ptrdiff_t>(nt * h_sequence.size());
  ExpansionReport report;
  report.rows.resize(static_cast<std::size_t>(cells));
  report.h_values = h_sequence;

  ParallelErrors errors;
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t cell = 0; cell < cells; ++cell) errors.run([&] {
    const double h = h_sequence[static_cast<std::size_t>(cell) / nt];
    const double t = t_grid[static_cast<std::size_t>(cell) % nt];
    KernelSpec k{family, h};
    const QuadratureResult actual = actual_increment_converged(p, k, t);
    const double predicted = predicted_increment(p, k, t, c);
    const double residual = actual.value - predicted;
    report.rows[static_cast<std::size_t>(cell)] = {
        t,        h,
        actual.value, predicted,
        residual, std::abs(residual) / (h * h),
        actual.panels, actual.change};
  });
  errors.rethrow();

  for (std::size_t hi = 0; hi < h_sequence.size(); ++hi) {
    double worst = 0;
    for (std::size_t ti = 0; ti < nt; ++ti) {
      worst = std::max(worst, report.rows[hi * nt + ti].residual_over_h2);
    }
    report.max_ratio.push_back(worst);
  }
  for (std::size_t i = 0; i + 1 < report.max_ratio.size(); ++i) {
    report.decrease_factors.push_back(report.max_ratio[i] /
                                      report.max_ratio[i + 1]);
  }
  for (const ExpansionRow& row : report.rows) {
    report.worst_quadrature_change =
        std::max(report.worst_quadrature_change, row.quadrature_change);
  }
  return report;
}

std::vector<double> parse_range(const std::string& spec) {
  std::istringstream in(spec);
  double a = 0, b = 0, step = 0;
  char c1 = 0, c2 = 0;
  if (!(in >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' ||
      !in.eof()) {
    throw std::invalid_argument("range '" + spec + "' is not a:b:step");
  }
  if (!(step > 0) || b < a) {
    throw std::invalid_argument("range '" + spec + "' is empty");
  }
  const auto count = static_cast<long>(std::floor((b - a) / step + 1e-9)) + 1;
  std::vector<double> out;
  for (long i = 0; i < count; ++i) out.push_back(a + double(i) * step);
  return out;
}

}  // namespace nlr
