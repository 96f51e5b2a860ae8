#include "nlr/step_function.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nlr {

StepFunction::StepFunction(std::vector<std::int64_t> breakpoints,
                           std::vector<double> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  if (values_.empty() || breakpoints_.size() != values_.size() + 1) {
    throw std::invalid_argument(
        "StepFunction: need K values and K+1 breakpoints, K >= 1");
  }
  if (breakpoints_.front() != 0) {
    throw std::invalid_argument("StepFunction: first breakpoint must be 0");
  }
  for (std::size_t i = 1; i < breakpoints_.size(); ++i) {
    if (breakpoints_[i] <= breakpoints_[i - 1]) {
      throw std::invalid_argument(
          "StepFunction: breakpoints must be strictly increasing");
    }
  }
}

StepFunction StepFunction::constant(std::int64_t measure, double value) {
  return StepFunction({0, measure}, {value});
}

double StepFunction::value_at(double s) const {
  if (s < 0 || s > static_cast<double>(measure())) {
    throw std::out_of_range("StepFunction::value_at: s outside [0, measure]");
  }
  const auto it = std::upper_bound(breakpoints_.begin() + 1,
                                   breakpoints_.end() - 1, s,
                                   [](double x, std::int64_t b) {
                                     return x < static_cast<double>(b);
                                   });
  return values_[static_cast<std::size_t>(it - breakpoints_.begin()) - 1];
}

StepFunction StepFunction::normalized() const {
  std::vector<std::int64_t> bp{0};
  std::vector<double> vals;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!vals.empty() && vals.back() == values_[i]) {
      bp.back() = breakpoints_[i + 1];
    } else {
      vals.push_back(values_[i]);
      bp.push_back(breakpoints_[i + 1]);
    }
  }
  return StepFunction(std::move(bp), std::move(vals));
}

bool StepFunction::refines(std::span<const std::int64_t> coarse) const {
  if (coarse.empty() || coarse.back() != measure()) return false;
  return std::includes(breakpoints_.begin(), breakpoints_.end(),
                       coarse.begin(), coarse.end());
}

double StepFunction::integral() const {
  double total = 0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    total += values_[i] * static_cast<double>(length(i));
  }
  return total;
}

bool StepFunction::operator==(const StepFunction& other) const {
  const StepFunction a = normalized();
  const StepFunction b = other.normalized();
  return a.breakpoints_ == b.breakpoints_ && a.values_ == b.values_;
}

StepFunction combine(const StepFunction& a, const StepFunction& b,
                     const std::function<double(double, double)>& op) {
  if (a.measure() != b.measure()) {
    throw std::invalid_argument("combine: step functions differ in measure");
  }
  std::vector<std::int64_t> bp{0};
  std::vector<double> vals;
  std::size_t i = 0, j = 0;
  while (i < a.num_segments() && j < b.num_segments()) {
    vals.push_back(op(a.value(i), b.value(j)));
    const std::int64_t end_a = a.start(i) + a.length(i);
    const std::int64_t end_b = b.start(j) + b.length(j);
    bp.push_back(std::min(end_a, end_b));
    if (end_a == bp.back()) ++i;
    if (end_b == bp.back()) ++j;
  }
  return StepFunction(std::move(bp), std::move(vals));
}

double integrate_product(const StepFunction& a, const StepFunction& b) {
  return combine(a, b, [](double x, double y) { return x * y; }).integral();
}

double lp_distance(const StepFunction& a, const StepFunction& b, double p) {
  const StepFunction diff =
      combine(a, b, [](double x, double y) { return std::abs(x - y); });
  if (std::isinf(p)) {
    double sup = 0;
    for (double v : diff.values()) sup = std::max(sup, v);
    return sup;
  }
  if (!(p >= 1)) throw std::invalid_argument("lp_distance: need p >= 1");
  double total = 0;
  for (std::size_t i = 0; i < diff.num_segments(); ++i) {
    total += std::pow(diff.value(i), p) * static_cast<double>(diff.length(i));
  }
  return std::pow(total, 1.0 / p);
}

}  // namespace nlr
