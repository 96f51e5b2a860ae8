#include "nlr/rearrange.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace nlr {

Rearrangement::Rearrangement(std::vector<std::int64_t> breakpoints,
                             std::vector<double> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  if (values_.empty() || breakpoints_.size() != values_.size() + 1 ||
      breakpoints_.front() != 0) {
    throw std::invalid_argument("Rearrangement: malformed breakpoints");
  }
  for (std::size_t i = 1; i < breakpoints_.size(); ++i) {
    if (breakpoints_[i] <= breakpoints_[i - 1]) {
      throw std::invalid_argument(
          "Rearrangement: breakpoints must be strictly increasing");
    }
  }
  for (std::size_t i = 1; i < values_.size(); ++i) {
    if (!(values_[i] < values_[i - 1])) {
      throw std::invalid_argument(
          "Rearrangement: values must be strictly decreasing");
    }
  }
}

double Rearrangement::value_at(double s) const {
  return to_step_function().value_at(s);
}

StepFunction Rearrangement::to_step_function() const {
  return StepFunction(breakpoints_, values_);
}

double distribution_function(const QuantizedImage& qimg, double q) {
  std::int64_t total = 0;
  for (std::size_t i = 0; i < qimg.num_levels(); ++i) {
    if (qimg.level(i) > q) total += qimg.counts()[i];
  }
  return static_cast<double>(total);
}

Rearrangement decreasing_rearrangement(const QuantizedImage& qimg) {
  return Rearrangement(cumulative_measures(qimg.counts()),
                       {qimg.levels().begin(), qimg.levels().end()});
}

std::vector<std::int64_t> cumulative_measures(
    std::span<const std::int64_t> measures) {
  if (measures.empty()) {
    throw std::invalid_argument("cumulative_measures: empty input");
  }
  std::vector<std::int64_t> out{0};
  out.reserve(measures.size() + 1);
  for (std::int64_t m : measures) {
    if (m <= 0) {
      throw std::invalid_argument("cumulative_measures: non-positive measure");
    }
    out.push_back(out.back() + m);
  }
  return out;
}

std::vector<double> cumulative_measures(std::span<const double> measures) {
  if (measures.empty()) {
    throw std::invalid_argument("cumulative_measures: empty input");
  }
  std::vector<double> out{0.0};
  out.reserve(measures.size() + 1);
  for (double m : measures) {
    if (!(m > 0)) {
      throw std::invalid_argument("cumulative_measures: non-positive measure");
    }
    out.push_back(out.back() + m);
  }
  return out;
}

StepFunction relative_rearrangement(const QuantizedImage& u,
                                    std::span<const double> w) {
  if (w.size() != u.size()) {
    throw std::invalid_argument(
        "relative_rearrangement: weight field size does not match image");
  }
  for (double v : w) {
    if (!(v >= 0) || !std::isfinite(v)) {
      throw std::invalid_argument(
          "relative_rearrangement: weights must be finite and non-negative");
    }
  }

  // Bucket weights by level set (counting sort on labels).
  const std::size_t n = u.num_levels();
  std::vector<std::size_t> offset = {0};
  for (std::size_t i = 0; i < n; ++i) {
    offset.push_back(offset.back() + static_cast<std::size_t>(u.counts()[i]));
  }
  std::vector<double> bucketed(w.size());
  {
    std::vector<std::size_t> cursor(offset.begin(), offset.end() - 1);
    for (std::size_t k = 0; k < w.size(); ++k) {
      bucketed[cursor[u.label(k)]++] = w[k];
    }
  }

  std::vector<std::int64_t> bp{0};
  std::vector<double> vals;
  for (std::size_t i = 0; i < n; ++i) {
    auto first = bucketed.begin() + static_cast<std::ptrdiff_t>(offset[i]);
    auto last = bucketed.begin() + static_cast<std::ptrdiff_t>(offset[i + 1]);
    std::sort(first, last, std::greater<>());
    // One segment per distinct value: F_j^i.
    for (auto it = first; it != last;) {
      auto run_end = std::find_if(it, last, [&](double v) { return v != *it; });
      vals.push_back(*it);
      bp.push_back(bp.back() + (run_end - it));
      it = run_end;
    }
  }
  return StepFunction(std::move(bp), std::move(vals));
}

double min_level_gap(const QuantizedImage& u) {
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < u.num_levels(); ++i) {
    gap = std::min(gap, u.level(i - 1) - u.level(i));
  }
  return gap;
}

}  // namespace nlr
