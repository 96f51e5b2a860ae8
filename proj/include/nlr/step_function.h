#ifndef NLR_STEP_FUNCTION_H_
#define NLR_STEP_FUNCTION_H_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace nlr {

/// Right-continuous piecewise-constant function on [0, measure).
///
/// Breakpoints are exact pixel counts b_0 = 0 < b_1 < ... < b_K; value(i)
/// holds on [b_i, b_{i+1}). The stored segmentation is kept as built (so it
/// can carry level boundaries); equality compares normal forms, where
/// adjacent equal-valued segments are merged.
class StepFunction {
 public:
  StepFunction(std::vector<std::int64_t> breakpoints,
               std::vector<double> values);

  /// One segment [0, measure) with the given value.
  static StepFunction constant(std::int64_t measure, double value);

  std::size_t num_segments() const { return values_.size(); }
  std::int64_t measure() const { return breakpoints_.back(); }
  std::span<const std::int64_t> breakpoints() const { return breakpoints_; }
  std::span<const double> values() const { return values_; }
  double value(std::size_t i) const { return values_[i]; }
  std::int64_t start(std::size_t i) const { return breakpoints_[i]; }
  std::int64_t length(std::size_t i) const {
    return breakpoints_[i + 1] - breakpoints_[i];
  }

  /// Value at s in [0, measure). The left-limit value is returned at
  /// s == measure.
  double value_at(double s) const;

  /// Adjacent equal values merged.
  StepFunction normalized() const;

  /// True if every point of `coarse` is also a breakpoint here.
  bool refines(std::span<const std::int64_t> coarse) const;

  /// Sum of value * length.
  double integral() const;

  bool operator==(const StepFunction& other) const;

 private:
  std::vector<std::int64_t> breakpoints_;
  std::vector<double> values_;
};

/// Pointwise op(a, b) on the union of both breakpoint sets. Both inputs must
/// share the same measure.
StepFunction combine(const StepFunction& a, const StepFunction& b,
                     const std::function<double(double, double)>& op);

/// Integral of a * b over [0, measure).
double integrate_product(const StepFunction& a, const StepFunction& b);

/// ||a - b||_p from exact segment lengths; p = infinity gives the sup norm.
double lp_distance(const StepFunction& a, const StepFunction& b, double p);

}  // namespace nlr

#endif  // NLR_STEP_FUNCTION_H_
