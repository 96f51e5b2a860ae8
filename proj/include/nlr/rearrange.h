#ifndef NLR_REARRANGE_H_
#define NLR_REARRANGE_H_

#include <cstdint>
#include <span>
#include <vector>

#include "nlr/image.h"
#include "nlr/step_function.h"

namespace nlr {

/// Decreasing rearrangement u_* of a quantized image: u_*(s) = values[i] for
/// s in [a_i, a_{i+1}), with a_0 = 0, a_{i+1} - a_i = |E_{i+1}| and
/// a_n = |Omega|.
class Rearrangement {
 public:
  Rearrangement(std::vector<std::int64_t> breakpoints,
                std::vector<double> values);

  std::size_t num_levels() const { return values_.size(); }
  std::int64_t measure() const { return breakpoints_.back(); }
  std::span<const std::int64_t> breakpoints() const { return breakpoints_; }
  std::span<const double> values() const { return values_; }
  double value(std::size_t i) const { return values_[i]; }
  std::int64_t mass(std::size_t i) const {
    return breakpoints_[i + 1] - breakpoints_[i];
  }

  /// u_*(s); u_*(0) is the maximum and u_*(measure) the minimum.
  double value_at(double s) const;

  StepFunction to_step_function() const;

  bool operator==(const Rearrangement&) const = default;

 private:
  std::vector<std::int64_t> breakpoints_;
  std::vector<double> values_;
};

/// m_u(q) = |{x : u(x) > q}|.
double distribution_function(const QuantizedImage& qimg, double q);

Rearrangement decreasing_rearrangement(const QuantizedImage& qimg);

/// [0, m_1, m_1 + m_2, ..., sum m_i]. Throws on empty input or a
/// non-positive entry.
std::vector<std::int64_t> cumulative_measures(
    std::span<const std::int64_t> measures);
std::vector<double> cumulative_measures(std::span<const double> measures);

/// Relative rearrangement w_{*u} of a non-negative per-pixel field w with
/// respect to u: inside each level segment [a_{i-1}, a_i) the values of w on
/// E_i appear in decreasing order, one segment per distinct value with
/// length |F_j^i|. Level boundaries are kept as breakpoints, so the result
/// always refines u_*.
StepFunction relative_rearrangement(const QuantizedImage& u,
                                    std::span<const double> w);

/// Test oracle: ((u + t w)_* - u_*) / t by explicitly sorting the perturbed
/// image, evaluated in exact rational arithmetic. Requires
/// t * (max w - min w) < min_i (q_i - q_{i+1}) / 2 so no level sets merge.
StepFunction fd_relative_rearrangement_oracle(const QuantizedImage& u,
                                              std::span<const double> w,
                                              double t);

/// Smallest gap between consecutive levels; +inf for a single level.
double min_level_gap(const QuantizedImage& u);

}  // namespace nlr

#endif  // NLR_REARRANGE_H_
