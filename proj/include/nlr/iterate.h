#ifndef NLR_ITERATE_H_
#define NLR_ITERATE_H_

#include <optional>
#include <vector>

#include "nlr/image.h"
#include "nlr/kernels.h"
#include "nlr/rearrange.h"
#include "nlr/step_function.h"

namespace nlr {

/// State of the iterated (weighted) Neighborhood filter on the level-set
/// representation. Labels of `base` never change; only the value carried by
/// each level set evolves. `w_star` is the relative rearrangement of the
/// weight with respect to the initial image and stays fixed.
struct IterationState {
  int step = 0;
  std::vector<double> levels;
  StepFunction w_star;
  QuantizedImage base;
  bool record_history = false;
  std::vector<std::vector<double>> history;
};

/// v_0 = base levels; w_star from `weight` (one value per pixel) or w = 1.
IterationState make_iteration_state(
    QuantizedImage base,
    std::optional<std::vector<double>> weight = std::nullopt,
    bool record_history = false);

/// One step of
///   v_{n+1}(t) = sum_s K(v_n(t) - v_n(s)) v_n(s) w*(s) |s|
///              / sum_s K(v_n(t) - v_n(s)) w*(s) |s|
/// over the segments s of w_star, once per level. A level whose denominator
/// underflows keeps its value.
IterationState step(const IterationState& st, const KernelSpec& k);

/// Steps until max_iter, or until max_k |v_{n+1}[k] - v_n[k]| / Q < tol.
IterationState run(IterationState st, const KernelSpec& k, int max_iter,
                   double tol);

/// output(x) = level_values[label(x)].
Image reconstruct(const QuantizedImage& base,
                  const std::vector<double>& level_values);

struct ContrastChangeReport {
  /// False if some level set of u0 maps to more than one value in u1.
  bool is_function_of_input = true;
  /// g non-decreasing in the input level.
  bool weakly_monotone = true;
  /// g strictly increasing in the input level.
  bool strictly_monotone = true;
  /// Adjacent level pairs with g(q_{i+1}) > g(q_i).
  int order_violations = 0;
  /// Adjacent level pairs with g(q_{i+1}) == g(q_i).
  int ties = 0;
  /// g sampled at each level of u0 (same order as u0.levels()).
  std::vector<double> table;
};

/// Checks that u1 = g(u0) pixel-wise for a monotone g.
ContrastChangeReport contrast_change_check(const QuantizedImage& u0,
                                           const Image& u1);

}  // namespace nlr

#endif  // NLR_ITERATE_H_
