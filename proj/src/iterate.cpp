#include "nlr/iterate.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "filter_detail.h"

namespace nlr {

IterationState make_iteration_state(QuantizedImage base,
                                    std::optional<std::vector<double>> weight,
                                    bool record_history) {
  StepFunction w_star =
      weight ? relative_rearrangement(base, *weight)
             : relative_rearrangement(base,
                                      std::vector<double>(base.size(), 1.0));
  std::vector<double> levels(base.levels().begin(), base.levels().end());
  IterationState st{0, levels, std::move(w_star), std::move(base),
                    record_history, {}};
  if (record_history) st.history.push_back(st.levels);
  return st;
}

IterationState step(const IterationState& st, const KernelSpec& k) {
  k.validate();
  const std::size_t n = st.levels.size();
  if (n != st.base.num_levels()) {
    throw std::invalid_argument("step: level count does not match base");
  }
  const Rearrangement r = decreasing_rearrangement(st.base);
  if (!st.w_star.refines(r.breakpoints())) {
    throw std::invalid_argument("step: w_star does not refine the base");
  }

  const std::size_t segments = st.w_star.num_segments();
  std::vector<double> seg_value(segments);
  std::vector<double> seg_mass(segments);
  for (std::size_t s = 0, i = 0; s < segments; ++s) {
    while (st.w_star.start(s) >= r.breakpoints()[i + 1]) ++i;
    seg_value[s] = st.levels[i];
    seg_mass[s] = st.w_star.value(s) * static_cast<double>(st.w_star.length(s));
  }
  const auto [lo_it, hi_it] =
      std::minmax_element(st.levels.begin(), st.levels.end());
  const double lo = *lo_it;
  const double hi = *hi_it;

  std::vector<double> next(n);
  const auto levels = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static) if (levels >= 128)
  for (std::ptrdiff_t t = 0; t < levels; ++t) {
    const double vt = st.levels[t];
    double num = 0;
    double den = 0;
    for (std::size_t s = 0; s < segments; ++s) {
      const double km = eval_range_kernel(k, vt - seg_value[s]) * seg_mass[s];
      num += km * seg_value[s];
      den += km;
    }
    next[t] = detail::weighted_mean(num, den, vt, lo, hi,
                                    UnderflowPolicy::kKeepInput);
  }

  IterationState out{st.step + 1, std::move(next), st.w_star, st.base,
                     st.record_history, st.history};
  if (out.record_history) out.history.push_back(out.levels);
  return out;
}

IterationState run(IterationState st, const KernelSpec& k, int max_iter,
                   double tol) {
  if (max_iter < 1) throw std::invalid_argument("run: max_iter must be >= 1");
  if (!(tol >= 0)) throw std::invalid_argument("run: tol must be >= 0");
  const double q = st.base.max_value();
  for (int it = 0; it < max_iter; ++it) {
    IterationState next = step(st, k);
    double change = 0;
    for (std::size_t i = 0; i < next.levels.size(); ++i) {
      change = std::max(change, std::abs(next.levels[i] - st.levels[i]));
    }
    st = std::move(next);
    if (change / q < tol) break;
  }
  return st;
}

Image reconstruct(const QuantizedImage& base,
                  const std::vector<double>& level_values) {
  if (level_values.size() != base.num_levels()) {
    throw std::invalid_argument("reconstruct: expected " +
                                std::to_string(base.num_levels()) +
                                " level values, got " +
                                std::to_string(level_values.size()));
  }
  std::vector<double> out(base.size());
  for (std::size_t p = 0; p < out.size(); ++p) {
    out[p] = level_values[base.label(p)];
  }
  return Image(base.width(), base.height(), std::move(out), base.max_value());
}

ContrastChangeReport contrast_change_check(const QuantizedImage& u0,
                                           const Image& u1) {
  if (u1.size() != u0.size()) {
    throw std::invalid_argument("contrast_change_check: size mismatch");
  }
  ContrastChangeReport report;
  const std::size_t n = u0.num_levels();
  std::vector<bool> seen(n, false);
  report.table.assign(n, 0.0);
  for (std::size_t p = 0; p < u0.size(); ++p) {
    const auto i = static_cast<std::size_t>(u0.label(p));
    if (!seen[i]) {
      seen[i] = true;
      report.table[i] = u1[p];
    } else if (report.table[i] != u1[p]) {
      report.is_function_of_input = false;
    }
  }
  // levels are decreasing, so g is non-decreasing iff table is non-increasing.
  for (std::size_t i = 1; i < n; ++i) {
    if (report.table[i] > report.table[i - 1]) {
      ++report.order_violations;
    } else if (report.table[i] == report.table[i - 1]) {
      ++report.ties;
    }
  }
  report.weakly_monotone =
      report.is_function_of_input && report.order_violations == 0;
  report.strictly_monotone = report.weakly_monotone && report.ties == 0;
  return report;
}

}  // namespace nlr
