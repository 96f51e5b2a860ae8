#ifndef NLR_SRC_FILTER_DETAIL_H_
#define NLR_SRC_FILTER_DETAIL_H_

#include <algorithm>
#include <optional>
#include <span>
#include <stdexcept>

#include "nlr/filters.h"

namespace nlr::detail {

inline constexpr double kDenominatorUnderflow = 1e-300;

// num / den clamped to [lo, hi] (the exact value is a convex combination of
// values in that range; the clamp only absorbs last-bit rounding).
inline double weighted_mean(double num, double den, double fallback,
                            double lo, double hi, UnderflowPolicy policy) {
  if (!(den >= kDenominatorUnderflow)) {
    if (policy == UnderflowPolicy::kThrow) {
      throw std::domain_error("filter: normalization sum underflowed");
    }
    return fallback;
  }
  return std::clamp(num / den, lo, hi);
}

// K_h(q_k - q_i) from a table when n is small enough, else on the fly.
class LevelKernel {
 public:
  static constexpr std::size_t kMaxTabulated = 2048;

  LevelKernel(const KernelSpec& k, std::span<const double> levels)
      : spec_(k), levels_(levels) {
    if (levels.size() <= kMaxTabulated) table_.emplace(k, levels);
  }

  double operator()(std::size_t k, std::size_t i) const {
    if (table_) return (*table_)(k, i);
    return eval_range_kernel(spec_, levels_[k] - levels_[i]);
  }

 private:
  KernelSpec spec_;
  std::span<const double> levels_;
  std::optional<KernelTable> table_;
};

}  // namespace nlr::detail

#endif  // NLR_SRC_FILTER_DETAIL_H_
