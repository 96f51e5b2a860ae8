#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "nlr/rearrange.h"

namespace nlr {

StepFunction fd_relative_rearrangement_oracle(const QuantizedImage& u,
                                              std::span<const double> w,
                                              double t) {
  if (w.size() != u.size()) {
    throw std::invalid_argument(
        "fd_relative_rearrangement_oracle: weight field size mismatch");
  }
  if (!(t > 0) || !std::isfinite(t)) {
    throw std::invalid_argument("fd_relative_rearrangement_oracle: t <= 0");
  }
  const auto [w_lo, w_hi] = std::minmax_element(w.begin(), w.end());
  if (!(t * (*w_hi - *w_lo) < 0.5 * min_level_gap(u))) {
    throw std::invalid_argument(
        "fd_relative_rearrangement_oracle: t too large, perturbed level sets "
        "would merge");
  }

  const std::size_t size = u.size();
  const mpq_class step(t);
  std::vector<mpq_class> perturbed(size);
  std::vector<mpq_class> plain(size);
  for (std::size_t k = 0; k < size; ++k) {
    plain[k] = mpq_class(u.value(k));
    perturbed[k] = plain[k] + step * mpq_class(w[k]);
  }
  std::sort(perturbed.begin(), perturbed.end(), std::greater<>());
  std::sort(plain.begin(), plain.end(), std::greater<>());

  std::vector<std::int64_t> bp{0};
  std::vector<double> vals;
  for (std::size_t s = 0; s < size; ++s) {
    const mpq_class quotient = (perturbed[s] - plain[s]) / step;
    const double value = quotient.get_d();
    const bool same_level = s > 0 && plain[s] == plain[s - 1];
    if (same_level && vals.back() == value) {
      ++bp.back();
    } else {
      vals.push_back(value);
      bp.push_back(bp.back() + 1);
    }
  }
  return StepFunction(std::move(bp), std::move(vals));
}

}  // namespace nlr
