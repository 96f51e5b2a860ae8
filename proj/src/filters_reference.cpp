#include <vector>

#include "filter_detail.h"
#include "nlr/filters.h"

namespace nlr::reference {

Image rearranged_filter(const QuantizedImage& qimg, const FilterConfig& cfg) {
  cfg.validate();
  const std::size_t size = qimg.size();
  const std::size_t n = qimg.num_levels();
  const double lo = qimg.levels().back();
  const double hi = qimg.levels().front();
  std::vector<double> out(size);

  for (std::size_t x = 0; x < size; ++x) {
    const QuantizedWeightField field =
        build_weight_field(cfg.weight, x, qimg.width(), qimg.height());
    const std::size_t m = field.levels.size();

    // |F_j^i(x)|
    std::vector<std::int64_t> f(n * m, 0);
    for (std::size_t y = 0; y < size; ++y) {
      ++f[static_cast<std::size_t>(qimg.label(y)) * m + field.assignment[y]];
    }

    const double qk = qimg.value(x);
    double num = 0;
    double den = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double kern = eval_range_kernel(cfg.kernel, qk - qimg.level(i));
      for (std::size_t j = 0; j < m; ++j) {
        const double term =
            kern * field.levels[j] * static_cast<double>(f[i * m + j]);
        num += term * qimg.level(i);
        den += term;
      }
    }
    out[x] = detail::weighted_mean(num, den, qk, lo, hi, cfg.underflow);
  }
  return Image(qimg.width(), qimg.height(), std::move(out), qimg.max_value());
}

}  // namespace nlr::reference
