#include "nlr/filters.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "filter_detail.h"
#include "nlr/parallel.h"

namespace nlr {

using detail::weighted_mean;

void FilterConfig::validate() const {
  kernel.validate();
  validate_weight(weight);
}

Image direct_filter(const Image& img, const FilterConfig& cfg) {
  cfg.validate();
  if (const auto* map = std::get_if<WeightMap>(&cfg.weight)) {
    if (map->wbar.width() != img.width() ||
        map->wbar.height() != img.height()) {
      throw std::invalid_argument(
          "direct_filter: weight map size does not match the image");
    }
  }
  const std::size_t size = img.size();
  const auto [lo_it, hi_it] =
      std::minmax_element(img.pixels().begin(), img.pixels().end());
  const double lo = *lo_it;
  const double hi = *hi_it;

  std::vector<double> out(size);
  for (std::size_t x = 0; x < size; ++x) {
    double num = 0;
    double den = 0;
    for (std::size_t y = 0; y < size; ++y) {
      const double w = cfg.use_quantized_weight
                           ? quantized_weight(cfg.weight, x, y, img.width())
                           : exact_weight(cfg.weight, x, y, img.width());
      const double kw = eval_range_kernel(cfg.kernel, img[x] - img[y]) * w;
      num += kw * img[y];
      den += kw;
    }
    out[x] = weighted_mean(num, den, img[x], lo, hi, cfg.underflow);
  }
  return Image(img.width(), img.height(), std::move(out), img.max_value());
}

std::vector<double> nf_filter_levels(const Rearrangement& r,
                                     const KernelSpec& k,
                                     UnderflowPolicy underflow) {
  k.validate();
  const auto n = static_cast<std::ptrdiff_t>(r.num_levels());
  const double lo = r.values().back();
  const double hi = r.values().front();
  std::vector<double> out(r.num_levels());

  ParallelErrors errors;
#pragma omp parallel for schedule(static) if (n >= 256)
  for (std::ptrdiff_t t = 0; t < n; ++t) errors.run([&] {
    const double qk = r.value(t);
    double num = 0;
    double den = 0;
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const double km = eval_range_kernel(k, qk - r.value(i)) *
                        static_cast<double>(r.mass(i));
      num += km * r.value(i);
      den += km;
    }
    out[t] = weighted_mean(num, den, qk, lo, hi, underflow);
  });
  errors.rethrow();
  return out;
}

std::vector<double> weighted_nf_filter_levels(const Rearrangement& r,
                                              const StepFunction& wsu,
                                              const KernelSpec& k,
                                              UnderflowPolicy underflow) {
  k.validate();
  if (!wsu.refines(r.breakpoints())) {
    throw std::invalid_argument(
        "weighted_nf_filter_levels: wsu breakpoints do not refine the "
        "rearrangement");
  }
  // Flatten the segments: level value q_i and weight mass r_j |F_j^i|.
  const std::size_t segments = wsu.num_segments();
  std::vector<double> seg_level(segments);
  std::vector<double> seg_mass(segments);
  for (std::size_t s = 0, i = 0; s < segments; ++s) {
    while (wsu.start(s) >= r.breakpoints()[i + 1]) ++i;
    seg_level[s] = r.value(i);
    seg_mass[s] = wsu.value(s) * static_cast<double>(wsu.length(s));
  }

  const auto n = static_cast<std::ptrdiff_t>(r.num_levels());
  const double lo = r.values().back();
  const double hi = r.values().front();
  std::vector<double> out(r.num_levels());

  ParallelErrors errors;
#pragma omp parallel for schedule(static) if (n >= 128)
  for (std::ptrdiff_t t = 0; t < n; ++t) errors.run([&] {
    const double qk = r.value(t);
    double num = 0;
    double den = 0;
    for (std::size_t s = 0; s < segments; ++s) {
      const double km = eval_range_kernel(k, qk - seg_level[s]) * seg_mass[s];
      num += km * seg_level[s];
      den += km;
    }
    out[t] = weighted_mean(num, den, qk, lo, hi, underflow);
  });
  errors.rethrow();
  return out;
}

Image expand_levels(const QuantizedImage& qimg,
                    const std::vector<double>& level_values) {
  if (level_values.size() != qimg.num_levels()) {
    throw std::invalid_argument("expand_levels: level count mismatch");
  }
  std::vector<double> out(qimg.size());
  for (std::size_t p = 0; p < out.size(); ++p) {
    out[p] = level_values[qimg.label(p)];
  }
  return Image(qimg.width(), qimg.height(), std::move(out), qimg.max_value());
}

namespace {

struct Offset {
  int dx;
  int dy;
  int bin;
};

// Offsets with dx^2 + dy^2 < rho^2.
std::vector<Offset> disc_offsets(double rho) {
  const int r = static_cast<int>(std::ceil(rho));
  std::vector<Offset> out;
  for (int dy = -r; dy <= r; ++dy) {
    for (int dx = -r; dx <= r; ++dx) {
      if (double(dx * dx + dy * dy) < rho * rho) out.push_back({dx, dy, 0});
    }
  }
  return out;
}

// Offsets whose quantized spatial Gaussian weight falls in a bin >= 1.
std::vector<Offset> bilateral_offsets(double rho, int m) {
  std::vector<Offset> out;
  if (m < 2) return out;
  // exp(-d^2/rho^2) > 1/m  <=>  d < rho sqrt(ln m).
  const int r = static_cast<int>(std::ceil(rho * std::sqrt(std::log(m)))) + 1;
  for (int dy = -r; dy <= r; ++dy) {
    for (int dx = -r; dx <= r; ++dx) {
      const double w = gaussian_spatial_weight(double(dx * dx + dy * dy), rho);
      const int bin = gaussian_weight_bin(w, m);
      if (bin >= 1) out.push_back({dx, dy, bin});
    }
  }
  return out;
}

std::pair<double, double> level_range(const QuantizedImage& qimg) {
  return {qimg.levels().back(), qimg.levels().front()};
}

}  // namespace

Image yaroslavsky_filter(const QuantizedImage& qimg, double rho,
                         const KernelSpec& k, UnderflowPolicy underflow) {
  k.validate();
  if (!(rho > 0)) throw std::invalid_argument("yaroslavsky: rho must be > 0");
  const std::vector<Offset> disc = disc_offsets(rho);
  const detail::LevelKernel kernel(k, qimg.levels());
  const int width = qimg.width();
  const int height = qimg.height();
  const std::size_t n = qimg.num_levels();
  const auto [lo, hi] = level_range(qimg);
  std::vector<double> out(qimg.size());

  ParallelErrors errors;
#pragma omp parallel
  {
    std::vector<std::int64_t> counts(n, 0);
    std::vector<std::int32_t> touched;
    touched.reserve(std::min(n, disc.size()));

#pragma omp for schedule(static)
    for (int y = 0; y < height; ++y) errors.run([&] {
      for (int x = 0; x < width; ++x) {
        for (const Offset& o : disc) {
          const int px = x + o.dx;
          const int py = y + o.dy;
          if (px < 0 || px >= width || py < 0 || py >= height) continue;
          const std::int32_t label =
              qimg.label(static_cast<std::size_t>(py) * width + px);
          if (counts[label]++ == 0) touched.push_back(label);
        }
        std::sort(touched.begin(), touched.end());
        const std::size_t p = static_cast<std::size_t>(y) * width + x;
        const std::size_t kx = static_cast<std::size_t>(qimg.label(p));
        double num = 0;
        double den = 0;
        for (std::int32_t i : touched) {
          const double km = kernel(kx, i) * static_cast<double>(counts[i]);
          num += km * qimg.level(i);
          den += km;
          counts[i] = 0;
        }
        touched.clear();
        out[p] = weighted_mean(num, den, qimg.value(p), lo, hi, underflow);
      }
    });
  }
  errors.rethrow();
  return Image(width, height, std::move(out), qimg.max_value());
}

Image bilateral_filter(const QuantizedImage& qimg, double rho, int m,
                       const KernelSpec& k, UnderflowPolicy underflow) {
  k.validate();
  validate_weight(GaussianSpatialWeight{rho, m});
  const std::vector<Offset> disc = bilateral_offsets(rho, m);
  const detail::LevelKernel kernel(k, qimg.levels());
  const int width = qimg.width();
  const int height = qimg.height();
  const std::size_t n = qimg.num_levels();
  const auto bins = static_cast<std::size_t>(m);
  const auto [lo, hi] = level_range(qimg);
  std::vector<double> out(qimg.size());

  ParallelErrors errors;
#pragma omp parallel
  {
    // counts[i * bins + b] = |{y in E_i : bin(w(x,y)) = b}| for b >= 1.
    std::vector<std::int64_t> counts(n * bins, 0);
    std::vector<std::int64_t> in_disc(n, 0);
    std::vector<std::int32_t> touched;

#pragma omp for schedule(static)
    for (int y = 0; y < height; ++y) errors.run([&] {
      for (int x = 0; x < width; ++x) {
        for (const Offset& o : disc) {
          const int px = x + o.dx;
          const int py = y + o.dy;
          if (px < 0 || px >= width || py < 0 || py >= height) continue;
          const std::int32_t label =
              qimg.label(static_cast<std::size_t>(py) * width + px);
          if (in_disc[label]++ == 0) touched.push_back(label);
          ++counts[label * bins + o.bin];
        }
        std::sort(touched.begin(), touched.end());

        const std::size_t p = static_cast<std::size_t>(y) * width + x;
        const std::size_t kx = static_cast<std::size_t>(qimg.label(p));
        const double r_low = gaussian_bin_value(0, m);
        double num = 0;
        double den = 0;
        // i ascending; within a level, weight levels r_j descending (bins
        // from high to low). Levels outside the disc only have the lowest
        // bin.
        auto next_touched = touched.begin();
        for (std::size_t i = 0; i < n; ++i) {
          const double kern = kernel(kx, i);
          const double qi = qimg.level(i);
          std::int64_t low_count = qimg.counts()[i];
          if (next_touched != touched.end() &&
              static_cast<std::size_t>(*next_touched) == i) {
            for (std::size_t b = bins - 1; b >= 1; --b) {
              const std::int64_t c = counts[i * bins + b];
              if (c == 0) continue;
              const double term = kern * gaussian_bin_value(int(b), m) *
                                  static_cast<double>(c);
              num += term * qi;
              den += term;
              counts[i * bins + b] = 0;
            }
            low_count -= in_disc[i];
            in_disc[i] = 0;
            ++next_touched;
          }
          if (low_count > 0) {
            const double term = kern * r_low * static_cast<double>(low_count);
            num += term * qi;
            den += term;
          }
        }
        touched.clear();
        out[p] = weighted_mean(num, den, qimg.value(p), lo, hi, underflow);
      }
    });
  }
  errors.rethrow();
  return Image(width, height, std::move(out), qimg.max_value());
}

Image rearranged_filter(const QuantizedImage& qimg, const FilterConfig& cfg) {
  cfg.validate();
  return std::visit(
      [&](const auto& spec) -> Image {
        using T = std::decay_t<decltype(spec)>;
        if constexpr (std::is_same_v<T, ConstantWeight>) {
          return expand_levels(
              qimg, nf_filter_levels(decreasing_rearrangement(qimg),
                                     cfg.kernel, cfg.underflow));
        } else if constexpr (std::is_same_v<T, WeightMap>) {
          if (spec.wbar.width() != qimg.width() ||
              spec.wbar.height() != qimg.height()) {
            throw std::invalid_argument(
                "rearranged_filter: weight map size does not match the image");
          }
          const StepFunction wsu = relative_rearrangement(qimg, spec.wbar.pixels());
          return expand_levels(
              qimg, weighted_nf_filter_levels(decreasing_rearrangement(qimg),
                                              wsu, cfg.kernel, cfg.underflow));
        } else if constexpr (std::is_same_v<T, BallWeight>) {
          return yaroslavsky_filter(qimg, spec.rho, cfg.kernel, cfg.underflow);
        } else {
          return bilateral_filter(qimg, spec.rho, spec.m, cfg.kernel,
                                  cfg.underflow);
        }
      },
      cfg.weight);
}

}  // namespace nlr
