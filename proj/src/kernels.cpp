#include "nlr/kernels.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

namespace nlr {

void KernelSpec::validate() const {
  if (!(h > 0) || !std::isfinite(h)) {
    throw std::invalid_argument("kernel: h must be positive");
  }
  if (family == Family::kPowerLaw) {
    if (!(p > 1)) throw std::invalid_argument("kernel: power law needs p > 1");
    if (!(k0 > 0)) throw std::invalid_argument("kernel: power law needs k0 > 0");
  }
}

double eval_range_kernel(const KernelSpec& k, double xi) {
  const double z = xi / k.h;
  double value = 0;
  switch (k.family) {
    case KernelSpec::Family::kGaussian:
      value = std::exp(-z * z);
      break;
    case KernelSpec::Family::kPowerLaw:
      value = k.k0 / (1.0 + std::pow(std::abs(z), k.p));
      break;
  }
  return value < kKernelUnderflow ? 0.0 : value;
}

KernelTable::KernelTable(const KernelSpec& k, std::span<const double> levels)
    : n_(levels.size()), data_(levels.size() * levels.size()) {
  for (std::size_t i = 1; i < n_; ++i) {
    if (!(levels[i] < levels[i - 1])) {
      throw std::invalid_argument(
          "kernel_table: levels must be strictly decreasing");
    }
  }
  for (std::size_t a = 0; a < n_; ++a) {
    data_[a * n_ + a] = eval_range_kernel(k, 0.0);
    for (std::size_t b = a + 1; b < n_; ++b) {
      const double v = eval_range_kernel(k, levels[a] - levels[b]);
      data_[a * n_ + b] = v;
      data_[b * n_ + a] = v;
    }
  }
}

KernelTable kernel_table(const KernelSpec& k, std::span<const double> levels) {
  return KernelTable(k, levels);
}

void validate_weight(const WeightSpec& w) {
  if (const auto* ball = std::get_if<BallWeight>(&w)) {
    if (!(ball->rho > 0)) throw std::invalid_argument("ball: rho must be > 0");
  } else if (const auto* g = std::get_if<GaussianSpatialWeight>(&w)) {
    if (!(g->rho > 0)) {
      throw std::invalid_argument("bilateral: rho must be > 0");
    }
    if (g->m < 1) throw std::invalid_argument("bilateral: m must be >= 1");
  }
}

bool is_position_independent(const WeightSpec& w) {
  return std::holds_alternative<ConstantWeight>(w) ||
         std::holds_alternative<WeightMap>(w);
}

std::vector<double> QuantizedWeightField::values() const {
  std::vector<double> out(assignment.size());
  for (std::size_t y = 0; y < out.size(); ++y) out[y] = value(y);
  return out;
}

int gaussian_weight_bin(double weight, int m) {
  const auto bin = static_cast<int>(std::ceil(weight * m)) - 1;
  return std::clamp(bin, 0, m - 1);
}

double gaussian_spatial_weight(double d2, double rho) {
  return std::exp(-d2 / (rho * rho));
}

namespace {

double squared_distance(std::size_t x, std::size_t y, int width) {
  const auto w = static_cast<std::size_t>(width);
  const double dx = double(x % w) - double(y % w);
  const double dy = double(x / w) - double(y / w);
  return dx * dx + dy * dy;
}

// Collapses per-pixel values onto their distinct levels, decreasing.
QuantizedWeightField from_values(const std::vector<double>& values) {
  std::map<double, std::int32_t, std::greater<>> index;
  for (double v : values) index.emplace(v, 0);
  QuantizedWeightField field;
  for (auto& [v, i] : index) {
    i = static_cast<std::int32_t>(field.levels.size());
    field.levels.push_back(v);
  }
  field.assignment.resize(values.size());
  for (std::size_t y = 0; y < values.size(); ++y) {
    field.assignment[y] = index.at(values[y]);
  }
  return field;
}

}  // namespace

double exact_weight(const WeightSpec& w, std::size_t x, std::size_t y,
                    int width) {
  return std::visit(
      [&](const auto& spec) -> double {
        using T = std::decay_t<decltype(spec)>;
        if constexpr (std::is_same_v<T, ConstantWeight>) {
          return 1.0;
        } else if constexpr (std::is_same_v<T, WeightMap>) {
          return spec.wbar[y];
        } else if constexpr (std::is_same_v<T, BallWeight>) {
          return squared_distance(x, y, width) < spec.rho * spec.rho ? 1.0
                                                                     : 0.0;
        } else {
          return gaussian_spatial_weight(squared_distance(x, y, width),
                                         spec.rho);
        }
      },
      w);
}

double quantized_weight(const WeightSpec& w, std::size_t x, std::size_t y,
                        int width) {
  if (const auto* g = std::get_if<GaussianSpatialWeight>(&w)) {
    const double exact = exact_weight(w, x, y, width);
    return gaussian_bin_value(gaussian_weight_bin(exact, g->m), g->m);
  }
  return exact_weight(w, x, y, width);
}

QuantizedWeightField build_weight_field(const WeightSpec& w, std::size_t x,
                                        int width, int height) {
  validate_weight(w);
  if (width < 1 || height < 1) {
    throw std::invalid_argument("build_weight_field: empty grid");
  }
  const std::size_t size = std::size_t(width) * height;
  if (x >= size) {
    throw std::out_of_range("build_weight_field: reference pixel off grid");
  }
  if (const auto* map = std::get_if<WeightMap>(&w)) {
    if (map->wbar.width() != width || map->wbar.height() != height) {
      throw std::invalid_argument(
          "build_weight_field: weight map size does not match the grid");
    }
  }
  if (std::holds_alternative<ConstantWeight>(w)) {
    return {{1.0}, std::vector<std::int32_t>(size, 0)};
  }
  std::vector<double> values(size);
  for (std::size_t y = 0; y < size; ++y) {
    values[y] = quantized_weight(w, x, y, width);
  }
  return from_values(values);
}

}  // namespace nlr
