#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <unordered_map>

#include "nlr/image.h"

namespace nlr {
namespace {

QuantizedImage quantize_native(const Image& img) {
  std::vector<double> levels(img.pixels().begin(), img.pixels().end());
  std::sort(levels.begin(), levels.end(), std::greater<>());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  std::unordered_map<double, std::int32_t> index;
  index.reserve(levels.size());
  for (std::size_t i = 0; i < levels.size(); ++i) {
    index.emplace(levels[i], static_cast<std::int32_t>(i));
  }
  std::vector<std::int32_t> labels(img.size());
  for (std::size_t k = 0; k < img.size(); ++k) labels[k] = index.at(img[k]);
  return QuantizedImage(img.width(), img.height(), std::move(levels),
                        std::move(labels), img.max_value());
}

QuantizedImage quantize_uniform(const Image& img, int bins) {
  if (bins < 1) {
    throw std::invalid_argument("quantize: uniform mode needs bins >= 1");
  }
  const auto [lo_it, hi_it] =
      std::minmax_element(img.pixels().begin(), img.pixels().end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  if (hi == lo) {
    return QuantizedImage(img.width(), img.height(), {lo},
                          std::vector<std::int32_t>(img.size(), 0),
                          img.max_value());
  }
  const double width = (hi - lo) / bins;

  // Bin b covers [lo + b*width, lo + (b+1)*width); the last bin also takes hi.
  std::vector<std::int32_t> bin_of(img.size());
  std::vector<bool> used(bins, false);
  for (std::size_t k = 0; k < img.size(); ++k) {
    auto b = static_cast<std::int32_t>(std::floor((img[k] - lo) / width));
    b = std::clamp(b, 0, bins - 1);
    bin_of[k] = b;
    used[b] = true;
  }

  // Highest bin gets label 0.
  std::vector<std::int32_t> label_of_bin(bins, -1);
  std::vector<double> levels;
  for (int b = bins - 1; b >= 0; --b) {
    if (!used[b]) continue;
    label_of_bin[b] = static_cast<std::int32_t>(levels.size());
    levels.push_back(lo + (b + 0.5) * width);
  }
  std::vector<std::int32_t> labels(img.size());
  for (std::size_t k = 0; k < img.size(); ++k) {
    labels[k] = label_of_bin[bin_of[k]];
  }
  return QuantizedImage(img.width(), img.height(), std::move(levels),
                        std::move(labels), img.max_value());
}

}  // namespace

QuantizedImage quantize(const Image& img, QuantizeMode mode) {
  switch (mode.kind) {
    case QuantizeMode::Kind::kNative:
      return quantize_native(img);
    case QuantizeMode::Kind::kUniform:
      return quantize_uniform(img, mode.bins);
  }
  throw std::invalid_argument("quantize: unknown mode");
}

}  // namespace nlr
