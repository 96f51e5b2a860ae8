#include "nlr/image.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nlr {

Image::Image(int width, int height, std::vector<double> intensities,
             double max_value)
    : width_(width),
      height_(height),
      max_value_(max_value),
      intensities_(std::move(intensities)) {
  if (width < 1 || height < 1) {
    throw std::invalid_argument("Image: dimensions must be positive");
  }
  if (!(max_value > 0.0) || !std::isfinite(max_value)) {
    throw std::invalid_argument("Image: max_value must be positive");
  }
  if (intensities_.size() != static_cast<std::size_t>(width) * height) {
    throw std::invalid_argument("Image: expected " +
                                std::to_string(std::size_t(width) * height) +
                                " intensities, got " +
                                std::to_string(intensities_.size()));
  }
  for (std::size_t k = 0; k < intensities_.size(); ++k) {
    const double v = intensities_[k];
    if (!(v >= 0.0 && v <= max_value)) {
      throw std::invalid_argument("Image: intensity " + std::to_string(v) +
                                  " at pixel " + std::to_string(k) +
                                  " outside [0, " + std::to_string(max_value) +
                                  "]");
    }
  }
}

Image Image::filled(int width, int height, double value, double max_value) {
  if (width < 1 || height < 1) {
    throw std::invalid_argument("Image: dimensions must be positive");
  }
  return Image(width, height,
               std::vector<double>(std::size_t(width) * height, value),
               max_value);
}

QuantizedImage::QuantizedImage(int width, int height,
                               std::vector<double> levels,
                               std::vector<std::int32_t> labels,
                               double max_value)
    : width_(width),
      height_(height),
      max_value_(max_value),
      levels_(std::move(levels)),
      labels_(std::move(labels)),
      counts_(levels_.size(), 0) {
  if (width < 1 || height < 1) {
    throw std::invalid_argument("QuantizedImage: dimensions must be positive");
  }
  if (labels_.size() != static_cast<std::size_t>(width) * height) {
    throw std::invalid_argument("QuantizedImage: label count mismatch");
  }
  if (levels_.empty()) {
    throw std::invalid_argument("QuantizedImage: no levels");
  }
  for (std::size_t i = 1; i < levels_.size(); ++i) {
    if (!(levels_[i] < levels_[i - 1])) {
      throw std::invalid_argument(
          "QuantizedImage: levels must be strictly decreasing");
    }
  }
  if (levels_.back() < 0.0) {
    throw std::invalid_argument("QuantizedImage: negative level");
  }
  const auto n = static_cast<std::int32_t>(levels_.size());
  for (std::int32_t label : labels_) {
    if (label < 0 || label >= n) {
      throw std::invalid_argument("QuantizedImage: label out of range");
    }
    ++counts_[label];
  }
  for (std::int64_t c : counts_) {
    if (c == 0) {
      throw std::invalid_argument("QuantizedImage: empty level set");
    }
  }
}

std::vector<double> QuantizedImage::measures() const {
  return {counts_.begin(), counts_.end()};
}

Image QuantizedImage::to_image() const {
  std::vector<double> out(labels_.size());
  for (std::size_t k = 0; k < labels_.size(); ++k) out[k] = levels_[labels_[k]];
  return Image(width_, height_, std::move(out), max_value_);
}

}  // namespace nlr
