#ifndef NLR_IMAGE_H_
#define NLR_IMAGE_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace nlr {

/// Grayscale intensity field on a width x height pixel grid, row-major.
///
/// Every pixel carries unit measure, so the total measure |Omega| equals the
/// pixel count. Intensities lie in [0, max_value]. Immutable once built.
class Image {
 public:
  static constexpr double kDefaultMaxValue = 255.0;

  /// Throws std::invalid_argument if the dimensions and data disagree or a
  /// value falls outside [0, max_value].
  Image(int width, int height, std::vector<double> intensities,
        double max_value = kDefaultMaxValue);

  /// Constant image.
  static Image filled(int width, int height, double value,
                      double max_value = kDefaultMaxValue);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return intensities_.size(); }
  double max_value() const { return max_value_; }
  double measure() const { return static_cast<double>(size()); }

  double operator[](std::size_t k) const { return intensities_[k]; }
  double at(int x, int y) const {
    return intensities_[static_cast<std::size_t>(y) * width_ + x];
  }
  std::span<const double> pixels() const { return intensities_; }

  bool operator==(const Image&) const = default;

 private:
  int width_;
  int height_;
  double max_value_;
  std::vector<double> intensities_;
};

/// Level-set representation of a piecewise-constant image.
///
/// levels() is strictly decreasing; label(k) indexes levels() (0-based, so
/// label 0 is the brightest level set E_1). counts() holds |E_i| as exact
/// pixel counts.
class QuantizedImage {
 public:
  /// Validates the invariants: strictly decreasing levels, every label in
  /// range, every level used at least once.
  QuantizedImage(int width, int height, std::vector<double> levels,
                 std::vector<std::int32_t> labels,
                 double max_value = Image::kDefaultMaxValue);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return labels_.size(); }
  std::size_t num_levels() const { return levels_.size(); }
  double max_value() const { return max_value_; }

  std::span<const double> levels() const { return levels_; }
  std::span<const std::int32_t> labels() const { return labels_; }
  std::span<const std::int64_t> counts() const { return counts_; }
  double level(std::size_t i) const { return levels_[i]; }
  std::int32_t label(std::size_t k) const { return labels_[k]; }
  double value(std::size_t k) const { return levels_[labels_[k]]; }

  /// |E_i| as reals, for callers that need measure units.
  std::vector<double> measures() const;

  /// labels -> levels, i.e. the quantized image as intensities.
  Image to_image() const;

  bool operator==(const QuantizedImage&) const = default;

 private:
  int width_;
  int height_;
  double max_value_;
  std::vector<double> levels_;
  std::vector<std::int32_t> labels_;
  std::vector<std::int64_t> counts_;
};

struct QuantizeMode {
  enum class Kind { kNative, kUniform };
  Kind kind = Kind::kNative;
  int bins = 0;

  static QuantizeMode native() { return {}; }
  static QuantizeMode uniform(int bins) { return {Kind::kUniform, bins}; }
  bool operator==(const QuantizeMode&) const = default;
};

/// Native mode keeps the distinct intensities as levels. Uniform mode splits
/// [min, max] into `bins` equal half-open bins (the last one closed), maps
/// each pixel to its bin midpoint and drops empty bins.
QuantizedImage quantize(const Image& img, QuantizeMode mode = {});

/// Demo and test image generators.
struct SynthesisKind {
  enum class Kind { kSquares, kGradient, kRandom };
  Kind kind = Kind::kGradient;
  int levels = 2;
  std::uint64_t seed = 1;

  static SynthesisKind squares(int levels) {
    return {Kind::kSquares, levels, 0};
  }
  static SynthesisKind gradient() { return {Kind::kGradient, 0, 0}; }
  static SynthesisKind random(std::uint64_t seed, int levels) {
    return {Kind::kRandom, levels, seed};
  }
};

/// squares: `levels` constant bands of (near) equal measure in raster order.
/// gradient: strictly increasing raster ramp over [0, max_value].
/// random: every pixel drawn from `levels` evenly spaced values, each value
/// present at least once; deterministic in the seed.
/// Throws std::invalid_argument when levels > width*height.
Image synthesize(SynthesisKind kind, int width, int height,
                 double max_value = Image::kDefaultMaxValue);

}  // namespace nlr

#endif  // NLR_IMAGE_H_
