#ifndef NLR_KERNELS_H_
#define NLR_KERNELS_H_

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "nlr/image.h"

namespace nlr {

/// Range kernel K_h(xi) = K(xi / h).
///   gaussian:  K(xi) = exp(-xi^2)
///   power_law: K(xi) = k0 / (1 + |xi|^p), p > 1, k0 > 0
struct KernelSpec {
  enum class Family { kGaussian, kPowerLaw };
  Family family = Family::kGaussian;
  double h = 1.0;
  double p = 2.0;
  double k0 = 1.0;

  static KernelSpec gaussian(double h) { return {Family::kGaussian, h}; }
  static KernelSpec power_law(double h, double p, double k0) {
    return {Family::kPowerLaw, h, p, k0};
  }

  /// Throws std::invalid_argument on h <= 0, p <= 1 or k0 <= 0.
  void validate() const;
  bool operator==(const KernelSpec&) const = default;
};

/// Values below this are flushed to zero.
inline constexpr double kKernelUnderflow = 1e-300;

/// K_h(xi); in [0, K(0)], zero only after underflow.
double eval_range_kernel(const KernelSpec& k, double xi);

/// Dense n x n table of K_h(q_k - q_i).
class KernelTable {
 public:
  KernelTable(const KernelSpec& k, std::span<const double> levels);
  std::size_t size() const { return n_; }
  double operator()(std::size_t k, std::size_t i) const {
    return data_[k * n_ + i];
  }

 private:
  std::size_t n_;
  std::vector<double> data_;
};

/// Requires strictly decreasing levels.
KernelTable kernel_table(const KernelSpec& k, std::span<const double> levels);

struct ConstantWeight {
  bool operator==(const ConstantWeight&) const = default;
};
/// w(x, y) = wbar(y).
struct WeightMap {
  Image wbar;
  bool operator==(const WeightMap&) const = default;
};
/// w(x, y) = 1 if |x - y| < rho else 0 (pixel-center distance).
struct BallWeight {
  double rho = 1.0;
  bool operator==(const BallWeight&) const = default;
};
/// w(x, y) = exp(-|x - y|^2 / rho^2), quantized to m uniform bins over (0, 1].
struct GaussianSpatialWeight {
  double rho = 1.0;
  int m = 8;
  bool operator==(const GaussianSpatialWeight&) const = default;
};

using WeightSpec =
    std::variant<ConstantWeight, WeightMap, BallWeight, GaussianSpatialWeight>;

/// Throws std::invalid_argument on rho <= 0 or m < 1.
void validate_weight(const WeightSpec& w);

/// True for weights that depend on y only (constant, weight map).
bool is_position_independent(const WeightSpec& w);

/// Weight levels r_1 > ... > r_m >= 0 with a per-pixel level index.
struct QuantizedWeightField {
  std::vector<double> levels;
  std::vector<std::int32_t> assignment;

  double value(std::size_t y) const { return levels[assignment[y]]; }
  /// Per-pixel weights as reals.
  std::vector<double> values() const;
};

/// Quantized w(x, .) for reference pixel x on a width x height grid. Levels
/// are those actually present, strictly decreasing.
QuantizedWeightField build_weight_field(const WeightSpec& w, std::size_t x,
                                        int width, int height);

/// Bin index in [0, m) of a spatial Gaussian weight: bins (b/m, (b+1)/m].
int gaussian_weight_bin(double weight, int m);
/// Midpoint representative of bin b.
inline double gaussian_bin_value(int bin, int m) { return (bin + 0.5) / m; }
/// exp(-d2 / rho^2).
double gaussian_spatial_weight(double d2, double rho);

/// Unquantized w(x, y) on the grid.
double exact_weight(const WeightSpec& w, std::size_t x, std::size_t y,
                    int width);
/// Quantized w(x, y); equals exact_weight except for the spatial Gaussian.
double quantized_weight(const WeightSpec& w, std::size_t x, std::size_t y,
                        int width);

}  // namespace nlr

#endif  // NLR_KERNELS_H_
