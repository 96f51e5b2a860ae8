#ifndef NLR_FILTERS_H_
#define NLR_FILTERS_H_

#include <vector>

#include "nlr/image.h"
#include "nlr/kernels.h"
#include "nlr/rearrange.h"
#include "nlr/step_function.h"

namespace nlr {

/// What to do when the normalization sum C(x) underflows (< 1e-300).
enum class UnderflowPolicy {
  kKeepInput,  // output(x) = u(x)
  kThrow,      // std::domain_error
};

struct FilterConfig {
  KernelSpec kernel;
  WeightSpec weight = ConstantWeight{};
  /// direct_filter only: substitute the quantized spatial weight into the
  /// pixel sum instead of the exact one.
  bool use_quantized_weight = true;
  UnderflowPolicy underflow = UnderflowPolicy::kKeepInput;

  void validate() const;
};

/// Brute-force pixel-space filter
///   F u(x) = sum_y K_h(u(x) - u(y)) w(x,y) u(y) / sum_y K_h(u(x) - u(y)) w(x,y)
/// with y ascending. Serial, O(N^2); the correctness oracle for everything
/// else in this header.
Image direct_filter(const Image& img, const FilterConfig& cfg);

/// Filter evaluated on the level-set representation. Dispatches to the
/// specialized path for the weight family:
///   constant    -> nf_filter_levels          (once per level)
///   weight map  -> weighted_nf_filter_levels (once per level)
///   ball        -> yaroslavsky_filter        (per pixel, disc scan)
///   bilateral   -> bilateral_filter          (per pixel, disc scan + bins)
/// Per-pixel and per-level work runs under OpenMP; results do not depend on
/// the thread count.
Image rearranged_filter(const QuantizedImage& qimg, const FilterConfig& cfg);

/// Neighborhood filter output per level:
///   out[k] = sum_i K(q_k - q_i) q_i |E_i| / sum_i K(q_k - q_i) |E_i|.
std::vector<double> nf_filter_levels(
    const Rearrangement& r, const KernelSpec& k,
    UnderflowPolicy underflow = UnderflowPolicy::kKeepInput);

/// Weighted Neighborhood filter output per level, summing over the segments
/// of the relative rearrangement wsu (each carries r_j and |F_j^i|). Throws
/// std::invalid_argument unless wsu's breakpoints refine r's.
std::vector<double> weighted_nf_filter_levels(
    const Rearrangement& r, const StepFunction& wsu, const KernelSpec& k,
    UnderflowPolicy underflow = UnderflowPolicy::kKeepInput);

/// Yaroslavsky filter: level counts |E_i ∩ B_rho(x)| from a precomputed
/// disc-offset list.
Image yaroslavsky_filter(
    const QuantizedImage& qimg, double rho, const KernelSpec& k,
    UnderflowPolicy underflow = UnderflowPolicy::kKeepInput);

/// Bilateral filter with the spatial weight quantized to m bins. Pixels in
/// bins >= 1 are counted over a disc; the lowest bin is the complement.
Image bilateral_filter(
    const QuantizedImage& qimg, double rho, int m, const KernelSpec& k,
    UnderflowPolicy underflow = UnderflowPolicy::kKeepInput);

/// labels -> per-level values.
Image expand_levels(const QuantizedImage& qimg,
                    const std::vector<double>& level_values);

namespace reference {

/// Serial, literal evaluation of the rearranged formula: for every pixel x,
/// build w(x, .) with build_weight_field, count every |F_j^i(x)| by a full
/// scan, then sum over i and j ascending. O(N^2); kept as the baseline for
/// the OpenMP paths.
Image rearranged_filter(const QuantizedImage& qimg, const FilterConfig& cfg);

}  // namespace reference

}  // namespace nlr

#endif  // NLR_FILTERS_H_
