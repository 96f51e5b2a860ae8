#ifndef NLR_ANALYSIS_H_
#define NLR_ANALYSIS_H_

#include <functional>
#include <string>
#include <vector>

#include "nlr/kernels.h"

namespace nlr {

/// Smooth decreasing profile v on [0, 1] (v' < 0) together with a positive
/// relative-rearrangement weight w*; both with closed-form derivatives.
struct Profile {
  std::string name;
  std::function<double(double)> v, dv, d2v;
  std::function<double(double)> w, dw;
};

/// v(t) = e^{-t}, w = 1.
Profile exponential_profile();
/// v(t) = 1 - t, w = 1.
Profile linear_profile();
/// Logistic step 1 / (1 + e^{c (t - 1/2)}) rescaled to v(0) = 1, v(1) = 0.
Profile sigmoid_profile(double steepness = 10.0);
/// v(t) = 1 - s t: a steeper linear profile for slope sweeps.
Profile sloped_linear_profile(double slope);
/// Replaces w by f(v(t)) (a weight that is a contrast change of the image).
Profile with_contrast_weight(Profile p, std::function<double(double)> f,
                             std::function<double(double)> df);
/// Looks up "exp", "linear" or "sigmoid"; throws std::invalid_argument.
Profile profile_by_name(const std::string& name);

/// Coefficients of the boundary term and of the h^2 terms in the one-step
/// expansion. derived() carries the values that follow from the Gaussian
/// moments (integration by parts gives the h^2 / 2 factor and the kernel
/// mass is h sqrt(pi)); stated() carries the rounded values 1/sqrt(pi), 1.
struct ExpansionConstants {
  double alpha1;
  double alpha2;

  static ExpansionConstants derived();
  static ExpansionConstants stated();
};

/// Boundary term
///   w*(1) K_h(v(t) - v(1)) / v'(1) - w*(0) K_h(v(t) - v(0)) / v'(0).
/// Throws std::domain_error if v'(0) or v'(1) is zero.
double ktilde(const Profile& p, const KernelSpec& k, double t);

/// alpha1 ktilde v'/w* h - alpha2 v''/v'^2 h^2 + alpha2 w*'/(w* v') h^2.
double predicted_increment(
    const Profile& p, const KernelSpec& k, double t,
    ExpansionConstants c = ExpansionConstants::derived());

/// One exact step on the continuous profile,
///   (1/c(t)) int_0^1 K_h(v(t) - v(s)) (v(s) - v(t)) w*(s) ds,
/// by composite midpoint quadrature with `panels` panels (>= 1000).
double actual_increment(const Profile& p, const KernelSpec& k, double t,
                        long panels);

struct QuadratureResult {
  double value;
  long panels;
  /// |value(panels) - value(panels / 2)|.
  double change;
};

/// Doubles the panel count from `start_panels` until two successive values
/// agree to `tolerance`, or `max_panels` is reached.
QuadratureResult actual_increment_converged(const Profile& p,
                                            const KernelSpec& k, double t,
                                            double tolerance = 1e-10,
                                            long start_panels = 1L << 14,
                                            long max_panels = 1L << 20);

struct ExpansionRow {
  double t;
  double h;
  double actual;
  double predicted;
  double residual;
  double residual_over_h2;
  long panels;
  double quadrature_change;
};

struct ExpansionReport {
  std::vector<ExpansionRow> rows;
  std::vector<double> h_values;
  /// max over t of |residual| / h^2, per h.
  std::vector<double> max_ratio;
  /// max_ratio[i] / max_ratio[i + 1] for consecutive h.
  std::vector<double> decrease_factors;
  /// Largest quadrature self-consistency change over all rows.
  double worst_quadrature_change = 0;
};

/// Residual study over t_grid x h_sequence (h strictly decreasing, at least
/// 4 entries). Grid points are evaluated in parallel; the report order is
/// h-major, then t.
ExpansionReport order_study(
    const Profile& p, const std::vector<double>& t_grid,
    const std::vector<double>& h_sequence,
    ExpansionConstants c = ExpansionConstants::derived(),
    KernelSpec::Family family = KernelSpec::Family::kGaussian);

/// "a:b:step" -> a, a + step, ..., b.
std::vector<double> parse_range(const std::string& spec);

}  // namespace nlr

#endif  // NLR_ANALYSIS_H_
