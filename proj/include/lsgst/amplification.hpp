#ifndef LSGST_AMPLIFICATION_HPP
#define LSGST_AMPLIFICATION_HPP

#include <cmath>
#include <complex>
#include <vector>

#include "lsgst/common.hpp"

namespace lsgst {

// x ~ 0 (mod 2pi) is a removable singularity of both A and zeta; inside this
// window the series limits are used instead.
inline bool phase_is_closed(double x) { return std::abs(std::sin(0.5 * x)) < 1e-6; }

// A(p,x) = (cos(px)-1)/(cos(x)-1) = sin^2(px/2)/sin^2(x/2), limit p^2 at x = 0
inline double amplification_factor(int p, double x) {
  if (phase_is_closed(x)) return double(p) * double(p);
  const double s = std::sin(0.5 * p * x) / std::sin(0.5 * x);
  return s * s;
}

// zeta_b^p = -(prefactor/2) (p sin x - sin px)/(cos x - 1), limit 0 at x = 0
inline double zeta_phase(int p, double x, double prefactor) {
  if (phase_is_closed(x)) return 0.0;
  return -0.5 * prefactor * (p * std::sin(x) - std::sin(p * x)) / (std::cos(x) - 1.0);
}

inline double g_of(int p, double x) { return 0.5 * (p * x / pi - 1.0); }

// depth whose g(p) is closest to an integer; ties resolve to the smallest p
inline int p_max(double x, const std::vector<int>& p_range) {
  if (p_range.empty()) throw config_error("p_max: empty range");
  int best = p_range.front();
  double best_dist = 2.0;
  for (int p : p_range) {
    const double g = g_of(p, x);
    const double dist = std::abs(g - std::round(g));
    if (dist < best_dist - 1e-15) {
      best_dist = dist;
      best = p;
    }
  }
  return best;
}

// cumulative breathing-mode displacement after k = 1..p gates:
// phi * (1 - e^{ikx}) / (1 - e^{ix}); collinear k*phi when x ~ 0
inline std::vector<cplx> trajectory_endpoints(int p, double x, cplx phi) {
  if (p < 1) throw config_error("trajectory_endpoints: p must be >= 1");
  std::vector<cplx> pts;
  pts.reserve(static_cast<std::size_t>(p));
  if (phase_is_closed(x)) {
    for (int k = 1; k <= p; ++k) pts.push_back(double(k) * phi);
    return pts;
  }
  const cplx denom = 1.0 - std::exp(ii * x);
  for (int k = 1; k <= p; ++k) pts.push_back(phi * (1.0 - std::exp(ii * (k * x))) / denom);
  return pts;
}

}  // namespace lsgst

#endif
