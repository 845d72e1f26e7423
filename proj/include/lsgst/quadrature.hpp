#ifndef LSGST_QUADRATURE_HPP
#define LSGST_QUADRATURE_HPP

#include <cmath>
#include <functional>
#include <vector>

#include "lsgst/common.hpp"

namespace lsgst::detail {

// 15-point Gauss-Kronrod pair on [-1,1]; the embedded 7-point Gauss rule
// supplies the error estimate.
struct Gk15 {
  static constexpr double xk[8] = {
      0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
      0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
  static constexpr double wk[8] = {
      0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
      0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
  static constexpr double wg[4] = {
      0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};
};

template <class F>
inline void gk15_panel(const F& f, double a, double b, double& kronrod, double& err) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double fk[15];
  for (int i = 0; i < 7; ++i) {
    fk[i] = f(c - h * Gk15::xk[i]);
    fk[14 - i] = f(c + h * Gk15::xk[i]);
  }
  fk[7] = f(c);
  double k = 0.0, g = 0.0;
  for (int i = 0; i < 8; ++i) k += Gk15::wk[i] * (i == 7 ? fk[7] : fk[i] + fk[14 - i]);
  // Gauss nodes sit at the odd Kronrod indices
  for (int i = 0; i < 4; ++i) {
    int j = 2 * i + 1;
    g += Gk15::wg[i] * (j == 7 ? fk[7] : fk[j] + fk[14 - j]);
  }
  kronrod = k * h;
  err = std::abs((k - g) * h);
}

// Adaptive bisection until the summed error estimate meets an absolute
// tolerance. Panels are kept on an explicit stack; worst panel splits first.
template <class F>
inline double integrate_adaptive(const F& f, double a, double b, double abs_tol,
                                 int max_panels = 200000) {
  struct Panel {
    double a, b, val, err;
  };
  std::vector<Panel> panels;
  double v, e;
  gk15_panel(f, a, b, v, e);
  panels.push_back({a, b, v, e});
  int evals = 1;
  while (evals < max_panels) {
    std::size_t worst = 0;
    double total_err = 0.0;
    for (std::size_t i = 0; i < panels.size(); ++i) {
      total_err += panels[i].err;
      if (panels[i].err > panels[worst].err) worst = i;
    }
    if (total_err <= abs_tol) break;
    Panel p = panels[worst];
    const double mid = 0.5 * (p.a + p.b);
    Panel left{p.a, mid, 0, 0}, right{mid, p.b, 0, 0};
    gk15_panel(f, left.a, left.b, left.val, left.err);
    gk15_panel(f, right.a, right.b, right.val, right.err);
    panels[worst] = left;
    panels.push_back(right);
    evals += 2;
  }
  double total = 0.0;
  for (const auto& p : panels) total += p.val;
  return total;
}

}  // namespace lsgst::detail

#endif
