#include "cobos/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace cobos {

namespace {

// 15-point Kronrod extension of 7-point Gauss (QUADPACK values).
constexpr double xgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double wgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  double value;
  double error;
};

Panel evaluate_panel(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double fv[15];
  for (int i = 0; i < 7; ++i) {
    fv[i] = f(center - half * xgk[i]);
    fv[14 - i] = f(center + half * xgk[i]);
  }
  fv[7] = f(center);
  double kronrod = 0.0;
  for (int i = 0; i < 7; ++i) kronrod += wgk[i] * (fv[i] + fv[14 - i]);
  kronrod += wgk[7] * fv[7];
  double gauss = wg[3] * fv[7];
  for (int i = 0; i < 3; ++i) gauss += wg[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);
  kronrod *= half;
  gauss *= half;
  const double diff = std::abs(kronrod - gauss);
  // QUADPACK-style sharpened error estimate.
  double resabs = 0.0;
  for (int i = 0; i < 7; ++i) resabs += wgk[i] * (std::abs(fv[i]) + std::abs(fv[14 - i]));
  resabs += wgk[7] * std::abs(fv[7]);
  resabs *= half;
  double err = diff;
  if (resabs > 0.0 && diff > 0.0) err = resabs * std::min(1.0, std::pow(200.0 * diff / resabs, 1.5));
  return {a, b, kronrod, err};
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double rel_tol, double abs_tol, int max_intervals) {
  QuadratureResult res;
  if (a == b) return res;
  std::vector<Panel> panels;
  panels.push_back(evaluate_panel(f, a, b));
  res.evaluations = 15;
  for (;;) {
    double total = 0.0, err = 0.0;
    for (const Panel& p : panels) {
      total += p.value;
      err += p.error;
    }
    if (std::isnan(total))
      throw numeric_error("integrate_adaptive: NaN encountered in integrand");
    const double tol = std::max(abs_tol, rel_tol * std::abs(total));
    if (err <= tol || static_cast<int>(panels.size()) >= max_intervals) {
      if (err > tol && err > 1e3 * std::max(abs_tol, rel_tol * std::abs(total))) {
        std::ostringstream os;
        os << "integrate_adaptive: failed to converge: intervals=" << panels.size()
           << " error=" << err << " value=" << total << " tol=" << tol;
        throw numeric_error(os.str());
      }
      res.value = total;
      res.error_estimate = err;
      res.intervals = static_cast<int>(panels.size());
      return res;
    }
    auto worst = std::max_element(panels.begin(), panels.end(),
                                  [](const Panel& x, const Panel& y) { return x.error < y.error; });
    const Panel w = *worst;
    const double mid = 0.5 * (w.a + w.b);
    *worst = evaluate_panel(f, w.a, mid);
    panels.push_back(evaluate_panel(f, mid, w.b));
    res.evaluations += 30;
  }
}

double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol,
                 double abs_tol) {
  return integrate_adaptive(f, a, b, rel_tol, abs_tol).value;
}

}  // namespace cobos
