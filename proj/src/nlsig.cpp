#include "cplmfc/nlsig.hpp"

#include <cmath>
#include <stdexcept>

namespace cplmfc {

double nlsig_eval(double x, const NlsigParams& p) {
  if (!std::isfinite(x)) throw std::invalid_argument("nlsig_eval: non-finite x");
  if (!(p.x_max > p.x_min)) throw std::invalid_argument("nlsig_eval: x_max must exceed x_min");
  if (p.n < 1) throw std::invalid_argument("nlsig_eval: n must be >= 1");
  if (!(p.lambda > 0.0)) throw std::invalid_argument("nlsig_eval: lambda must be > 0");
  if (p.xi != 0 && p.xi != 1) throw std::invalid_argument("nlsig_eval: xi must be 0 or 1");

  const double dx = (p.x_max - p.x_min) / p.n;
  const double dy = (p.y_max - p.y_min) / p.n;
  const double alpha = 2.0 * p.lambda / dx;

  double y = p.y_min;
  for (int i = 0; i < p.n; ++i) {
    const double knot = p.x_min + i * dx;
    const double delta = knot + 0.5 * dx;
    double a = alpha * (x - delta);
    if (p.xi == 1) a = -a;
    // clamp the exponent; beyond +-50 the logistic is saturated to machine precision
    if (a > 50.0) a = 50.0;
    if (a < -50.0) a = -50.0;
    y += dy / (1.0 + std::exp(-a));
  }
  return y;
}

}  // namespace cplmfc
