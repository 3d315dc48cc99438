#pragma once

namespace cplmfc {

// n-segment logistic sigmoid. xi=0 selects the increasing form (nlsig-),
// xi=1 the decreasing form (nlsig+).
struct NlsigParams {
  double x_max;
  double x_min;
  double y_max;
  double y_min;
  int n = 1;
  double lambda = 6.0;
  int xi = 0;
};

// Evaluates the n-logistic sigmoid at x. Saturates outside [x_min, x_max].
// Throws std::invalid_argument on invalid params or non-finite x.
double nlsig_eval(double x, const NlsigParams& p);

}  // namespace cplmfc
