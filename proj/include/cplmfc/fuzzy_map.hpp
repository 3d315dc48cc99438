#pragma once

#include <array>
#include <vector>

namespace cplmfc {

// Normalized (omega_n = 1) peak and settling instants of the CPLM response.
struct NormalizedTimes {
  double x_s;
  double x_pk;
};

// Nearest-corner lookup of the tabulated (x_pk, x_s) values.
// Ties round toward the (b=1, c=0) corner. Throws std::domain_error outside [0,1].
NormalizedTimes lookup_times_fsm(double b, double c);

// Regenerates the tabulated values from the analytic model response:
// x_pk is the first local maximum of y_m, x_s the midpoint of the first
// undershoot interval after that peak. Throws std::domain_error for zeta
// outside (0,1).
NormalizedTimes derive_normalized_times(double b, double c, double zeta);

// Type-1 TSK fuzzy inference system over a uniform (b, c) rule grid with
// closed-sigmoid memberships and singleton consequents.
struct FisConfig {
  int grid = 11;                     // rules per axis; M = grid^2
  double width = 0.05;               // membership half-width (half the grid spacing)
  std::vector<double> centers;       // grid centers, shared by both axes
  std::vector<double> xs_conseq;     // row-major [i_b * grid + i_c]
  std::vector<double> xpk_conseq;
};

// Builds the default 11x11 config: corner consequents from the table,
// interior consequents from derive_normalized_times.
FisConfig make_default_fis(double zeta);

// FBF-weighted interpolation. Throws std::domain_error outside [0,1] and
// std::runtime_error if all memberships vanish (unreachable for valid cfg).
NormalizedTimes lookup_times_fis(double b, double c, const FisConfig& cfg);

}  // namespace cplmfc
