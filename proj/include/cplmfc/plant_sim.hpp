#pragma once

#include <Eigen/Dense>
#include <limits>
#include <vector>

namespace cplmfc {

// SISO plant advanced at the loop sampling period with internal RK4 substeps
// and zero-order-hold input. A load disturbance d is added to the commanded
// input before the clamp and the delay buffer.
class Plant {
 public:
  virtual ~Plant() = default;
  virtual double step(double u, double dt) = 0;
  virtual double output() const = 0;
  virtual void reset() = 0;
  void set_disturbance(double d) { dist_ = d; }
  double disturbance() const { return dist_; }

 protected:
  double dist_ = 0.0;
};

inline void add_disturbance(Plant& p, double d) { p.set_disturbance(d); }

// Controllable-canonical realization of N_p(s)/D_p(s) with an input delay
// realized as an integer buffer at the internal step.
class LtiPlant : public Plant {
 public:
  // Coefficients are highest power first; deg N < deg D required.
  LtiPlant(std::vector<double> num, std::vector<double> den, double tau_l,
           double internal_dt,
           double u_max = std::numeric_limits<double>::infinity());

  double step(double u, double dt) override;
  double output() const override;
  void reset() override;

  const Eigen::MatrixXd& A() const { return A_; }
  const std::vector<double>& num() const { return num_in_; }
  const std::vector<double>& den() const { return den_in_; }

 private:
  double deriv_input(double u) const;
  std::vector<double> num_in_, den_in_;
  Eigen::MatrixXd A_;
  Eigen::VectorXd B_, C_;
  Eigen::VectorXd x_;
  std::vector<double> delay_;
  std::size_t delay_pos_ = 0;
  double internal_dt_;
  double u_max_;
};

// Permanent-magnet linear motor: m y'' + b_damp y' = 8.1 u(t - tau_l) - f_F - f_R
// with ripple f_R = 3 sin(2 pi y / 0.0712) and regularized friction
// f_F = (3 + 10 |y'|) tanh(y'/eps).
struct PmlmParams {
  double m = 5.4;
  double b_damp = 35.1;
  double tau_l = 0.0;
  double input_gain = 8.1;
  double ripple_amp = 3.0;
  double ripple_pitch = 0.0712;
  double coulomb = 3.0;
  double viscous = 10.0;
  double friction_eps = 1e-4;
};

class PmlmPlant : public Plant {
 public:
  PmlmPlant(const PmlmParams& p, double internal_dt);

  double step(double u, double dt) override;
  double output() const override { return y_; }
  double velocity() const { return v_; }
  void reset() override;

 private:
  double accel(double y, double v, double u_delayed) const;
  PmlmParams p_;
  double y_ = 0.0, v_ = 0.0;
  std::vector<double> delay_;
  std::size_t delay_pos_ = 0;
  double internal_dt_;
};

}  // namespace cplmfc
