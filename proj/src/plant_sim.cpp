#include "cplmfc/plant_sim.hpp"

#include <cmath>
#include <stdexcept>

namespace cplmfc {
namespace {

std::size_t delay_slots(double tau_l, double internal_dt) {
  if (tau_l < 0.0) throw std::invalid_argument("plant: tau_l must be >= 0");
  return static_cast<std::size_t>(std::llround(tau_l / internal_dt));
}

}  // namespace

LtiPlant::LtiPlant(std::vector<double> num, std::vector<double> den, double tau_l,
                   double internal_dt, double u_max)
    : num_in_(num), den_in_(den), internal_dt_(internal_dt), u_max_(u_max) {
  if (den.empty() || den.front() == 0.0)
    throw std::invalid_argument("LtiPlant: denominator leading coefficient must be nonzero");
  if (num.size() >= den.size())
    throw std::invalid_argument("LtiPlant: numerator degree must be below denominator degree");
  if (!(internal_dt > 0.0)) throw std::invalid_argument("LtiPlant: internal_dt must be > 0");

  const double lead = den.front();
  for (auto& v : den) v /= lead;
  for (auto& v : num) v /= lead;

  const int n = static_cast<int>(den.size()) - 1;
  A_ = Eigen::MatrixXd::Zero(n, n);
  B_ = Eigen::VectorXd::Zero(n);
  C_ = Eigen::VectorXd::Zero(n);
  for (int i = 0; i + 1 < n; ++i) A_(i, i + 1) = 1.0;
  for (int i = 0; i < n; ++i) A_(n - 1, i) = -den[den.size() - 1 - i];
  B_(n - 1) = 1.0;
  for (std::size_t i = 0; i < num.size(); ++i) C_(num.size() - 1 - i) = num[i];
  x_ = Eigen::VectorXd::Zero(n);
  delay_.assign(delay_slots(tau_l, internal_dt), 0.0);
}

void LtiPlant::reset() {
  x_.setZero();
  std::fill(delay_.begin(), delay_.end(), 0.0);
  delay_pos_ = 0;
  dist_ = 0.0;
}

double LtiPlant::output() const { return C_.dot(x_); }

double LtiPlant::step(double u, double dt) {
  double ue = u + dist_;
  if (ue > u_max_) ue = u_max_;
  if (ue < -u_max_) ue = -u_max_;

  const int nsub = std::max(1, static_cast<int>(std::llround(dt / internal_dt_)));
  const double h = dt / nsub;
  for (int s = 0; s < nsub; ++s) {
    double ud = ue;
    if (!delay_.empty()) {
      ud = delay_[delay_pos_];
      delay_[delay_pos_] = ue;
      delay_pos_ = (delay_pos_ + 1) % delay_.size();
    }
    const Eigen::VectorXd k1 = A_ * x_ + B_ * ud;
    const Eigen::VectorXd k2 = A_ * (x_ + 0.5 * h * k1) + B_ * ud;
    const Eigen::VectorXd k3 = A_ * (x_ + 0.5 * h * k2) + B_ * ud;
    const Eigen::VectorXd k4 = A_ * (x_ + h * k3) + B_ * ud;
    x_ += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  const double y = output();
  if (!std::isfinite(y)) throw std::runtime_error("LtiPlant: non-finite state");
  return y;
}

PmlmPlant::PmlmPlant(const PmlmParams& p, double internal_dt)
    : p_(p), internal_dt_(internal_dt) {
  if (!(p.m > 0.0)) throw std::invalid_argument("PmlmPlant: mass must be > 0");
  if (!(internal_dt > 0.0)) throw std::invalid_argument("PmlmPlant: internal_dt must be > 0");
  delay_.assign(delay_slots(p.tau_l, internal_dt), 0.0);
}

void PmlmPlant::reset() {
  y_ = v_ = 0.0;
  std::fill(delay_.begin(), delay_.end(), 0.0);
  delay_pos_ = 0;
  dist_ = 0.0;
}

double PmlmPlant::accel(double y, double v, double ud) const {
  const double f_R = p_.ripple_amp * std::sin(2.0 * M_PI * y / p_.ripple_pitch);
  const double f_F = (p_.coulomb + p_.viscous * std::abs(v)) * std::tanh(v / p_.friction_eps);
  const double force = p_.input_gain * ud - f_F - f_R;
  return (force - p_.b_damp * v) / p_.m;
}

double PmlmPlant::step(double u, double dt) {
  const double ue = u + dist_;
  const int nsub = std::max(1, static_cast<int>(std::llround(dt / internal_dt_)));
  const double h = dt / nsub;
  for (int s = 0; s < nsub; ++s) {
    double ud = ue;
    if (!delay_.empty()) {
      ud = delay_[delay_pos_];
      delay_[delay_pos_] = ue;
      delay_pos_ = (delay_pos_ + 1) % delay_.size();
    }
    const double k1y = v_, k1v = accel(y_, v_, ud);
    const double k2y = v_ + 0.5 * h * k1v, k2v = accel(y_ + 0.5 * h * k1y, v_ + 0.5 * h * k1v, ud);
    const double k3y = v_ + 0.5 * h * k2v, k3v = accel(y_ + 0.5 * h * k2y, v_ + 0.5 * h * k2v, ud);
    const double k4y = v_ + h * k3v, k4v = accel(y_ + h * k3y, v_ + h * k3v, ud);
    y_ += (h / 6.0) * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
    v_ += (h / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
  }
  if (!std::isfinite(y_) || !std::isfinite(v_))
    throw std::runtime_error("PmlmPlant: non-finite state");
  return y_;
}

}  // namespace cplmfc
