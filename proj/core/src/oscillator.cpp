#include "gcs/oscillator.hpp"

#include <cmath>
#include <stdexcept>

namespace gcs {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double oscillator_argument(double x, const UnitSystem& units) {
  return std::sqrt(units.omega / 2.0) * (x + 2.0 * units.k / units.omega);
}

double eval_psi(int n, double x, const UnitSystem& units) {
  if (n < 0) throw std::invalid_argument("eval_psi: negative level index");
  double z = oscillator_argument(x, units);
  double phi_prev = 0.0;
  double phi = std::pow(units.omega / (2.0 * kPi), 0.25) *
               std::exp(-z * z / 2.0);
  for (int j = 0; j < n; ++j) {
    double phi_next = z * std::sqrt(2.0 / (j + 1)) * phi -
                      std::sqrt(static_cast<double>(j) / (j + 1)) * phi_prev;
    phi_prev = phi;
    phi = phi_next;
  }
  return phi;
}

std::vector<double> eval_psi_up_to(int n_max, double x,
                                   const UnitSystem& units) {
  if (n_max < 0) {
    throw std::invalid_argument("eval_psi_up_to: negative level index");
  }
  std::vector<double> values(static_cast<size_t>(n_max) + 1);
  double z = oscillator_argument(x, units);
  values[0] = std::pow(units.omega / (2.0 * kPi), 0.25) *
              std::exp(-z * z / 2.0);
  for (int j = 0; j < n_max; ++j) {
    double phi_prev = j > 0 ? values[static_cast<size_t>(j) - 1] : 0.0;
    values[static_cast<size_t>(j) + 1] =
        z * std::sqrt(2.0 / (j + 1)) * values[static_cast<size_t>(j)] -
        std::sqrt(static_cast<double>(j) / (j + 1)) * phi_prev;
  }
  return values;
}

LadderTerm theta_action(Direction direction, int n) {
  if (n < 0) throw std::invalid_argument("theta_action: negative index");
  if (direction == Direction::Down) {
    if (n == 0) return {0.0, -1};
    return {std::sqrt(static_cast<double>(n)), n - 1};
  }
  return {std::sqrt(static_cast<double>(n) + 1.0), n + 1};
}

ZPElements zp_matrix_elements(int m, int n) {
  if (m < 0 || n < 0) {
    throw std::invalid_argument("zp_matrix_elements: negative index");
  }
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  ZPElements elements;
  if (m == n - 1) {
    double root = std::sqrt(static_cast<double>(n));
    elements.z = root * inv_sqrt2;
    elements.p_imag = -root * inv_sqrt2;
  } else if (m == n + 1) {
    double root = std::sqrt(static_cast<double>(n) + 1.0);
    elements.z = root * inv_sqrt2;
    elements.p_imag = root * inv_sqrt2;
  }
  return elements;
}

QuadratureRule QuadratureRule::standard(const UnitSystem& units, double r,
                                        int steps_per_half) {
  double center = -2.0 * units.k / units.omega;
  double inv_sqrt_omega = 1.0 / std::sqrt(units.omega);
  double half_width =
      std::max(30.0 * inv_sqrt_omega, 4.0 * r + 20.0 * inv_sqrt_omega);
  QuadratureRule rule;
  rule.x_min = center - half_width;
  rule.x_max = center + half_width;
  rule.points = 2 * steps_per_half + 1;
  return rule;
}

double integrate(const std::function<double(double)>& f,
                 const QuadratureRule& rule) {
  if (rule.points < 2) {
    throw std::invalid_argument("integrate: need at least two points");
  }
  double h = (rule.x_max - rule.x_min) / (rule.points - 1);
  // Compensated accumulation keeps the reduction order-independent of
  // nothing -- the order is fixed -- but guards the long sums at n ~ 4000.
  double total = 0.5 * (f(rule.x_min) + f(rule.x_max));
  double compensation = 0.0;
  for (int i = 1; i + 1 < rule.points; ++i) {
    double y = f(rule.x_min + h * i) - compensation;
    double t = total + y;
    compensation = (t - total) - y;
    total = t;
  }
  return total * h;
}

}  // namespace gcs
