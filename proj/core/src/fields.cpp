#include "gcs/fields.hpp"

#include <cmath>
#include <sstream>

#include "gcs/errors.hpp"

namespace gcs {

MagneticProfile MagneticProfile::constant(double b0) {
  MagneticProfile profile;
  profile.a = [b0](double x) { return b0 * x; };
  profile.a1 = [b0](double) { return b0; };
  profile.a2 = [](double) { return 0.0; };
  profile.kind = Kind::Constant;
  return profile;
}

MagneticProfile MagneticProfile::custom(std::function<double(double)> a,
                                        std::function<double(double)> a1,
                                        std::function<double(double)> a2) {
  MagneticProfile profile;
  profile.a = std::move(a);
  profile.a1 = std::move(a1);
  profile.a2 = std::move(a2);
  profile.kind = Kind::Custom;
  return profile;
}

MonolayerFields monolayer_fields(const MagneticProfile& profile, double x,
                                 double k) {
  // W = A(x) + k, partner potentials V∓ = W² ∓ W' with W' = A'(x).
  double w = profile.a(x) + k;
  double w1 = profile.a1(x);
  return {w, w * w - w1, w * w + w1};
}

BilayerFields bilayer_fields(const MagneticProfile& profile, double x,
                             double k, double eps1, double eps2) {
  double eta = 2.0 * (k + profile.a(x));
  if (std::fabs(eta) < kEtaEpsilon) {
    std::ostringstream msg;
    msg << "eta(x) = " << eta << " at x = " << x
        << " is below the singularity guard " << kEtaEpsilon;
    throw DegenerateEta(msg.str());
  }
  double eta1 = 2.0 * profile.a1(x);
  double eta2 = 2.0 * profile.a2(x);
  double de = eps1 - eps2;

  double beta =
      (eta1 * eta1 - 2.0 * eta * eta2 - de * de) / (4.0 * eta * eta);

  double half_slope = eta1 / (2.0 * eta);
  double gamma = eta * eta / 4.0 + eta1 / 2.0 - eta2 / (2.0 * eta) +
                 half_slope * half_slope -
                 (de / (2.0 * eta)) * (de / (2.0 * eta));

  double v_minus =
      -gamma + eta * eta / 2.0 - eta1 / 2.0 + (eps1 + eps2) / 2.0;
  double v_plus = v_minus + 2.0 * eta1;

  return {eta, beta, gamma, v_minus, v_plus};
}

}  // namespace gcs
