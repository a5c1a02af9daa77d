#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "gcs/coherent.hpp"
#include "gcs/fields.hpp"
#include "gcs/types.hpp"

namespace gcs {

// A sampled x-dependent quantity (probability density or one current
// component) together with the grid it was evaluated on.
struct DensityGrid {
  std::vector<double> xs;
  std::vector<double> values;
  LayerKind kind = LayerKind::Monolayer;
  std::complex<double> alpha;
  std::string quantity;
};

// rho(x) = sum_{n,m} Re(a_m^* a_n) rho_{n,m}(x), summed in fixed order
// (ascending n outer, ascending m inner) with compensated accumulation;
// grid points may be evaluated concurrently, bit-identically.
DensityGrid probability_density(const CoherentSeries& series,
                                const std::vector<double>& xs,
                                const UnitSystem& units);

struct CurrentDensities {
  DensityGrid jx;
  DensityGrid jy;
};

// J_x = c_x * sum Im(a_m^* a_n) j^-_{n,m},
// J_y = c_y * sum Re(a_m^* a_n) j^+_{n,m},
// with c_x = c_y = v_F = 1 for monolayer and c_x = -sqrt(omega),
// c_y = +sqrt(omega) for bilayer (hbar/m* = 1 in natural units): the
// electron-branch bilayer top component is the negative of the
// twice-lowered bottom one, and the continuity equation fixes both signs.
CurrentDensities current_density(const CoherentSeries& series,
                                 const std::vector<double>& xs,
                                 const UnitSystem& units);

// <H> = sum |a_n|^2 E_n (valid for any series).
double mean_energy(const CoherentSeries& series, const UnitSystem& units);

// Closed-form mean energy of the f == 1 coherent family:
//   monolayer sqrt(omega) e^{-r^2} r^2 sum_n r^{2n} / (sqrt(n+1) n!),
//   bilayer (omega/2) e^{-r^2} r^4 sum_n r^{2n} / (sqrt((n+2)(n+1)) n!),
// times the branch sign.
double mean_energy_closed(LayerKind kind, double r, const UnitSystem& units);

struct ZPMoments {
  double mean_z = 0.0;
  double mean_z2 = 0.0;
  double mean_p = 0.0;
  double mean_p2 = 0.0;

  double sigma_z() const;
  double sigma_p() const;
  double product() const { return sigma_z() * sigma_p(); }
};

// First and second moments of the dimensionless z, p_z on a coherent
// series.  The matrix-element oracle (zp elements lifted through the
// spinor structure) is always computed; for the canonical family the
// closed-form series are evaluated too, cross-checked against the oracle
// within 1e-8 (OracleMismatch beyond), and returned.  Non-canonical
// series get the oracle values.
ZPMoments zp_moments(const CoherentSeries& series);

// The oracle path alone, for any series.
ZPMoments zp_moments_oracle(const CoherentSeries& series);

// Heisenberg product (Delta z)(Delta p_z) in units of hbar; >= 1/2.
double uncertainty_product(const CoherentSeries& series);

// CSV with header "x,value" and 17-significant-digit decimals.
std::string density_to_csv(const DensityGrid& grid);
void write_density_csv(const DensityGrid& grid, std::ostream& out);

// Fixed-order compensated (Kahan) accumulator used by every observable
// sum; exposed so tests and tools reproduce bit-identical reductions.
class KahanSum {
 public:
  void add(double value) {
    double y = value - m_compensation;
    double t = m_total + y;
    m_compensation = (t - m_total) - y;
    m_total = t;
  }
  double value() const { return m_total; }

 private:
  double m_total = 0.0;
  double m_compensation = 0.0;
};

}  // namespace gcs
