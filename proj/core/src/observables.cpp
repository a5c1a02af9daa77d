#include "gcs/observables.hpp"

#include <cmath>
#include <complex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "gcs/errors.hpp"
#include "gcs/format.hpp"
#include "gcs/oscillator.hpp"
#include "gcs/parallel.hpp"
#include "gcs/spinors.hpp"

namespace gcs {

namespace {

constexpr double kClosedFormGuard = 1e-8;  // closed form vs oracle agreement

int level_shift(LayerKind kind) {
  return kind == LayerKind::Monolayer ? 1 : 2;
}

// Kernel evaluations against a precomputed oscillator-function table
// psi[0..N]; these mirror the pointwise kernels but avoid re-evaluating
// the recurrence for every (n, m) pair.

double rho_from(const std::vector<double>& psi, LayerKind kind, int n, int m) {
  int s = level_shift(kind);
  bool gate_n = n >= s;
  bool gate_m = m >= s;
  double top = (gate_n && gate_m) ? psi[n - s] * psi[m - s] : 0.0;
  double c2 = std::pow(0.5, 0.5 * ((gate_n ? 1 : 0) + (gate_m ? 1 : 0)));
  return c2 * (top + psi[n] * psi[m]);
}

double current_from(const std::vector<double>& psi, LayerKind kind,
                    double plus_minus, int n, int m) {
  if (kind == LayerKind::Monolayer) {
    double first = n >= 1 ? psi[n - 1] * psi[m] : 0.0;
    double second = m >= 1 ? psi[n] * psi[m - 1] : 0.0;
    double gates = (n == 0 ? 1.0 : 0.0) + (m == 0 ? 1.0 : 0.0);
    return (first + plus_minus * second) / std::sqrt(std::pow(2.0, 2.0 - gates));
  }
  if (n == 0) return 0.0;
  double first = m >= 2 ? std::sqrt(static_cast<double>(n)) * psi[m - 2] *
                              psi[n - 1]
                        : 0.0;
  double second = n >= 2 ? std::sqrt(static_cast<double>(n) - 1.0) * psi[m] *
                               psi[n - 1]
                         : 0.0;
  double gates = (n <= 1 ? 1.0 : 0.0) + (m <= 1 ? 1.0 : 0.0);
  return (first + plus_minus * second) / std::sqrt(std::pow(2.0, 2.0 - gates));
}

struct WeightTable {
  int base = 0;
  int count = 0;
  std::vector<double> re;  // Re(a_m^* a_n), row n-base, column m-base
  std::vector<double> im;  // Im(a_m^* a_n)
};

WeightTable weight_table(const CoherentSeries& series) {
  WeightTable table;
  table.base = series.base_index;
  table.count = static_cast<int>(series.coefficients.size());
  table.re.resize(static_cast<std::size_t>(table.count) * table.count);
  table.im.resize(table.re.size());
  for (int i = 0; i < table.count; ++i) {
    std::complex<double> a_n = series.coefficients[i];
    for (int j = 0; j < table.count; ++j) {
      std::complex<double> w = std::conj(series.coefficients[j]) * a_n;
      table.re[static_cast<std::size_t>(i) * table.count + j] = w.real();
      table.im[static_cast<std::size_t>(i) * table.count + j] = w.imag();
    }
  }
  return table;
}

void require_grid(const std::vector<double>& xs) {
  if (xs.empty()) throw std::invalid_argument("empty evaluation grid");
}

// --- matrix-element oracle pieces -----------------------------------------
//
// Dimensionless z and p_z act on the oscillator index through tridiagonal
// couplings; squares follow by summing over the one-step intermediates.
// Spinor-level elements lift the scalar ones through both components.

double osc_z(int m, int n) {
  if (m < 0 || n < 0) return 0.0;
  return zp_matrix_elements(m, n).z;
}

double osc_p(int m, int n) {
  if (m < 0 || n < 0) return 0.0;
  return zp_matrix_elements(m, n).p_imag;
}

double osc_z2(int m, int n) {
  double total = 0.0;
  for (int k : {n - 1, n + 1}) {
    if (k < 0) continue;
    total += osc_z(m, k) * osc_z(k, n);
  }
  return total;
}

double osc_p2(int m, int n) {
  double total = 0.0;
  for (int k : {n - 1, n + 1}) {
    if (k < 0) continue;
    total -= osc_p(m, k) * osc_p(k, n);
  }
  return total;
}

template <typename Element>
double lifted(LayerKind kind, int m, int n, Element&& element) {
  int s = level_shift(kind);
  double g_m = top_gate(kind, m);
  double g_n = top_gate(kind, n);
  double top = (g_m > 0.0 && g_n > 0.0) ? element(m - s, n - s) : 0.0;
  return norm_constant(kind, m) * norm_constant(kind, n) *
         (top + element(m, n));
}

ZPMoments closed_form_moments(LayerKind kind, std::complex<double> alpha) {
  double r2 = std::norm(alpha);
  double er2 = std::exp(r2);
  std::complex<double> alpha2 = alpha * alpha;
  double sqrt2 = std::sqrt(2.0);
  ZPMoments moments;
  if (kind == LayerKind::Monolayer) {
    // A = e^{r^2} + sqrt2 - 1 + sum_n r^{2n+2} / sqrt(n! (n+2)!)
    double a_series = 0.0;
    {
      double term = r2 / sqrt2;  // n = 0
      for (int n = 0; n < 4000; ++n) {
        a_series += term;
        term *= r2 / std::sqrt((n + 1.0) * (n + 3.0));
        if (term < 1e-18 * (a_series + 1.0)) break;
      }
    }
    // B = e^{r^2} + sqrt2 - 1 + sum_n sqrt(n+2) r^{2n+2} / sqrt(n! (n+3)!)
    double b_series = 0.0;
    {
      double term = r2 / std::sqrt(6.0);  // n = 0 base r^{2n+2}/sqrt(n!(n+3)!)
      for (int n = 0; n < 4000; ++n) {
        b_series += std::sqrt(n + 2.0) * term;
        term *= r2 / std::sqrt((n + 1.0) * (n + 4.0));
        if (term < 1e-18 * (b_series + 1.0)) break;
      }
    }
    double a_total = er2 + sqrt2 - 1.0 + a_series;
    double b_total = er2 + sqrt2 - 1.0 + b_series;
    double damp = std::exp(-r2);
    moments.mean_z = damp * alpha.real() / sqrt2 * a_total;
    moments.mean_p = damp * alpha.imag() / sqrt2 * a_total;
    moments.mean_z2 =
        0.5 * damp * (1.0 + 2.0 * r2 * er2 + alpha2.real() * b_total);
    moments.mean_p2 =
        0.5 * damp * (1.0 + 2.0 * r2 * er2 - alpha2.real() * b_total);
  } else {
    // A = e^{r^2} + 1 + (sqrt2 - 1) r^2
    //     + sum_n sqrt(n+1) r^{2n+4} / sqrt((n+2)! (n+3)!)
    double a_series = 0.0;
    {
      double term = r2 * r2 / std::sqrt(12.0);  // r^{2n+4}/sqrt((n+2)!(n+3)!)
      for (int n = 0; n < 4000; ++n) {
        a_series += std::sqrt(n + 1.0) * term;
        term *= r2 / std::sqrt((n + 3.0) * (n + 4.0));
        if (term < 1e-18 * (a_series + 1.0)) break;
      }
    }
    // B = e^{r^2} + (sqrt2 - 1)(1 + r^2)
    //     + sum_n r^{2n+4} / sqrt(n! (n+4)!)
    double b_series = 0.0;
    {
      double term = r2 * r2 / std::sqrt(24.0);  // n = 0
      for (int n = 0; n < 4000; ++n) {
        b_series += term;
        term *= r2 / std::sqrt((n + 1.0) * (n + 5.0));
        if (term < 1e-18 * (b_series + 1.0)) break;
      }
    }
    double a_total = er2 + 1.0 + (sqrt2 - 1.0) * r2 + a_series;
    double b_total = er2 + (sqrt2 - 1.0) * (1.0 + r2) + b_series;
    double damp = std::exp(-r2);
    moments.mean_z = damp * alpha.real() / sqrt2 * a_total;
    moments.mean_p = damp * alpha.imag() / sqrt2 * a_total;
    moments.mean_z2 =
        0.5 * damp *
        (2.0 * (r2 + 1.0) + (2.0 * r2 - 1.0) * er2 + alpha2.real() * b_total);
    moments.mean_p2 =
        0.5 * damp *
        (2.0 * (r2 + 1.0) + (2.0 * r2 - 1.0) * er2 - alpha2.real() * b_total);
  }
  return moments;
}

}  // namespace

DensityGrid probability_density(const CoherentSeries& series,
                                const std::vector<double>& xs,
                                const UnitSystem& units) {
  require_grid(xs);
  WeightTable weights = weight_table(series);
  int n_top = series.max_index();
  DensityGrid grid;
  grid.xs = xs;
  grid.values.resize(xs.size());
  grid.kind = series.kind;
  grid.alpha = series.alpha;
  grid.quantity = "probability_density";
  parallel_for(static_cast<int>(xs.size()), [&](int i) {
    std::vector<double> psi = eval_psi_up_to(n_top, xs[i], units);
    KahanSum total;
    for (int n = weights.base; n <= n_top; ++n) {
      const double* row =
          weights.re.data() +
          static_cast<std::size_t>(n - weights.base) * weights.count;
      for (int m = weights.base; m <= n_top; ++m) {
        total.add(row[m - weights.base] *
                  rho_from(psi, series.kind, n, m));
      }
    }
    grid.values[i] = total.value();
  });
  return grid;
}

CurrentDensities current_density(const CoherentSeries& series,
                                 const std::vector<double>& xs,
                                 const UnitSystem& units) {
  require_grid(xs);
  WeightTable weights = weight_table(series);
  int n_top = series.max_index();
  bool monolayer = series.kind == LayerKind::Monolayer;
  // Bilayer sign: the electron-branch top component is the negative of
  // the twice-lowered bottom one, which flips both cross-term currents
  // relative to the raw kernels.  The overall factors below are fixed by
  // the continuity equation ∂_τρ + ∂_x J_x = 0 for the same evolution
  // phases used in the dynamics module.
  double x_factor = monolayer ? 1.0 : -std::sqrt(units.omega);
  double y_factor = monolayer ? 1.0 : std::sqrt(units.omega);
  CurrentDensities currents;
  for (DensityGrid* grid : {&currents.jx, &currents.jy}) {
    grid->xs = xs;
    grid->values.resize(xs.size());
    grid->kind = series.kind;
    grid->alpha = series.alpha;
  }
  currents.jx.quantity = "current_density_x";
  currents.jy.quantity = "current_density_y";
  parallel_for(static_cast<int>(xs.size()), [&](int i) {
    std::vector<double> psi = eval_psi_up_to(n_top, xs[i], units);
    KahanSum sum_x;
    KahanSum sum_y;
    for (int n = weights.base; n <= n_top; ++n) {
      std::size_t offset =
          static_cast<std::size_t>(n - weights.base) * weights.count;
      const double* row_re = weights.re.data() + offset;
      const double* row_im = weights.im.data() + offset;
      for (int m = weights.base; m <= n_top; ++m) {
        sum_x.add(row_im[m - weights.base] *
                  current_from(psi, series.kind, -1.0, n, m));
        sum_y.add(row_re[m - weights.base] *
                  current_from(psi, series.kind, +1.0, n, m));
      }
    }
    currents.jx.values[i] = x_factor * sum_x.value();
    currents.jy.values[i] = y_factor * sum_y.value();
  });
  return currents;
}

double mean_energy(const CoherentSeries& series, const UnitSystem& units) {
  KahanSum weighted;
  KahanSum norm_sq;
  for (int n = series.base_index; n <= series.max_index(); ++n) {
    double w = std::norm(series.at(n));
    weighted.add(w * energy(series.kind, n, units));
    norm_sq.add(w);
  }
  return weighted.value() / norm_sq.value();
}

double mean_energy_closed(LayerKind kind, double r, const UnitSystem& units) {
  if (r < 0.0) {
    throw std::invalid_argument("mean_energy_closed: negative radius");
  }
  double r2 = r * r;
  double term = std::exp(-r2);  // e^{-r^2} r^{2n} / n! at n = 0
  KahanSum total;
  for (int n = 0; n < 4000; ++n) {
    double summand = kind == LayerKind::Monolayer
                         ? term / std::sqrt(n + 1.0)
                         : term / std::sqrt((n + 2.0) * (n + 1.0));
    total.add(summand);
    term *= r2 / (n + 1.0);
    if (term < 1e-18) break;
  }
  double scale = kind == LayerKind::Monolayer
                     ? std::sqrt(units.omega) * r2
                     : 0.5 * units.omega * r2 * r2;
  return units.branch * scale * total.value();
}

double ZPMoments::sigma_z() const {
  return std::sqrt(std::max(mean_z2 - mean_z * mean_z, 0.0));
}

double ZPMoments::sigma_p() const {
  return std::sqrt(std::max(mean_p2 - mean_p * mean_p, 0.0));
}

ZPMoments zp_moments_oracle(const CoherentSeries& series) {
  int lo = series.base_index;
  int hi = series.max_index();
  KahanSum norm_sq;
  KahanSum sum_z, sum_z2, sum_p, sum_p2;
  for (int n = lo; n <= hi; ++n) {
    std::complex<double> a_n = series.at(n);
    norm_sq.add(std::norm(a_n));
    for (int m = std::max(lo, n - 2); m <= std::min(hi, n + 2); ++m) {
      std::complex<double> w = std::conj(series.at(m)) * a_n;
      sum_z.add(w.real() * lifted(series.kind, m, n, osc_z));
      sum_z2.add(w.real() * lifted(series.kind, m, n, osc_z2));
      sum_p.add(-w.imag() * lifted(series.kind, m, n, osc_p));
      sum_p2.add(w.real() * lifted(series.kind, m, n, osc_p2));
    }
  }
  double s = norm_sq.value();
  ZPMoments moments;
  moments.mean_z = sum_z.value() / s;
  moments.mean_z2 = sum_z2.value() / s;
  moments.mean_p = sum_p.value() / s;
  moments.mean_p2 = sum_p2.value() / s;
  return moments;
}

ZPMoments zp_moments(const CoherentSeries& series) {
  ZPMoments oracle = zp_moments_oracle(series);
  if (!series.canonical) return oracle;
  ZPMoments closed = closed_form_moments(series.kind, series.alpha);
  double worst = std::max(
      std::max(std::fabs(closed.mean_z - oracle.mean_z),
               std::fabs(closed.mean_z2 - oracle.mean_z2)),
      std::max(std::fabs(closed.mean_p - oracle.mean_p),
               std::fabs(closed.mean_p2 - oracle.mean_p2)));
  if (worst > kClosedFormGuard) {
    std::ostringstream msg;
    msg << "closed-form z/p moments deviate from the matrix-element sum by "
        << worst << " (limit " << kClosedFormGuard << ")";
    throw OracleMismatch(msg.str());
  }
  return closed;
}

double uncertainty_product(const CoherentSeries& series) {
  return zp_moments(series).product();
}

std::string density_to_csv(const DensityGrid& grid) {
  std::ostringstream out;
  out << "x,value\n";
  for (std::size_t i = 0; i < grid.xs.size(); ++i) {
    out << format17(grid.xs[i]) << "," << format17(grid.values[i]) << "\n";
  }
  return out.str();
}

void write_density_csv(const DensityGrid& grid, std::ostream& out) {
  out << density_to_csv(grid);
}

}  // namespace gcs
