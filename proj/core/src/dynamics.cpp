#include "gcs/dynamics.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "gcs/format.hpp"
#include "gcs/observables.hpp"
#include "gcs/parallel.hpp"

namespace gcs {

namespace {

constexpr double kRefineTolerance = 1e-6;  // quasiperiod localization in t

void require_bilayer(const CoherentSeries& series, const char* what) {
  if (series.kind != LayerKind::Bilayer) {
    throw std::invalid_argument(
        std::string(what) +
        ": the linear-spectrum split applies to the bilayer series only");
  }
}

// Phase mismatch between the exact level frequency and its linearized
// large-n form n - 1/2.
std::complex<double> phase_defect(int n, double t) {
  double exact = std::sqrt(static_cast<double>(n) * (n - 1.0));
  double linear = n - 0.5;
  return std::polar(1.0, -exact * t) - std::polar(1.0, -linear * t);
}

// Golden-section maximization of f on [a, b] down to kRefineTolerance.
double golden_max(const std::function<double(double)>& f, double a, double b) {
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - ratio * (b - a);
  double d = a + ratio * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > kRefineTolerance) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - ratio * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + ratio * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

double level_frequency(LayerKind kind, int n) {
  if (n < 0) throw std::invalid_argument("level_frequency: negative level");
  if (kind == LayerKind::Monolayer) {
    return std::sqrt(static_cast<double>(n));
  }
  if (n < 2) return 0.0;  // both zero modes are stationary
  return std::sqrt(static_cast<double>(n) * (n - 1.0));
}

CoherentSeries evolve(const CoherentSeries& series, double t) {
  CoherentSeries evolved = series;
  for (std::size_t i = 0; i < evolved.coefficients.size(); ++i) {
    int n = series.base_index + static_cast<int>(i);
    evolved.coefficients[i] *=
        std::polar(1.0, -level_frequency(series.kind, n) * t);
  }
  if (t != 0.0) evolved.canonical = false;
  return evolved;
}

double fidelity(const CoherentSeries& series, double t) {
  // Numerator and denominator accumulate the same weights in the same
  // order, so at t = 0 they are bit-identical and the quotient is 1.
  KahanSum re;
  KahanSum im;
  KahanSum denom;
  for (int n = series.base_index; n <= series.max_index(); ++n) {
    double w = std::norm(series.at(n));
    double phase = level_frequency(series.kind, n) * t;
    re.add(w * std::cos(phase));
    im.add(-w * std::sin(phase));
    denom.add(w);
  }
  double scale = denom.value();
  double x = re.value() / scale;
  double y = im.value() / scale;
  return x * x + y * y;
}

double fidelity_envelope(double r, double t2) {
  double s = std::sin(0.5 * t2);
  return std::exp(-4.0 * r * r * s * s);
}

double linear_residual(const CoherentSeries& series, double t, int n_cut) {
  require_bilayer(series, "linear_residual");
  KahanSum dropped;
  KahanSum norm_sq;
  for (int n = series.base_index; n <= series.max_index(); ++n) {
    double w = std::norm(series.at(n));
    norm_sq.add(w);
    if (n < n_cut) dropped.add(w * std::norm(phase_defect(n, t)));
  }
  return std::sqrt(dropped.value() / norm_sq.value());
}

double linear_cross_term(const CoherentSeries& series, double t, int n_cut) {
  require_bilayer(series, "linear_cross_term");
  KahanSum linear_re, linear_im;  // <Psi_alpha | Psi'(t)>
  KahanSum defect_re, defect_im;  // <Psi_alpha | gamma(t; N)>
  KahanSum norm_sq;
  for (int n = series.base_index; n <= series.max_index(); ++n) {
    double w = std::norm(series.at(n));
    norm_sq.add(w);
    std::complex<double> linear = w * std::polar(1.0, -(n - 0.5) * t);
    linear_re.add(linear.real());
    linear_im.add(linear.imag());
    if (n < n_cut) {
      std::complex<double> defect = w * phase_defect(n, t);
      defect_re.add(defect.real());
      defect_im.add(defect.imag());
    }
  }
  double s = norm_sq.value();
  std::complex<double> overlap_linear(linear_re.value(), linear_im.value());
  std::complex<double> overlap_defect(defect_re.value(), defect_im.value());
  return 2.0 * (std::conj(overlap_linear) * overlap_defect).real() / (s * s);
}

FidelityTrace quasiperiod_scan(const CoherentSeries& series, double t_max,
                               int samples, double threshold) {
  if (samples < 2) {
    throw std::invalid_argument("quasiperiod_scan: need at least 2 samples");
  }
  if (!(t_max > 0.0)) {
    throw std::invalid_argument("quasiperiod_scan: t_max must be positive");
  }
  FidelityTrace trace;
  trace.ts.resize(samples);
  trace.values.resize(samples);
  for (int i = 0; i < samples; ++i) {
    trace.ts[i] = t_max * i / (samples - 1);
  }
  parallel_for(samples, [&](int i) {
    trace.values[i] = fidelity(series, trace.ts[i]);
  });
  for (int i = 1; i + 1 < samples; ++i) {
    bool is_peak = trace.values[i] >= trace.values[i - 1] &&
                   trace.values[i] >= trace.values[i + 1] &&
                   trace.values[i] >= threshold;
    if (!is_peak) continue;
    double refined = golden_max(
        [&series](double t) { return fidelity(series, t); },
        trace.ts[i - 1], trace.ts[i + 1]);
    trace.quasiperiods.push_back(refined);
  }
  return trace;
}

std::string trace_to_csv(const FidelityTrace& trace) {
  std::ostringstream out;
  out << "t,fidelity\n";
  for (std::size_t i = 0; i < trace.ts.size(); ++i) {
    out << format17(trace.ts[i]) << "," << format17(trace.values[i]) << "\n";
  }
  return out.str();
}

std::string quasiperiods_to_json(const FidelityTrace& trace) {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < trace.quasiperiods.size(); ++i) {
    if (i) out << ", ";
    out << format17(trace.quasiperiods[i]);
  }
  out << "]\n";
  return out.str();
}

}  // namespace gcs
