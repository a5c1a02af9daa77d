#include "gcs/coherent.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <deque>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gcs/errors.hpp"
#include "gcs/format.hpp"
#include "gcs/observables.hpp"

namespace gcs {

namespace {

constexpr int kMinRetained = 32;      // never truncate below this many terms
constexpr int kDivergenceRun = 50;    // consecutive non-shrinking ratios -> error
constexpr int kHardTermCap = 200000;  // absolute safety limit per series
constexpr int kHwPrecheck = 64;       // levels checked before building a GP series
constexpr double kHwTolerance = 1e-10;

struct PoissonTruncation {
  int order = 0;
  double bound = 0.0;
};

// Tail of the Poisson weight sum: t_n = r^{2n} e^{-r^2} / n! decays
// geometrically once n > r^2, so sum_{n>N} t_n <= t_{N+1} / (1 - r^2/(N+2)).
PoissonTruncation poisson_truncation(double r, double tol) {
  int n = kMinRetained;
  if (r == 0.0) return {n, 0.0};
  double r2 = r * r;
  double term = std::exp(-r2);  // t_0
  for (int j = 1; j <= n + 1; ++j) term *= r2 / j;
  while (true) {
    double rho = r2 / (n + 2);
    if (rho < 1.0) {
      double bound = term / (1.0 - rho);
      if (bound < tol) return {n, bound};
    }
    ++n;
    term *= r2 / (n + 1);
  }
}

void check_tolerance(double tol) {
  if (!(tol > 0.0) || !(tol < 1.0)) {
    std::ostringstream msg;
    msg << "truncation tolerance must lie in (0, 1), got " << tol;
    throw std::invalid_argument(msg.str());
  }
}

// Scale the coefficient list to unit norm, fixed ascending order.
double normalize(std::vector<std::complex<double>>& c) {
  KahanSum total;
  for (const auto& value : c) total.add(std::norm(value));
  double norm_sq = total.value();
  if (!(norm_sq > 0.0) || !std::isfinite(norm_sq)) {
    throw Divergence("series normalization sum is not finite and positive");
  }
  double scale = 1.0 / std::sqrt(norm_sq);
  for (auto& value : c) value *= scale;
  return norm_sq;
}

// Grow `c` (holding the unnormalized coefficient for absolute index
// base, base+1, ...) by repeated application of `step`, which returns the
// multiplier a_{k+1}/a_k for absolute index k.  Stops once at least
// kMinRetained terms are kept, the recent ratios certify geometric decay,
// and the certified relative tail falls below tol.  Returns the relative
// tail bound.
double grow_adaptively(std::vector<std::complex<double>>& c, int base,
                       double tol,
                       const std::function<std::complex<double>(int)>& step) {
  KahanSum norm_sq;
  norm_sq.add(std::norm(c.back()));
  std::deque<double> recent;  // trailing |a_{k+1}|/|a_k| window
  int non_shrinking = 0;
  while (true) {
    int k = base + static_cast<int>(c.size()) - 1;
    std::complex<double> multiplier = step(k);
    std::complex<double> next = c.back() * multiplier;
    double ratio = std::abs(multiplier);
    if (ratio >= 1.0) {
      if (++non_shrinking >= kDivergenceRun) {
        std::ostringstream msg;
        msg << "series ratio test failed: " << kDivergenceRun
            << " consecutive coefficient ratios >= 1 near index " << k;
        throw Divergence(msg.str());
      }
    } else {
      non_shrinking = 0;
    }
    c.push_back(next);
    norm_sq.add(std::norm(next));
    recent.push_back(ratio);
    if (recent.size() > 5) recent.pop_front();
    if (static_cast<int>(c.size()) > kMinRetained && recent.size() == 5) {
      double rho = *std::max_element(recent.begin(), recent.end());
      if (rho < 1.0) {
        // sum_{j>0} |a_N|^2 rho^{2j} majorizes the dropped norm
        double rho2 = rho * rho;
        double bound = std::norm(next) * rho2 / (1.0 - rho2);
        if (bound < tol * norm_sq.value()) {
          return std::max(bound / norm_sq.value(), kTailFloor);
        }
      }
    }
    if (static_cast<int>(c.size()) > kHardTermCap) {
      throw Divergence(
          "series failed to certify convergence within 200000 terms");
    }
  }
}

// Enforce that f reproduces the Heisenberg-Weyl sequence generated by
// (p, q) up to level n_max.
void require_hw(const LadderSpec& spec, int n_max) {
  std::vector<double> reference = hw_f_sequence(
      [&spec](int n) { return spec.p(n); },
      [&spec](int n) { return spec.q(n); }, n_max);
  for (int n = 1; n <= n_max; ++n) {
    double deviation = std::fabs(spec.f(n) - reference[n]);
    if (deviation > kHwTolerance) {
      std::ostringstream msg;
      msg << "displaced-ground-state construction requires the "
             "Heisenberg-Weyl weight: f(" << n << ") = " << spec.f(n)
          << " deviates from the algebra-closing value " << reference[n]
          << " by " << deviation;
      throw NotHWAlgebra(msg.str());
    }
  }
}

}  // namespace

std::complex<double> CoherentSeries::at(int n) const {
  int i = n - base_index;
  if (i < 0 || i >= static_cast<int>(coefficients.size())) return {0.0, 0.0};
  return coefficients[i];
}

double CoherentSeries::norm_squared() const {
  KahanSum total;
  for (const auto& value : coefficients) total.add(std::norm(value));
  return total.value();
}

double generalized_factorial(const LadderSpec::Sequence& f, int k) {
  if (!f) throw std::invalid_argument("generalized_factorial: empty sequence");
  if (k < 0) {
    throw std::invalid_argument("generalized_factorial: negative order");
  }
  double product = 1.0;
  for (int j = 1; j <= k; ++j) product *= f(j);
  return product;
}

int truncation_order(double r, double tol) {
  check_tolerance(tol);
  if (r < 0.0) throw std::invalid_argument("truncation_order: negative radius");
  return poisson_truncation(r, tol).order;
}

CoherentSeries bgcs(const LadderSpec& spec, LayerKind kind,
                    std::complex<double> alpha, double tol) {
  check_tolerance(tol);
  CoherentSeries series;
  series.kind = kind;
  series.definition = Definition::BG;
  series.alpha = alpha;
  series.canonical = spec.is_canonical_oscillator();
  series.base_index = spec.has_roots() ? spec.max_root() : 0;

  std::vector<std::complex<double>> c;
  c.emplace_back(1.0, 0.0);
  double tail = kTailFloor;
  if (series.canonical) {
    // Coefficient magnitudes are exactly the Poisson amplitudes, so the
    // truncation order depends only on (r, tol) -- every definition of
    // the canonical family truncates identically.
    PoissonTruncation cut = poisson_truncation(series.r(), tol);
    c.reserve(cut.order + 1);
    for (int n = 0; n < cut.order; ++n) {
      c.push_back(c.back() * alpha / std::sqrt(static_cast<double>(n + 1)));
    }
    tail = std::max(cut.bound, kTailFloor);
  } else {
    int base = series.base_index;
    tail = grow_adaptively(c, base, tol, [&](int k) {
      return alpha / (std::sqrt(spec.p(k + 1)) * spec.f(k + 1));
    });
  }
  normalize(c);
  series.coefficients = std::move(c);
  series.truncation.order = series.max_index();
  series.truncation.tail_bound = tail;
  return series;
}

CoherentSeries gpcs(const LadderSpec& spec, LayerKind kind,
                    std::complex<double> alpha, double tol,
                    std::optional<int> extremal) {
  check_tolerance(tol);
  CoherentSeries series;
  series.kind = kind;
  series.definition = Definition::GP;
  series.alpha = alpha;
  series.canonical = spec.is_canonical_oscillator();

  std::vector<std::complex<double>> c;
  c.emplace_back(1.0, 0.0);
  double tail = kTailFloor;

  if (!spec.has_roots()) {
    if (extremal.has_value() && *extremal != 0) {
      std::ostringstream msg;
      msg << "extremal state " << *extremal
          << " requested, but the weight has no roots; only the ground "
             "state 0 is annihilated";
      throw std::invalid_argument(msg.str());
    }
    require_hw(spec, kHwPrecheck);
    series.base_index = 0;
    if (series.canonical) {
      PoissonTruncation cut = poisson_truncation(series.r(), tol);
      c.reserve(cut.order + 1);
      for (int n = 0; n < cut.order; ++n) {
        c.push_back(c.back() * alpha / std::sqrt(static_cast<double>(n + 1)));
      }
      tail = std::max(cut.bound, kTailFloor);
    } else {
      tail = grow_adaptively(c, 0, tol, [&](int k) {
        return alpha * std::sqrt(spec.q(k)) * spec.f(k + 1) /
               static_cast<double>(k + 1);
      });
      if (series.base_index + static_cast<int>(c.size()) > kHwPrecheck) {
        require_hw(spec, static_cast<int>(c.size()));
      }
    }
  } else {
    // Displace one annihilated state: the ground state or any level where
    // the weight vanishes.  The series climbs until the next root, whose
    // zero weight ends the support.
    int m = extremal.value_or(spec.max_root());
    const auto& roots = spec.roots();
    bool valid = (m == 0) || std::binary_search(roots.begin(), roots.end(), m);
    if (!valid) {
      std::ostringstream msg;
      msg << "extremal state " << m
          << " is not annihilated by the down action (expected 0 or a "
             "root of the weight)";
      throw std::invalid_argument(msg.str());
    }
    series.base_index = m;
    std::optional<int> next = spec.next_root_after(m);
    auto step = [&](int k) {
      return alpha * std::sqrt(spec.q(k)) * spec.f(k + 1) /
             static_cast<double>(k - m + 1);
    };
    if (next.has_value()) {
      // finite block {m, ..., next-1}; nothing is dropped
      c.reserve(*next - m);
      for (int k = m; k < *next - 1; ++k) c.push_back(c.back() * step(k));
      tail = kTailFloor;
    } else {
      tail = grow_adaptively(c, m, tol, step);
    }
  }
  normalize(c);
  series.coefficients = std::move(c);
  series.truncation.order = series.max_index();
  series.truncation.tail_bound = tail;
  return series;
}

CoherentSeries mucs(const LadderSpec& spec, LayerKind kind,
                    std::complex<double> alpha, double tol) {
  // The lambda = 1 minimum-uncertainty condition reduces to the
  // eigenvector problem for the down action, so the coefficients agree
  // with the Barut-Girardello ones; only the tag differs.
  CoherentSeries series = bgcs(spec, kind, alpha, tol);
  series.definition = Definition::MU;
  return series;
}

QuadratureSpread quadrature_spread(const CoherentSeries& series,
                                   const LadderSpec& spec) {
  // Everything reduces to <A^->, <A^+>, and the four quadratic products,
  // evaluated through the ladder actions on the retained support.
  auto down = [&](int n) {
    return action_coefficient(spec, Direction::Down, n).coefficient;
  };
  auto up = [&](int n) {
    return action_coefficient(spec, Direction::Up, n).coefficient;
  };
  int lo = series.base_index;
  int hi = series.max_index();
  KahanSum norm_sq;
  KahanSum am_re, am_im, ap_re, ap_im;          // <A^->, <A^+>
  KahanSum mm_re, mm_im, pp_re, pp_im;          // <A^- A^->, <A^+ A^+>
  KahanSum pm, mp;                              // <A^+ A^->, <A^- A^+> (real)
  for (int n = lo; n <= hi; ++n) {
    std::complex<double> a_n = series.at(n);
    double w = std::norm(a_n);
    norm_sq.add(w);
    if (n >= 1) {
      std::complex<double> t = std::conj(series.at(n - 1)) * a_n * down(n);
      am_re.add(t.real());
      am_im.add(t.imag());
      pm.add(w * down(n) * up(n - 1));
    }
    {
      std::complex<double> t = std::conj(series.at(n + 1)) * a_n * up(n);
      ap_re.add(t.real());
      ap_im.add(t.imag());
      mp.add(w * up(n) * down(n + 1));
    }
    if (n >= 2) {
      std::complex<double> t =
          std::conj(series.at(n - 2)) * a_n * down(n) * down(n - 1);
      mm_re.add(t.real());
      mm_im.add(t.imag());
    }
    {
      std::complex<double> t =
          std::conj(series.at(n + 2)) * a_n * up(n) * up(n + 1);
      pp_re.add(t.real());
      pp_im.add(t.imag());
    }
  }
  double s = norm_sq.value();
  std::complex<double> a_minus(am_re.value() / s, am_im.value() / s);
  std::complex<double> a_plus(ap_re.value() / s, ap_im.value() / s);
  std::complex<double> a_mm(mm_re.value() / s, mm_im.value() / s);
  std::complex<double> a_pp(pp_re.value() / s, pp_im.value() / s);
  double a_pm = pm.value() / s;
  double a_mp = mp.value() / s;

  // Q = (A^+ + A^-)/sqrt(2), P = i (A^+ - A^-)/sqrt(2)
  double q_mean = (a_plus + a_minus).real() / std::sqrt(2.0);
  double p_mean = -(a_plus - a_minus).imag() / std::sqrt(2.0);
  double q2 = 0.5 * ((a_pp + a_mm).real() + a_pm + a_mp);
  double p2 = -0.5 * ((a_pp + a_mm).real() - a_pm - a_mp);

  QuadratureSpread spread;
  spread.dq = std::sqrt(std::max(q2 - q_mean * q_mean, 0.0));
  spread.dp = std::sqrt(std::max(p2 - p_mean * p_mean, 0.0));
  spread.commutator_half = 0.5 * std::fabs(a_mp - a_pm);
  return spread;
}

std::string series_to_json(const CoherentSeries& series) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"kind\": \"" << to_string(series.kind) << "\",\n";
  out << "  \"definition\": \"" << to_string(series.definition) << "\",\n";
  out << "  \"alpha\": {\"re\": " << format17(series.alpha.real())
      << ", \"im\": " << format17(series.alpha.imag()) << "},\n";
  out << "  \"base_index\": " << series.base_index << ",\n";
  out << "  \"tail_bound\": " << format17(series.truncation.tail_bound)
      << ",\n";
  out << "  \"coefficients\": [\n";
  for (std::size_t i = 0; i < series.coefficients.size(); ++i) {
    const auto& value = series.coefficients[i];
    out << "    {\"re\": " << format17(value.real())
        << ", \"im\": " << format17(value.imag()) << "}";
    if (i + 1 < series.coefficients.size()) out << ",";
    out << "\n";
  }
  out << "  ]\n";
  out << "}\n";
  return out.str();
}

CoherentSeries series_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& error) {
    throw std::invalid_argument(std::string("series JSON is malformed: ") +
                                error.what());
  }
  auto fail = [](const std::string& what) {
    throw std::invalid_argument("series JSON: " + what);
  };
  for (const char* key :
       {"kind", "definition", "alpha", "base_index", "coefficients"}) {
    if (!doc.contains(key)) fail(std::string("missing field \"") + key + "\"");
  }
  CoherentSeries series;
  std::string kind = doc["kind"].get<std::string>();
  if (kind == "monolayer") {
    series.kind = LayerKind::Monolayer;
  } else if (kind == "bilayer") {
    series.kind = LayerKind::Bilayer;
  } else {
    fail("unknown kind \"" + kind + "\"");
  }
  std::string definition = doc["definition"].get<std::string>();
  if (definition == "BG") {
    series.definition = Definition::BG;
  } else if (definition == "GP") {
    series.definition = Definition::GP;
  } else if (definition == "MU") {
    series.definition = Definition::MU;
  } else {
    fail("unknown definition \"" + definition + "\"");
  }
  if (!doc["alpha"].is_object() || !doc["alpha"].contains("re") ||
      !doc["alpha"].contains("im")) {
    fail("alpha must be an object with \"re\" and \"im\"");
  }
  series.alpha = {doc["alpha"]["re"].get<double>(),
                  doc["alpha"]["im"].get<double>()};
  series.base_index = doc["base_index"].get<int>();
  if (series.base_index < 0) fail("base_index must be non-negative");
  if (!doc["coefficients"].is_array() || doc["coefficients"].empty()) {
    fail("coefficients must be a non-empty array");
  }
  for (const auto& entry : doc["coefficients"]) {
    if (!entry.is_object() || !entry.contains("re") || !entry.contains("im")) {
      fail("each coefficient must be an object with \"re\" and \"im\"");
    }
    series.coefficients.emplace_back(entry["re"].get<double>(),
                                     entry["im"].get<double>());
  }
  series.truncation.order = series.max_index();
  double tail = doc.value("tail_bound", kTailFloor);
  series.truncation.tail_bound = std::max(tail, kTailFloor);

  // Re-detect the canonical family: base 0 and coefficients matching the
  // normalized f == 1 reference recursion within 1e-12.
  series.canonical = false;
  if (series.base_index == 0) {
    std::vector<std::complex<double>> reference;
    reference.emplace_back(1.0, 0.0);
    for (std::size_t n = 1; n < series.coefficients.size(); ++n) {
      reference.push_back(reference.back() * series.alpha /
                          std::sqrt(static_cast<double>(n)));
    }
    normalize(reference);
    // compare up to the imported list's own normalization
    std::vector<std::complex<double>> imported = series.coefficients;
    normalize(imported);
    double worst = 0.0;
    for (std::size_t i = 0; i < imported.size(); ++i) {
      worst = std::max(worst, std::abs(imported[i] - reference[i]));
    }
    series.canonical = worst <= 1e-12;
  }
  return series;
}

}  // namespace gcs
