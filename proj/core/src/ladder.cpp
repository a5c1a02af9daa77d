#include "gcs/ladder.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gcs/errors.hpp"

namespace gcs {

namespace {

// Eager consistency horizon: all declared roots plus a margin of the low
// levels every construction touches.
int scan_horizon(const std::vector<int>& roots) {
  int horizon = 33;
  if (!roots.empty()) horizon = std::max(horizon, roots.back() + 2);
  return horizon;
}

[[noreturn]] void fail(const std::string& what) { throw InvalidLadder(what); }

}  // namespace

LadderSpec::LadderSpec(Sequence p, Sequence q, Sequence f,
                       std::vector<int> roots)
    : m_p(std::move(p)),
      m_q(std::move(q)),
      m_f(std::move(f)),
      m_roots(std::move(roots)) {
  if (!m_p || !m_q || !m_f) fail("ladder sequences must be callable");
  if (std::fabs(m_p(0)) > kRootEpsilon) fail("p_0 must vanish");
  if (!std::is_sorted(m_roots.begin(), m_roots.end())) {
    fail("declared roots must be sorted ascending");
  }
  if (std::adjacent_find(m_roots.begin(), m_roots.end()) != m_roots.end()) {
    fail("declared roots must be distinct");
  }
  if (!m_roots.empty() && m_roots.front() < 1) {
    fail("roots of the weight are indexed from 1");
  }
  for (int root : m_roots) {
    if (std::fabs(m_f(root)) >= kRootEpsilon) {
      std::ostringstream msg;
      msg << "declared root " << root << " has f = " << m_f(root);
      fail(msg.str());
    }
  }
  for (int n = 1; n <= scan_horizon(m_roots); ++n) {
    if (std::fabs(m_f(n)) < kRootEpsilon &&
        !std::binary_search(m_roots.begin(), m_roots.end(), n)) {
      std::ostringstream msg;
      msg << "undeclared root of f at n = " << n;
      fail(msg.str());
    }
  }

  m_canonical = m_roots.empty();
  for (int n = 0; m_canonical && n <= 48; ++n) {
    if (std::fabs(m_p(n) - n) > 1e-12 ||
        std::fabs(m_q(n) - (n + 1.0)) > 1e-12 ||
        (n >= 1 && std::fabs(m_f(n) - 1.0) > 1e-12)) {
      m_canonical = false;
    }
  }
}

double LadderSpec::p(int n) const {
  double value = m_p(n);
  if (value < 0.0) {
    std::ostringstream msg;
    msg << "p_" << n << " = " << value << " is negative";
    fail(msg.str());
  }
  return value;
}

double LadderSpec::q(int n) const {
  double value = m_q(n);
  if (value <= 0.0) {
    std::ostringstream msg;
    msg << "q_" << n << " = " << value << " is not positive";
    fail(msg.str());
  }
  return value;
}

double LadderSpec::f(int n) const {
  double value = m_f(n);
  if (std::fabs(value) < kRootEpsilon &&
      !std::binary_search(m_roots.begin(), m_roots.end(), n)) {
    std::ostringstream msg;
    msg << "undeclared root of f at n = " << n;
    fail(msg.str());
  }
  return value;
}

int LadderSpec::max_root() const {
  if (m_roots.empty()) fail("max_root: weight has no roots");
  return m_roots.back();
}

std::optional<int> LadderSpec::next_root_after(int m) const {
  auto it = std::upper_bound(m_roots.begin(), m_roots.end(), m);
  if (it == m_roots.end()) return std::nullopt;
  return *it;
}

LadderSpec LadderSpec::oscillator() {
  return LadderSpec([](int n) { return static_cast<double>(n); },
                    [](int n) { return static_cast<double>(n) + 1.0; },
                    [](int) { return 1.0; });
}

LadderSpec LadderSpec::oscillator_with_f(Sequence f, std::vector<int> roots) {
  return LadderSpec([](int n) { return static_cast<double>(n); },
                    [](int n) { return static_cast<double>(n) + 1.0; },
                    std::move(f), std::move(roots));
}

double case_map_f(LayerKind kind, const LadderSpec::Sequence& f, int n) {
  if (n < 1) {
    throw std::invalid_argument("case_map_f: defined for n >= 1");
  }
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  double prefactor;
  if (kind == LayerKind::Monolayer) {
    prefactor = n == 1 ? inv_sqrt2 : 0.5;
  } else {
    prefactor = n == 1 ? 1.0 : (n == 2 ? inv_sqrt2 : 0.5);
  }
  return f(n) * prefactor;
}

LadderTerm action_coefficient(const LadderSpec& spec, Direction direction,
                              int n) {
  if (n < 0) {
    throw std::invalid_argument("action_coefficient: negative index");
  }
  if (direction == Direction::Down) {
    if (n == 0) return {0.0, -1};
    return {std::sqrt(spec.p(n)) * spec.f(n), n - 1};
  }
  return {std::sqrt(spec.q(n)) * spec.f(n + 1), n + 1};
}

double gamma_n(const LadderSpec& spec, int n) {
  if (n < 1) throw std::invalid_argument("gamma_n: defined for n >= 1");
  double weight = spec.f(n);
  return std::sqrt(spec.q(n - 1) * spec.p(n)) * weight * weight;
}

std::vector<double> hw_f_sequence(const LadderSpec::Sequence& p,
                                  const LadderSpec::Sequence& q, int N) {
  if (N < 1) throw std::invalid_argument("hw_f_sequence: need N >= 1");
  std::vector<double> f(static_cast<size_t>(N) + 1, 0.0);
  double qp = q(0) * p(1);
  if (qp <= 0.0) {
    throw InvalidLadder("hw_f_sequence: q_0 p_1 must be positive");
  }
  f[1] = std::pow(qp, -0.25);
  for (int n = 1; n < N; ++n) {
    double tail = q(n) * p(n + 1);
    if (tail <= 0.0) {
      std::ostringstream msg;
      msg << "hw_f_sequence: q_" << n << " p_" << n + 1
          << " must be positive";
      throw InvalidLadder(msg.str());
    }
    double fn = f[static_cast<size_t>(n)];
    f[static_cast<size_t>(n) + 1] = std::sqrt(
        (1.0 + std::sqrt(q(n - 1) * p(n)) * fn * fn) / std::sqrt(tail));
  }
  return f;
}

}  // namespace gcs
