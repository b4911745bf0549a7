#pragma once

// Fractional integration.
//
// The measure du^alpha on [0, a] is the Riemann-Liouville integral taken at
// the endpoint:
//
//   I^a f(a) = 1/Gamma(alpha) * int_0^a (a - u)^{alpha-1} f(u) du
//
// The endpoint singularity disappears under s = (a - u)^alpha:
//
//   I^a f(a) = 1/Gamma(1 + alpha) * int_0^{a^alpha} f(a - s^{1/alpha}) ds
//
// On a symmetric interval [-a, a] each half is measured from its own
// endpoint, so odd integrands integrate to zero exactly.

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <cstddef>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "fracspec/errors.hpp"
#include "fracspec/gamma.hpp"

namespace fracspec {

enum class Measure { riemann_liouville, lebesgue };

inline constexpr double kDefaultQuadTol = 1e-10;

namespace quad_detail {

template <class F>
double adaptive(F&& f, double lo, double hi, double rel_tol, const char* what) {
  // tanh-sinh copes with the algebraic endpoint behaviour |u|^alpha leaves
  static thread_local boost::math::quadrature::tanh_sinh<double> integrator;
  double err = 0.0, l1 = 0.0;
  const double v = integrator.integrate(f, lo, hi, rel_tol, &err, &l1);
  if (!std::isfinite(v) || err > 100.0 * rel_tol * std::max(l1, 1e-300)) {
    std::ostringstream os;
    os << what << ": adaptive refinement stalled (error estimate " << err << ", L1 " << l1 << ")";
    throw QuadratureFailure(os.str());
  }
  return v;
}

}  // namespace quad_detail

/// Riemann-Liouville integral of order alpha of f over [0, a], evaluated at a.
template <class F>
double frac_integral(F&& f, double alpha, double a, double rel_tol = kDefaultQuadTol) {
  if (!(alpha > 0.0)) throw std::invalid_argument("frac_integral: alpha must be positive");
  if (!(a >= 0.0)) throw std::invalid_argument("frac_integral: endpoint must be non-negative");
  if (a == 0.0) return 0.0;
  const double inv = 1.0 / alpha;
  const double top = std::pow(a, alpha);
  auto g = [&](double s) { return f(std::max(0.0, a - std::pow(s, inv))); };
  return quad_detail::adaptive(g, 0.0, top, rel_tol, "frac_integral") * rgamma(1.0 + alpha);
}

/// Ordinary integral over [0, a].
template <class F>
double plain_integral(F&& f, double a, double rel_tol = kDefaultQuadTol) {
  if (!(a >= 0.0)) throw std::invalid_argument("plain_integral: endpoint must be non-negative");
  if (a == 0.0) return 0.0;
  return quad_detail::adaptive(f, 0.0, a, rel_tol, "plain_integral");
}

/// Integral over [0, a] under the chosen measure.
template <class F>
double half_integral(F&& f, double alpha, double a, Measure m, double rel_tol = kDefaultQuadTol) {
  return m == Measure::riemann_liouville ? frac_integral(f, alpha, a, rel_tol) : plain_integral(f, a, rel_tol);
}

/// Integral over [-a, a]: both halves measured from their own endpoint.
template <class F>
double symmetric_integral(F&& f, double alpha, double a, Measure m = Measure::riemann_liouville,
                          double rel_tol = kDefaultQuadTol) {
  auto mirrored = [&](double u) { return f(-u); };
  return half_integral(f, alpha, a, m, rel_tol) + half_integral(mirrored, alpha, a, m, rel_tol);
}

// ---------------------------------------------------------------------------
// Fixed product rules for iterated (multi-dimensional) integrals.

struct AxisRule {
  std::vector<double> x;
  std::vector<double> w;
};

/// Interval of one axis: [0, a] or, if symmetric, [-a, a].
struct AxisDomain {
  double half_width;
  bool symmetric = false;
};

namespace quad_detail {

// Full set of 32-point Gauss-Legendre nodes on [-1, 1].
inline const AxisRule& gauss32() {
  static const AxisRule rule = [] {
    using G = boost::math::quadrature::gauss<double, 32>;
    AxisRule r;
    const auto& xs = G::abscissa();
    const auto& ws = G::weights();
    for (std::size_t i = 0; i < xs.size(); ++i) {
      r.x.push_back(xs[i]);
      r.w.push_back(ws[i]);
      if (xs[i] != 0.0) {
        r.x.push_back(-xs[i]);
        r.w.push_back(ws[i]);
      }
    }
    return r;
  }();
  return rule;
}

}  // namespace quad_detail

/// Composite rule on [0, a] with panels graded geometrically toward x = 0,
/// where the sign-extended powers |x|^alpha are least smooth. For the
/// Riemann-Liouville measure every panel is mapped to s = (a - x)^alpha.
inline AxisRule axis_rule(double alpha, double a, Measure m, int panels = 6, double grading = 0.2) {
  if (!(a > 0.0)) throw std::invalid_argument("axis_rule: half width must be positive");
  if (panels < 1) throw std::invalid_argument("axis_rule: need at least one panel");
  std::vector<double> cuts{0.0};
  for (int p = panels - 1; p >= 1; --p) cuts.push_back(a * std::pow(grading, p));
  cuts.push_back(a);
  const AxisRule& g = quad_detail::gauss32();
  AxisRule r;
  const double inv = 1.0 / alpha;
  const double norm = m == Measure::riemann_liouville ? rgamma(1.0 + alpha) : 1.0;
  for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
    if (m == Measure::lebesgue) {
      const double mid = 0.5 * (cuts[p] + cuts[p + 1]), half = 0.5 * (cuts[p + 1] - cuts[p]);
      for (std::size_t i = 0; i < g.x.size(); ++i) {
        r.x.push_back(mid + half * g.x[i]);
        r.w.push_back(half * g.w[i]);
      }
    } else {
      const double s_lo = std::pow(a - cuts[p + 1], alpha), s_hi = std::pow(a - cuts[p], alpha);
      const double mid = 0.5 * (s_lo + s_hi), half = 0.5 * (s_hi - s_lo);
      for (std::size_t i = 0; i < g.x.size(); ++i) {
        const double s = mid + half * g.x[i];
        r.x.push_back(std::max(0.0, a - std::pow(s, inv)));
        r.w.push_back(half * g.w[i] * norm);
      }
    }
  }
  return r;
}

/// Rule for an axis domain; symmetric domains mirror the half rule.
inline AxisRule axis_rule(double alpha, const AxisDomain& d, Measure m, int panels = 6) {
  AxisRule half = axis_rule(alpha, d.half_width, m, panels);
  if (!d.symmetric) return half;
  AxisRule r = half;
  for (std::size_t i = 0; i < half.x.size(); ++i) {
    r.x.push_back(-half.x[i]);
    r.w.push_back(half.w[i]);
  }
  return r;
}

using PointFunction = std::function<double(const std::vector<double>&)>;

/// <f|O|g> / <f|g> with the iterated fractional measure over a product domain.
inline double expectation(const PointFunction& op, const PointFunction& f, const PointFunction& g, double alpha,
                          const std::vector<AxisDomain>& domain, Measure m = Measure::riemann_liouville,
                          int panels = 6) {
  if (domain.empty()) throw std::invalid_argument("expectation: empty domain");
  std::vector<AxisRule> rules;
  for (const auto& d : domain) rules.push_back(axis_rule(alpha, d, m, panels));
  const std::size_t dim = domain.size();
  std::vector<std::size_t> idx(dim, 0);
  std::vector<double> pt(dim);
  double num = 0.0, den = 0.0, scale = 0.0;
  while (true) {
    double w = 1.0;
    for (std::size_t d = 0; d < dim; ++d) {
      pt[d] = rules[d].x[idx[d]];
      w *= rules[d].w[idx[d]];
    }
    const double fg = f(pt) * g(pt);
    den += w * fg;
    scale += std::fabs(w * fg);
    num += w * fg * op(pt);
    std::size_t d = 0;
    while (d < dim && ++idx[d] == rules[d].x.size()) idx[d++] = 0;
    if (d == dim) break;
  }
  if (!(std::fabs(den) > 1e-12 * scale) || den == 0.0) throw DegenerateNorm("expectation: <f|g> vanishes on the domain");
  return num / den;
}

}  // namespace fracspec
