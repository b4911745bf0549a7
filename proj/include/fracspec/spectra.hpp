#pragma once

// Bound states built from the fractional trig functions: infinite-well
// eigenstates in 1D/ND, the radial ground state, and the potential an
// ordinary Schroedinger equation would need to reproduce the same thermal
// density.

#include <algorithm>
#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <quadmath.h>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fracspec/context.hpp"
#include "fracspec/double_double.hpp"
#include "fracspec/errors.hpp"
#include "fracspec/frac_series.hpp"
#include "fracspec/gamma.hpp"
#include "fracspec/mittag_leffler.hpp"
#include "fracspec/quadrature.hpp"

namespace fracspec {

inline constexpr double kHalfPi = std::numbers::pi / 2.0;
inline constexpr double kRootScanStep = 0.01;
inline constexpr double kRootTol = 1e-12;

enum class TrigKind { cos, sin };

inline const char* to_string(TrigKind k) { return k == TrigKind::cos ? "cos" : "sin"; }

/// Positive roots on the (pi/2)-scaled axis.
struct ZeroList {
  std::vector<double> roots;
  /// Fewer roots than requested: the scan ended (x_max or the certified
  /// range of the series) before enough sign changes were seen.
  bool truncated = false;
  /// Largest scaled x at which the function could be evaluated.
  double scanned_to = 0.0;
};

namespace spectra_detail {

/// Refines a bracketed sign change of f on [lo, hi].
template <class F>
double refine_root(F&& f, double lo, double hi, double flo, double fhi) {
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  std::uintmax_t iters = 200;
  auto tol = [](double a, double b) { return std::fabs(a - b) <= kRootTol * std::max(1.0, std::fabs(a)); };
  const auto r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, tol, iters);
  return 0.5 * (r.first + r.second);
}

/// Scans a certified function on (0, x_max] for sign changes. `eval` returns
/// a CertifiedValue; the scan stops where certification fails.
template <class Eval>
ZeroList scan_roots(Eval&& eval, int count, double x_max, double step = kRootScanStep) {
  ZeroList out;
  auto value = [&](double x) { return eval(x).to_double(); };
  double x_prev = step;
  CertifiedValue c_prev = eval(x_prev);
  if (!c_prev.certifies(kDefaultSeriesTol)) {
    out.truncated = true;
    return out;
  }
  out.scanned_to = x_prev;
  const int n_steps = static_cast<int>(std::floor(x_max / step + 1e-9));
  for (int i = 2; i <= n_steps && static_cast<int>(out.roots.size()) < count; ++i) {
    const double x = step * i;
    const CertifiedValue c = eval(x);
    if (!c.certifies(kDefaultSeriesTol)) {
      out.truncated = true;
      break;
    }
    out.scanned_to = x;
    const double f0 = c_prev.to_double(), f1 = c.to_double();
    if ((f0 < 0.0) != (f1 < 0.0) || f1 == 0.0) out.roots.push_back(refine_root(value, x_prev, x, f0, f1));
    x_prev = x;
    c_prev = c;
  }
  if (static_cast<int>(out.roots.size()) < count) out.truncated = true;
  return out;
}

}  // namespace spectra_detail

/// First `count` positive roots of cos/sin(alpha, (pi/2) x) on (0, x_max].
inline ZeroList find_zeros(TrigKind kind, double alpha, int count, double x_max = 40.0) {
  if (!(alpha > 0.0)) throw std::invalid_argument("find_zeros: alpha must be positive");
  if (count < 1) throw std::invalid_argument("find_zeros: count must be positive");
  auto eval = [&](double x) {
    return kind == TrigKind::cos ? frac_cos_certified(alpha, kHalfPi * x) : frac_sin_certified(alpha, kHalfPi * x);
  };
  ZeroList z = spectra_detail::scan_roots(eval, count, x_max);
  if (z.roots.empty() && alpha <= 0.5) {
    std::ostringstream os;
    os << "find_zeros: " << to_string(kind) << "(" << alpha << ", x) has no sign change on (0, " << z.scanned_to << "]";
    throw NoZeros(os.str());
  }
  return z;
}

/// Scaled root of state n in the combined numbering: even n are cos roots,
/// odd n sin roots, in increasing order.
inline std::vector<double> well_roots(double alpha, int count) {
  const int n_cos = (count + 1) / 2, n_sin = count / 2;
  const ZeroList c = find_zeros(TrigKind::cos, alpha, n_cos);
  ZeroList s;
  if (n_sin > 0) s = find_zeros(TrigKind::sin, alpha, n_sin);
  if (static_cast<int>(c.roots.size()) < n_cos || static_cast<int>(s.roots.size()) < n_sin) {
    std::ostringstream os;
    os << "well_roots: only " << c.roots.size() << " cos and " << s.roots.size() << " sin roots certified at alpha "
       << alpha << " (needed " << n_cos << " and " << n_sin << ")";
    throw NoZeros(os.str());
  }
  std::vector<double> out(count);
  for (int n = 0; n < count; ++n) out[n] = n % 2 == 0 ? c.roots[n / 2] : s.roots[n / 2];
  return out;
}

/// Energy scale 1/2 mc^2 (hbar/(mc L))^{2 alpha} for a length L in fm.
inline double energy_unit(const AlphaContext& ctx, double length_fm) {
  return 0.5 * ctx.mc2 * std::pow(ctx.compton_fm() / length_fm, 2.0 * ctx.alpha);
}

struct WellState {
  double alpha = 1.0;
  int n = 0;
  Parity parity = Parity::even;
  double root = 0.0;  // on the (pi/2)-scaled axis
  double k0 = 0.0;    // root * pi/2
  double a = 1.0;     // half width, fm
  double energy = 0.0;  // MeV

  /// Unnormalized eigenfunction; vanishes at x = +-a.
  double psi(double x, double tol = kDefaultSeriesTol) const {
    return parity == Parity::even ? frac_cos(alpha, k0 * x / a, tol) : frac_sin(alpha, k0 * x / a, tol);
  }
};

/// Lowest `count` states of the infinite well [-a, a], alternating parity.
inline std::vector<WellState> well_states_1d(double alpha, int count, double a, const AlphaContext& ctx) {
  if (!(a > 0.0)) throw std::invalid_argument("well_states_1d: half width must be positive");
  if (count < 1) throw std::invalid_argument("well_states_1d: count must be positive");
  AlphaContext c = ctx;
  c.alpha = alpha;
  c.validate();
  const std::vector<double> roots = well_roots(alpha, count);
  std::vector<WellState> out;
  for (int n = 0; n < count; ++n) {
    WellState s;
    s.alpha = alpha;
    s.n = n;
    s.parity = n % 2 == 0 ? Parity::even : Parity::odd;
    s.root = roots[n];
    s.k0 = kHalfPi * roots[n];
    s.a = a;
    s.energy = energy_unit(c, a) * std::pow(s.k0, 2.0 * alpha);
    out.push_back(s);
  }
  return out;
}

/// Energy of the product state with the given 1D indices and half widths.
inline double well_energy_nd(double alpha, const std::vector<int>& indices, const std::vector<double>& half_widths,
                             const AlphaContext& ctx) {
  if (indices.size() != half_widths.size() || indices.empty())
    throw std::invalid_argument("well_energy_nd: need one half width per index");
  const int top = *std::max_element(indices.begin(), indices.end());
  if (*std::min_element(indices.begin(), indices.end()) < 0) throw std::invalid_argument("well_energy_nd: negative index");
  const std::vector<double> roots = well_roots(alpha, top + 1);
  AlphaContext c = ctx;
  c.alpha = alpha;
  double sum = 0.0;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (!(half_widths[i] > 0.0)) throw std::invalid_argument("well_energy_nd: half widths must be positive");
    sum += std::pow(kHalfPi * roots[indices[i]] / half_widths[i], 2.0 * alpha);
  }
  return energy_unit(c, 1.0) * sum;
}

/// Free particle: E = 1/2 mc^2 (hbar |k| / (mc))^{2 alpha}, k in 1/fm.
inline double free_energy(double alpha, double k, const AlphaContext& ctx) {
  return 0.5 * ctx.mc2 * std::pow(ctx.compton_fm() * std::fabs(k), 2.0 * alpha);
}

// ---------------------------------------------------------------------------
// Radial ground state g(N, alpha, x) = sum_j (-1)^j a_j |x|^{2 alpha j}.

struct RadialGround {
  int N = 3;
  double alpha = 1.0;
  std::vector<double> coeffs;  // a_j
  std::vector<double> eta;     // eta_j, eta_0 unused (0)
  double first_zero = 0.0;     // on the (pi/2)-scaled axis
  double k0 = 0.0;             // first_zero * pi/2

  std::vector<__float128> coeffs_q;

  CertifiedValue evaluate_certified(double x) const {
    const __float128 u = powq(fabsq(static_cast<__float128>(x)), 2 * static_cast<__float128>(alpha));
    DoubleDouble sum;
    double abs_sum = 0.0, prev = std::numeric_limits<double>::infinity();
    __float128 power = 1;
    bool converged = false;
    std::size_t j = 0;
    for (; j < coeffs_q.size(); ++j) {
      const __float128 t = (j % 2 ? -coeffs_q[j] : coeffs_q[j]) * power;
      const double mag = std::fabs(static_cast<double>(t));
      sum += DoubleDouble::from_quad(t);
      abs_sum += mag;
      if (mag <= prev && (mag == 0.0 || mag <= 1e-3 * kDoubleDoubleEps * abs_sum)) {
        converged = true;
        prev = mag;
        ++j;
        break;
      }
      prev = mag;
      power *= u;
    }
    CertifiedValue r;
    r.value = sum;
    r.abs_sum = abs_sum;
    r.terms = static_cast<int>(j);
    r.error_bound = converged && std::isfinite(abs_sum)
                        ? abs_sum * double(j) * (2.0 * kDoubleDoubleEps + double(j) * 1e-34) + 2.0 * prev
                        : std::numeric_limits<double>::infinity();
    return r;
  }

  double operator()(double x) const {
    const CertifiedValue r = evaluate_certified(x);
    if (!r.certifies(kDefaultSeriesTol)) {
      std::ostringstream os;
      os << "radial ground state at x = " << x << ": error bound " << r.error_bound;
      throw PrecisionLoss(os.str(), std::numeric_limits<double>::quiet_NaN());
    }
    return r.to_double();
  }
};

inline constexpr double kRadialScanMax = 20.0;

/// Coefficients from a_j = a_{j-1} / ((N-1) j eta_1 + eta_j) with
/// eta_j = Gamma(1 + 2 alpha j) / Gamma(1 + 2 alpha (j-1)), and the first zero.
inline RadialGround radial_ground(int N, double alpha, int terms = 600) {
  if (N < 2) throw std::invalid_argument("radial_ground: dimension must be at least 2");
  if (!(alpha > 0.0) || !(alpha <= 1.5)) throw std::invalid_argument("radial_ground: alpha must lie in (0, 1.5]");
  if (terms < 2) throw std::invalid_argument("radial_ground: need at least two terms");
  RadialGround g;
  g.N = N;
  g.alpha = alpha;
  const __float128 a2 = 2 * static_cast<__float128>(alpha);
  auto eta = [&](int j) { return gamma_ratio_q(1 + a2 * j, 1 + a2 * (j - 1)); };
  const __float128 eta1 = eta(1);
  g.coeffs_q.push_back(1);
  g.eta.push_back(0.0);
  for (int j = 1; j < terms; ++j) {
    const __float128 ej = eta(j);
    const __float128 aj = g.coeffs_q.back() / ((N - 1) * j * eta1 + ej);
    if (aj == 0) break;
    g.coeffs_q.push_back(aj);
    g.eta.push_back(static_cast<double>(ej));
  }
  for (auto c : g.coeffs_q) g.coeffs.push_back(static_cast<double>(c));
  auto eval = [&](double x) { return g.evaluate_certified(kHalfPi * x); };
  const ZeroList z = spectra_detail::scan_roots(eval, 1, kRadialScanMax);
  if (z.roots.empty()) {
    std::ostringstream os;
    os << "radial_ground: no sign change of g(" << N << ", " << alpha << ", x) on (0, " << z.scanned_to << "]";
    throw NoZeros(os.str());
  }
  g.first_zero = z.roots.front();
  g.k0 = kHalfPi * g.first_zero;
  return g;
}

/// e0 = 1/2 mc^2 (hbar k0 / (mc r0))^{2 alpha}; k0 defaults to the computed
/// first zero of the radial ground state.
inline double spherical_ground_energy(int N, double alpha, double r0, const AlphaContext& ctx, double k0 = 0.0) {
  if (!(r0 > 0.0)) throw std::invalid_argument("spherical_ground_energy: radius must be positive");
  if (k0 <= 0.0) k0 = radial_ground(N, alpha).k0;
  AlphaContext c = ctx;
  c.alpha = alpha;
  return energy_unit(c, r0) * std::pow(k0, 2.0 * alpha);
}

// ---------------------------------------------------------------------------
// Equivalent potential.
//
// Lengths in units of the half width a, energies and T in units of
// 1/2 mc^2 (hbar/(mc a))^{2 alpha}, so E_n = k0_n^{2 alpha}.

struct PotentialSample {
  double x;
  double v_over_t;
};

inline constexpr double kBoltzmannCutoff = 1e-6;

inline std::vector<PotentialSample> equivalent_potential(double alpha, double T, int n_states,
                                                         const std::vector<double>& grid) {
  if (!(T > 0.0)) throw std::invalid_argument("equivalent_potential: temperature must be positive");
  if (n_states < 1) throw std::invalid_argument("equivalent_potential: need at least one state");
  for (double x : grid)
    if (!(std::fabs(x) <= 1.0)) throw std::invalid_argument("equivalent_potential: grid must lie in [-1, 1]");
  AlphaContext unit(alpha, 1.0, 1.0);
  // one extra state measures the weight of everything left out
  const std::vector<WellState> states = well_states_1d(alpha, n_states + 1, 1.0, unit);
  std::vector<double> weight(n_states + 1), norm(n_states, 0.0);
  for (int n = 0; n <= n_states; ++n) weight[n] = std::exp(-std::pow(states[n].k0, 2.0 * alpha) / T);
  double z = 0.0;
  for (int n = 0; n < n_states; ++n) z += weight[n];
  if (weight[n_states] / z > kBoltzmannCutoff) {
    std::ostringstream os;
    os << "equivalent_potential: first omitted state carries relative weight " << weight[n_states] / z
       << " > " << kBoltzmannCutoff << "; raise n_states or lower T";
    throw CutoffTooSmall(os.str());
  }
  for (int n = 0; n < n_states; ++n) {
    const WellState& s = states[n];
    auto sq = [&](double u) {
      const double p = s.psi(u);
      return p * p;
    };
    norm[n] = symmetric_integral(sq, alpha, 1.0, Measure::riemann_liouville, 1e-9);
  }
  std::vector<PotentialSample> out;
  double v_min = std::numeric_limits<double>::infinity();
  for (double x : grid) {
    double rho = 0.0;
    for (int n = 0; n < n_states; ++n) {
      const double p = states[n].psi(x);
      rho += p * p / norm[n] * weight[n];
    }
    rho /= z;
    const double v = rho > 0.0 ? -std::log(rho) : std::numeric_limits<double>::infinity();
    v_min = std::min(v_min, v);
    out.push_back({x, v});
  }
  for (auto& s : out) s.v_over_t -= v_min;
  return out;
}

}  // namespace fracspec
