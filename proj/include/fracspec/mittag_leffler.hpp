#pragma once

// Two-parameter Mittag-Leffler function E_{a,b}(z) = sum_n z^n / Gamma(a n + b)
// for real z, and the fractional exp / cos / sin built from it.
//
// Terms are formed in quad precision (coefficients 1/Gamma from libquadmath)
// and accumulated in double-double. Every evaluation carries an a-priori
// error bound: sum|t_n| * (per-term rounding) + truncated tail. On the
// negative axis sum|t_n| grows like E(|z|) while the result stays O(1), so
// the bound is what decides how far out a tolerance can be certified.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <quadmath.h>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fracspec/double_double.hpp"
#include "fracspec/errors.hpp"
#include "fracspec/gamma.hpp"

namespace fracspec {

inline constexpr double kDefaultSeriesTol = 1e-9;

/// Value of a series evaluation together with its certified error bound.
struct CertifiedValue {
  DoubleDouble value;
  double error_bound = 0.0;  // absolute
  double abs_sum = 0.0;      // sum of |terms|, the cancellation scale
  int terms = 0;

  double to_double() const { return value.to_double(); }
  bool certifies(double tol) const {
    return std::isfinite(error_bound) && error_bound <= tol * std::max(1.0, std::fabs(value.hi));
  }
};

class MittagLeffler {
 public:
  /// Coefficients are tabulated until a*n + b reaches this argument.
  static constexpr double kMaxGammaArgument = 1600.0;
  static constexpr std::size_t kMaxTerms = 40000;

  MittagLeffler(double alpha, double beta) : alpha_(alpha), beta_(beta) {
    if (!(alpha > 0.0) || !(alpha <= 3.0)) throw std::invalid_argument("MittagLeffler: alpha must lie in (0, 3]");
    if (!(beta > 0.0)) throw std::invalid_argument("MittagLeffler: beta must be positive");
    const __float128 a = alpha, b = beta;
    for (std::size_t n = 0; n < kMaxTerms; ++n) {
      const __float128 arg = a * static_cast<__float128>(n) + b;
      if (arg > kMaxGammaArgument) break;
      coeffs_.push_back(rgamma_q(arg));
    }
  }

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }

  /// Sums the series at z without judging the result.
  CertifiedValue evaluate(__float128 z) const {
    constexpr double kQuadEps = 9.63e-35;  // 2^-113
    CertifiedValue out;
    DoubleDouble sum;
    double abs_sum = 0.0;
    __float128 power = 1;
    double prev = std::numeric_limits<double>::infinity();
    std::size_t n = 0;
    bool converged = false;
    for (; n < coeffs_.size(); ++n) {
      const __float128 term = coeffs_[n] * power;
      const double mag = std::fabs(static_cast<double>(term));
      if (!std::isfinite(mag)) break;
      sum += DoubleDouble::from_quad(term);
      abs_sum += mag;
      // past the peak and below the double-double resolution of the running scale
      if (mag <= prev && (mag == 0.0 || mag <= 1e-3 * kDoubleDoubleEps * abs_sum)) {
        converged = true;
        prev = mag;
        ++n;
        break;
      }
      prev = mag;
      power *= z;
    }
    out.value = sum;
    out.abs_sum = abs_sum;
    out.terms = static_cast<int>(n);
    if (!converged || !std::isfinite(abs_sum)) {
      out.error_bound = std::numeric_limits<double>::infinity();
      return out;
    }
    const double per_term = 2.0 * kDoubleDoubleEps + double(n) * kQuadEps;
    const double tail = 2.0 * prev;  // terms past the peak decay faster than geometrically
    out.error_bound = abs_sum * per_term * double(n) + tail + std::fabs(sum.hi) * kDoubleDoubleEps;
    return out;
  }

  /// E_{a,b}(z); throws PrecisionLoss when tol cannot be certified.
  double operator()(double z, double tol = kDefaultSeriesTol) const {
    const CertifiedValue r = evaluate(z);
    if (!r.certifies(tol)) {
      std::ostringstream os;
      os << "mittag_leffler(" << alpha_ << ", " << beta_ << ", " << z << "): error bound " << r.error_bound
         << " exceeds tolerance " << tol;
      throw PrecisionLoss(os.str(), validity_radius(tol));
    }
    return r.to_double();
  }

  /// Largest R such that every z in [-R, 0] certifies tol. The negative axis
  /// is the worst case for cancellation; positive z only loses precision to
  /// overflow.
  double validity_radius(double tol) const {
    if (!(tol < std::numeric_limits<double>::infinity())) return std::numeric_limits<double>::infinity();
    auto ok = [&](double r) { return evaluate(-static_cast<__float128>(r)).certifies(tol); };
    if (!ok(0.0)) return 0.0;
    double lo = 0.0, hi = 1.0;
    while (ok(hi)) {
      lo = hi;
      hi *= 2.0;
      if (hi > 1e6) return lo;
    }
    for (int it = 0; it < 60 && hi - lo > 1e-9 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      (ok(mid) ? lo : hi) = mid;
    }
    return lo;
  }

 private:
  double alpha_;
  double beta_;
  std::vector<__float128> coeffs_;
};

/// Shared, immutable coefficient tables keyed by (alpha, beta).
inline const MittagLeffler& mittag_leffler_series(double alpha, double beta) {
  static std::mutex mutex;
  static std::map<std::pair<double, double>, std::unique_ptr<MittagLeffler>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{alpha, beta}];
  if (!slot) slot = std::make_unique<MittagLeffler>(alpha, beta);
  return *slot;
}

inline double mittag_leffler(double alpha, double beta, double z, double tol = kDefaultSeriesTol) {
  return mittag_leffler_series(alpha, beta)(z, tol);
}

/// Largest |z| on the negative axis for which E_{alpha,beta} certifies tol.
inline double domain_of_validity(double alpha, double beta, double tol) {
  if (!(tol < std::numeric_limits<double>::infinity())) return std::numeric_limits<double>::infinity();
  return mittag_leffler_series(alpha, beta).validity_radius(tol);
}

// ---------------------------------------------------------------------------
// Fractional exponential, cosine and sine on the sign-extended coordinate
// chi(x) = sign(x)|x|^alpha.

namespace ml_detail {

inline void check_order(double alpha) {
  if (!(alpha > 0.0) || !(alpha <= 1.5)) throw std::invalid_argument("fractional order must lie in (0, 1.5]");
}

inline double sign(double x) { return x < 0.0 ? -1.0 : 1.0; }

inline double require(const CertifiedValue& r, double tol, const char* name, double alpha, double x) {
  if (!r.certifies(tol)) {
    std::ostringstream os;
    os << name << "(" << alpha << ", " << x << "): error bound " << r.error_bound << " exceeds tolerance " << tol;
    throw PrecisionLoss(os.str(), std::numeric_limits<double>::quiet_NaN());
  }
  return r.to_double();
}

}  // namespace ml_detail

/// cos(alpha, x) = E_{2a}(-|x|^{2a}) with its error bound.
inline CertifiedValue frac_cos_certified(double alpha, double x) {
  ml_detail::check_order(alpha);
  const __float128 u = powq(fabsq(static_cast<__float128>(x)), static_cast<__float128>(alpha));
  return mittag_leffler_series(2.0 * alpha, 1.0).evaluate(-u * u);
}

/// sin(alpha, x) = sign(x)|x|^a E_{2a,1+a}(-|x|^{2a}) with its error bound.
inline CertifiedValue frac_sin_certified(double alpha, double x) {
  ml_detail::check_order(alpha);
  const __float128 u = powq(fabsq(static_cast<__float128>(x)), static_cast<__float128>(alpha));
  CertifiedValue r = mittag_leffler_series(2.0 * alpha, 1.0 + alpha).evaluate(-u * u);
  const DoubleDouble scale = DoubleDouble::from_quad(x < 0 ? -u : u);
  r.value = r.value * scale;
  r.error_bound *= std::fabs(scale.hi);
  r.abs_sum *= std::fabs(scale.hi);
  return r;
}

/// exp(alpha, chi(x)) as the even part plus sign(x) times the odd part.
inline CertifiedValue frac_exp_certified(double alpha, double x) {
  ml_detail::check_order(alpha);
  const __float128 u = powq(fabsq(static_cast<__float128>(x)), static_cast<__float128>(alpha));
  const CertifiedValue even = mittag_leffler_series(2.0 * alpha, 1.0).evaluate(u * u);
  const CertifiedValue odd = mittag_leffler_series(2.0 * alpha, 1.0 + alpha).evaluate(u * u);
  const DoubleDouble scale = DoubleDouble::from_quad(x < 0 ? -u : u);
  CertifiedValue r;
  r.value = even.value + odd.value * scale;
  r.error_bound = even.error_bound + odd.error_bound * std::fabs(scale.hi) +
                  2.0 * kDoubleDoubleEps * (std::fabs(even.value.hi) + std::fabs(odd.value.hi * scale.hi));
  r.abs_sum = even.abs_sum + odd.abs_sum * std::fabs(scale.hi);
  r.terms = even.terms + odd.terms;
  return r;
}

inline double frac_cos(double alpha, double x, double tol = kDefaultSeriesTol) {
  return ml_detail::require(frac_cos_certified(alpha, x), tol, "frac_cos", alpha, x);
}

inline double frac_sin(double alpha, double x, double tol = kDefaultSeriesTol) {
  return ml_detail::require(frac_sin_certified(alpha, x), tol, "frac_sin", alpha, x);
}

inline double frac_exp(double alpha, double x, double tol = kDefaultSeriesTol) {
  return ml_detail::require(frac_exp_certified(alpha, x), tol, "frac_exp", alpha, x);
}

/// Largest |x| at which both cos(alpha, x) and sin(alpha, x) certify tol.
inline double frac_trig_validity(double alpha, double tol = kDefaultSeriesTol) {
  ml_detail::check_order(alpha);
  if (!(tol < std::numeric_limits<double>::infinity())) return std::numeric_limits<double>::infinity();
  // sin carries the extra |x|^a factor; bisect directly on x.
  auto ok = [&](double x) { return frac_cos_certified(alpha, x).certifies(tol) && frac_sin_certified(alpha, x).certifies(tol); };
  double lo = 0.0, hi = 1.0;
  while (ok(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e5) return lo;
  }
  for (int it = 0; it < 50 && hi - lo > 1e-9 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (ok(mid) ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace fracspec
