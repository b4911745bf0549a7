#pragma once

// Power series in the sign-extended coordinate chi(kx) = sign(kx)|kx|^alpha:
//
//   f(x) = sum_n a_n * sign(kx)^n * |kx|^{n alpha}
//
// Even series carry only even n, odd series only odd n. The Caputo
// derivative acts on chi^n like d/dx acts on x^n, up to a gamma ratio.

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <ostream>
#include <quadmath.h>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fracspec/double_double.hpp"
#include "fracspec/gamma.hpp"
#include "fracspec/mittag_leffler.hpp"

namespace fracspec {

enum class Parity { even, odd, none };

inline Parity flip(Parity p) {
  switch (p) {
    case Parity::even: return Parity::odd;
    case Parity::odd: return Parity::even;
    default: return Parity::none;
  }
}

inline constexpr std::size_t kDefaultSeriesTerms = 64;

class FracSeries {
 public:
  FracSeries(double alpha, std::vector<double> coeffs, Parity parity, double k = 1.0, double tail_coeff = 0.0)
      : alpha_(alpha), k_(k), parity_(parity), coeffs_(std::move(coeffs)), tail_coeff_(std::fabs(tail_coeff)) {
    if (!(alpha > 0.0) || !(alpha <= 1.5)) throw std::invalid_argument("FracSeries: alpha must lie in (0, 1.5]");
    if (!std::isfinite(k)) throw std::invalid_argument("FracSeries: non-finite scale");
    for (std::size_t n = 0; n < coeffs_.size(); ++n) {
      if (!std::isfinite(coeffs_[n])) throw std::invalid_argument("FracSeries: non-finite coefficient");
      const bool wrong = (parity_ == Parity::even && n % 2 == 1) || (parity_ == Parity::odd && n % 2 == 0);
      if (wrong && coeffs_[n] != 0.0) throw std::invalid_argument("FracSeries: coefficient breaks declared parity");
    }
  }

  double alpha() const { return alpha_; }
  double k() const { return k_; }
  Parity parity() const { return parity_; }
  const std::vector<double>& coeffs() const { return coeffs_; }
  std::size_t order() const { return coeffs_.size(); }
  /// Magnitude of the first dropped coefficient (0 for exact finite series).
  double tail_coeff() const { return tail_coeff_; }

  bool is_zero() const {
    for (double c : coeffs_)
      if (c != 0.0) return false;
    return true;
  }

  /// Value at x with an error bound covering rounding and truncation.
  CertifiedValue evaluate_certified(double x) const {
    const double kx = k_ * x;
    const __float128 u = powq(fabsq(static_cast<__float128>(kx)), static_cast<__float128>(alpha_));
    const __float128 step = kx < 0 ? -u : u;
    DoubleDouble sum;
    double abs_sum = 0.0;
    __float128 power = 1;
    for (double c : coeffs_) {
      const __float128 t = static_cast<__float128>(c) * power;
      sum += DoubleDouble::from_quad(t);
      abs_sum += std::fabs(static_cast<double>(t));
      power *= step;
    }
    CertifiedValue r;
    r.value = sum;
    r.abs_sum = abs_sum;
    r.terms = static_cast<int>(coeffs_.size());
    const double n = static_cast<double>(coeffs_.size());
    // coefficients are doubles: their own rounding dominates
    r.error_bound = abs_sum * (1.2e-16 + n * kDoubleDoubleEps) + 2.0 * tail_coeff_ * static_cast<double>(fabsq(power));
    return r;
  }

  double operator()(double x) const { return evaluate_certified(x).to_double(); }

  /// Coefficient dump for debugging (columns n, a_n).
  void write_csv(std::ostream& os) const {
    os << "n,a_n\n";
    char buf[64];
    for (std::size_t n = 0; n < coeffs_.size(); ++n) {
      std::snprintf(buf, sizeof buf, "%zu,%.17g\n", n, coeffs_[n]);
      os << buf;
    }
  }

 private:
  double alpha_;
  double k_;
  Parity parity_;
  std::vector<double> coeffs_;
  double tail_coeff_;
};

/// Gamma(1 + (n+1) a) / Gamma(1 + n a), the factor the Caputo derivative
/// attaches to chi^{n+1} -> chi^n.
inline double caputo_ratio(double alpha, std::size_t n) {
  const __float128 a = alpha;
  return static_cast<double>(gamma_ratio_q(1 + a * static_cast<__float128>(n + 1), 1 + a * static_cast<__float128>(n)));
}

/// D f for f in chi(kx): coefficients shift down by one and pick up the
/// gamma ratio and sign(k)|k|^alpha. Parity flips.
inline FracSeries caputo_derivative(const FracSeries& f) {
  const double alpha = f.alpha();
  const double scale = (f.k() < 0 ? -1.0 : 1.0) * std::pow(std::fabs(f.k()), alpha);
  const auto& a = f.coeffs();
  std::vector<double> b;
  if (a.size() > 1) {
    b.resize(a.size() - 1);
    for (std::size_t n = 0; n + 1 < a.size(); ++n) b[n] = scale * a[n + 1] * caputo_ratio(alpha, n);
  }
  const double tail = f.tail_coeff() * std::fabs(scale) * caputo_ratio(alpha, a.size() - (a.empty() ? 0 : 1));
  return FracSeries(alpha, std::move(b), flip(f.parity()), f.k(), tail);
}

// ---------------------------------------------------------------------------
// Standard series.

inline FracSeries constant_series(double alpha, double value) {
  return FracSeries(alpha, {value}, Parity::even);
}

/// chi(x)^n, i.e. sign(x)^n |x|^{n alpha}.
inline FracSeries monomial_series(double alpha, std::size_t n, double k = 1.0) {
  std::vector<double> c(n + 1, 0.0);
  c[n] = 1.0;
  return FracSeries(alpha, std::move(c), n % 2 == 0 ? Parity::even : Parity::odd, k);
}

namespace series_detail {

inline double inv_gamma_term(double alpha, std::size_t n) {
  return static_cast<double>(rgamma_q(1 + static_cast<__float128>(alpha) * static_cast<__float128>(n)));
}

}  // namespace series_detail

/// cos(alpha, kx): a_{2m} = (-1)^m / Gamma(1 + 2 m alpha).
inline FracSeries frac_cos_series(double alpha, double k = 1.0, std::size_t terms = kDefaultSeriesTerms) {
  std::vector<double> c(terms, 0.0);
  for (std::size_t n = 0; n < terms; n += 2) c[n] = ((n / 2) % 2 ? -1.0 : 1.0) * series_detail::inv_gamma_term(alpha, n);
  const std::size_t next = terms % 2 == 0 ? terms : terms + 1;
  return FracSeries(alpha, std::move(c), Parity::even, k, series_detail::inv_gamma_term(alpha, next));
}

/// sin(alpha, kx): a_{2m+1} = (-1)^m / Gamma(1 + (2m+1) alpha).
inline FracSeries frac_sin_series(double alpha, double k = 1.0, std::size_t terms = kDefaultSeriesTerms) {
  std::vector<double> c(terms, 0.0);
  for (std::size_t n = 1; n < terms; n += 2) c[n] = ((n / 2) % 2 ? -1.0 : 1.0) * series_detail::inv_gamma_term(alpha, n);
  const std::size_t next = terms % 2 == 1 ? terms : terms + 1;
  return FracSeries(alpha, std::move(c), Parity::odd, k, series_detail::inv_gamma_term(alpha, next));
}

/// exp(alpha, chi(kx)): a_n = 1 / Gamma(1 + n alpha).
inline FracSeries frac_exp_series(double alpha, double k = 1.0, std::size_t terms = kDefaultSeriesTerms) {
  std::vector<double> c(terms);
  for (std::size_t n = 0; n < terms; ++n) c[n] = series_detail::inv_gamma_term(alpha, n);
  return FracSeries(alpha, std::move(c), Parity::none, k, series_detail::inv_gamma_term(alpha, terms));
}

}  // namespace fracspec
