#pragma once

#include <stdexcept>

namespace fracspec {

inline constexpr double kHbarC = 197.327;  // MeV fm

/// Fractional order plus the physical constants the spectra depend on.
struct AlphaContext {
  double alpha = 1.0;
  double hbar_c = kHbarC;  // MeV fm
  double mc2 = 1400.0;     // MeV

  AlphaContext() = default;
  AlphaContext(double a, double mass, double hc = kHbarC) : alpha(a), hbar_c(hc), mc2(mass) { validate(); }

  void validate() const {
    if (!(alpha > 0.0)) throw std::invalid_argument("AlphaContext: alpha must be positive");
    if (!(hbar_c > 0.0)) throw std::invalid_argument("AlphaContext: hbar_c must be positive");
    if (!(mc2 > 0.0)) throw std::invalid_argument("AlphaContext: mc2 must be positive");
  }

  /// Reduced Compton wavelength hbar/(mc) in fm.
  double compton_fm() const { return hbar_c / mc2; }
};

}  // namespace fracspec
