#pragma once

// Charmonium as a rotational spectrum:
//
//   M(j, m) = kappa J^2(alpha, j) + B_j L_z(alpha, m) + m0 + delta_{j3} dtau
//
// For fixed alpha and c model the formula is linear in
// (m0, kappa, B1, B2, B3, dtau), so fitting is a linear least-squares
// problem; alpha itself is found by scanning the residual.

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <json.hpp>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "fracspec/angular.hpp"
#include "fracspec/context.hpp"
#include "fracspec/errors.hpp"
#include "fracspec/gamma.hpp"
#include "fracspec/quadrature.hpp"
#include "fracspec/report.hpp"
#include "fracspec/spectra.hpp"

#ifndef FRACSPEC_DATA_DIR
#define FRACSPEC_DATA_DIR "data"
#endif

namespace fracspec {

struct CharmState {
  std::string name;
  int j = 0;
  int m = 0;
  double mass = 0.0;                // MeV
  std::optional<double> mass_err;  // MeV
};

// ---------------------------------------------------------------------------
// Dataset: a JSON array of {name, j, m, mass_mev, err_mev?}.

namespace charm_detail {

// Line on which each top-level array element starts.
inline std::vector<std::size_t> element_lines(const std::string& text) {
  std::vector<std::size_t> lines;
  std::size_t line = 1;
  int depth = 0;
  bool in_string = false, escaped = false;
  for (char ch : text) {
    if (ch == '\n') ++line;
    if (in_string) {
      if (escaped) escaped = false;
      else if (ch == '\\') escaped = true;
      else if (ch == '"') in_string = false;
      continue;
    }
    if (ch == '"') in_string = true;
    else if (ch == '[' || ch == '{') {
      if (depth == 1) lines.push_back(line);
      ++depth;
    } else if (ch == ']' || ch == '}') --depth;
  }
  return lines;
}

inline std::size_t line_of_offset(const std::string& text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(offset), '\n'));
}

}  // namespace charm_detail

inline std::vector<CharmState> parse_dataset(const std::string& text) {
  using nlohmann::json;
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) return {};
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("dataset is not valid JSON: ") + e.what(), charm_detail::line_of_offset(text, e.byte));
  }
  if (!doc.is_array()) throw ParseError("dataset must be a JSON array of states", 1);
  const std::vector<std::size_t> lines = charm_detail::element_lines(text);
  std::vector<CharmState> out;
  std::map<std::pair<int, int>, std::size_t> seen;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const std::size_t line = i < lines.size() ? lines[i] : 1;
    const json& r = doc[i];
    if (!r.is_object()) throw ParseError("state record must be an object", line);
    auto need = [&](const char* key) -> const json& {
      if (!r.contains(key)) throw ParseError(std::string("state record lacks '") + key + "'", line);
      return r.at(key);
    };
    CharmState s;
    const json& name = need("name");
    const json& j = need("j");
    const json& m = need("m");
    const json& mass = need("mass_mev");
    if (!name.is_string()) throw ParseError("'name' must be a string", line);
    if (!j.is_number_integer() || !m.is_number_integer()) throw ParseError("'j' and 'm' must be integers", line);
    if (!mass.is_number()) throw ParseError("'mass_mev' must be a number", line);
    s.name = name.get<std::string>();
    s.j = j.get<int>();
    s.m = m.get<int>();
    s.mass = mass.get<double>();
    if (r.contains("err_mev") && !r.at("err_mev").is_null()) {
      if (!r.at("err_mev").is_number() || r.at("err_mev").get<double>() < 0.0)
        throw ParseError("'err_mev' must be a non-negative number", line);
      s.mass_err = r.at("err_mev").get<double>();
    }
    if (s.j < 0) throw ParseError("'j' must be non-negative", line);
    if (s.m < 0 || s.m > s.j) throw ParseError("'m' must satisfy 0 <= m <= j", line);
    if (!(s.mass > 0.0)) throw ParseError("'mass_mev' must be positive", line);
    const auto [it, fresh] = seen.emplace(std::make_pair(s.j, s.m), line);
    if (!fresh) {
      std::ostringstream os;
      os << "state <" << s.j << s.m << "> appears on line " << it->second << " and again on line " << line;
      throw DuplicateState(os.str());
    }
    out.push_back(std::move(s));
  }
  return out;
}

/// Bundled dataset, unless FRACSPEC_DATA points elsewhere.
inline std::filesystem::path default_dataset_path() {
  if (const char* env = std::getenv("FRACSPEC_DATA"); env && *env) return env;
  return std::filesystem::path(FRACSPEC_DATA_DIR) / "charmonium.json";
}

inline std::vector<CharmState> load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open dataset " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_dataset(buf.str());
}

inline const CharmState* find_state(const std::vector<CharmState>& states, int j, int m) {
  for (const auto& s : states)
    if (s.j == j && s.m == m) return &s;
  return nullptr;
}

// ---------------------------------------------------------------------------
// Mass formula.

struct FitParams {
  double m0 = 0.0;
  double kappa = 0.0;
  double b1 = 0.0, b2 = 0.0, b3 = 0.0;
  double delta_tau = 0.0;
  double alpha = 2.0 / 3.0;
  CVariant c_model = CVariant::c0;
  /// B_j for j outside 1..3, when states with m > 0 exist there.
  std::map<int, double> extra_b;
  /// Fixed commutator constant instead of the c-model formula.
  std::optional<double> c_override;
};

inline double model_j2(const FitParams& p, int j) {
  if (!p.c_override) return j2_eigenvalue(p.alpha, j, p.c_model);
  const double l = euler_eigenvalue(p.alpha, j);
  return l * (l + *p.c_override);
}

inline double model_b(const FitParams& p, int j) {
  switch (j) {
    case 1: return p.b1;
    case 2: return p.b2;
    case 3: return p.b3;
    default: {
      const auto it = p.extra_b.find(j);
      if (it == p.extra_b.end()) throw MissingB("mass_model: no B_" + std::to_string(j) + " for an m > 0 state");
      return it->second;
    }
  }
}

inline double mass_model(const FitParams& p, int j, int m) {
  if (j < 0 || m < 0 || m > j) throw std::invalid_argument("mass_model: need 0 <= m <= j");
  double v = p.kappa * model_j2(p, j) + p.m0;
  if (m > 0) v += model_b(p, j) * lz_eigenvalue(p.alpha, m);
  if (j == 3) v += p.delta_tau;
  return v;
}

inline double predict(const FitParams& p, int j, int m) { return mass_model(p, j, m); }

// ---------------------------------------------------------------------------
// Alpha from a multiplet and the two-state solve.

struct MultipletAlpha {
  double ratio;
  double alpha;
};

/// Solves L_z(alpha, 2) = (m2 - m0)/(m1 - m0) by bisection.
inline MultipletAlpha alpha_from_multiplet(double m0, double m1, double m2, double alpha_lo = 0.5,
                                           double alpha_hi = 1.2) {
  if (m1 == m0) throw std::invalid_argument("alpha_from_multiplet: m1 equals m0");
  const double r = (m2 - m0) / (m1 - m0);
  auto f = [](double a) { return euler_eigenvalue(a, 2); };
  double lo = alpha_lo, hi = alpha_hi;
  const double flo = f(lo), fhi = f(hi);
  if (!(r >= flo && r <= fhi)) {
    std::ostringstream os;
    os << "alpha_from_multiplet: ratio " << r << " outside [" << flo << ", " << fhi << "] attainable on [" << lo
       << ", " << hi << "]";
    throw OutOfRange(os.str());
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < r ? lo : hi) = mid;
  }
  return {r, 0.5 * (lo + hi)};
}

struct TwoStateSolution {
  double m0;
  double kappa;
};

/// m0 and kappa from the <10> and <20> masses with the c0 model.
inline TwoStateSolution two_state_solve(double eta_c, double chi0, double alpha) {
  const double j1 = j2_eigenvalue(alpha, 1, CVariant::c0), j2 = j2_eigenvalue(alpha, 2, CVariant::c0);
  const double kappa = (chi0 - eta_c) / (j2 - j1);
  return {eta_c - kappa * j1, kappa};
}

// ---------------------------------------------------------------------------
// Least squares.

struct FitDiagnostics {
  std::vector<double> residuals;  // m_th - m_exp, dataset order
  double dm_all_rms = 0.0, dm_all_abs = 0.0;
  double dm_m0_rms = 0.0, dm_m0_abs = 0.0;
};

struct FitResult {
  FitParams params;
  FitDiagnostics diag;
  std::vector<std::pair<double, double>> scan;  // (alpha, rms) when scanned
};

inline const std::array<const char*, 6>& fit_parameter_names() {
  static const std::array<const char*, 6> names = {"m0c2", "kappa", "B1", "B2", "B3", "delta_tau"};
  return names;
}

inline FitDiagnostics diagnostics(const FitParams& p, const std::vector<CharmState>& states) {
  FitDiagnostics d;
  double s2 = 0, s1 = 0, z2 = 0, z1 = 0;
  int nz = 0;
  for (const auto& s : states) {
    const double r = mass_model(p, s.j, s.m) - s.mass;
    d.residuals.push_back(r);
    s2 += r * r;
    s1 += std::fabs(r);
    if (s.m == 0) {
      z2 += r * r;
      z1 += std::fabs(r);
      ++nz;
    }
  }
  const double n = static_cast<double>(states.size());
  if (n > 0) {
    d.dm_all_rms = std::sqrt(s2 / n);
    d.dm_all_abs = s1 / n;
  }
  if (nz > 0) {
    d.dm_m0_rms = std::sqrt(z2 / nz);
    d.dm_m0_abs = z1 / nz;
  }
  return d;
}

/// Linear least squares at fixed alpha and c model.
inline FitResult fit(const std::vector<CharmState>& states, double alpha, CVariant c_model) {
  const int rows = static_cast<int>(states.size());
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(rows, 6);
  Eigen::VectorXd y(rows);
  FitParams p;
  p.alpha = alpha;
  p.c_model = c_model;
  for (int i = 0; i < rows; ++i) {
    const CharmState& s = states[i];
    if (s.m > 0 && (s.j < 1 || s.j > 3))
      throw MissingB("fit: state <" + std::to_string(s.j) + std::to_string(s.m) + "> needs a B_j outside the fitted set");
    A(i, 0) = 1.0;
    A(i, 1) = j2_eigenvalue(alpha, s.j, c_model);
    if (s.m > 0) A(i, 1 + s.j) = lz_eigenvalue(alpha, s.m);
    if (s.j == 3) A(i, 5) = 1.0;
    y(i) = s.mass;
  }
  for (int c = 0; c < 6; ++c)
    if (A.col(c).isZero(0.0))
      throw RankDeficient(std::string("fit: no state constrains parameter ") + fit_parameter_names()[c]);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  if (qr.rank() < 6)
    throw RankDeficient("fit: design matrix has rank " + std::to_string(qr.rank()) + " < 6");
  const Eigen::VectorXd x = qr.solve(y);
  p.m0 = x(0);
  p.kappa = x(1);
  p.b1 = x(2);
  p.b2 = x(3);
  p.b3 = x(4);
  p.delta_tau = x(5);
  FitResult r;
  r.params = p;
  r.diag = diagnostics(p, states);
  return r;
}

inline constexpr double kScanLo = 0.60, kScanHi = 0.72, kScanStep = 0.001, kScanTol = 1e-4;

/// Grid scan of the RMS residual over alpha, then golden-section refinement
/// around the best grid point. Ties go to the smaller alpha.
inline FitResult fit_scan(const std::vector<CharmState>& states, CVariant c_model, double lo = kScanLo,
                          double hi = kScanHi, double step = kScanStep, double tol = kScanTol) {
  if (!(hi > lo) || !(step > 0.0)) throw std::invalid_argument("fit_scan: bad scan range");
  auto rms = [&](double a) { return fit(states, a, c_model).diag.dm_all_rms; };
  std::vector<std::pair<double, double>> curve;
  const int n = static_cast<int>(std::floor((hi - lo) / step + 1e-9));
  double best_a = lo, best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= n; ++i) {
    const double a = lo + i * step;
    const double v = rms(a);
    curve.emplace_back(a, v);
    if (v < best) {
      best = v;
      best_a = a;
    }
  }
  double a = std::max(lo, best_a - step), b = std::min(hi, best_a + step);
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = rms(c), fd = rms(d);
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = rms(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = rms(d);
    }
  }
  const double refined = 0.5 * (a + b);
  FitResult r = rms(refined) <= best ? fit(states, refined, c_model) : fit(states, best_a, c_model);
  r.scan = std::move(curve);
  return r;
}

// ---------------------------------------------------------------------------
// <33> from the j = 3 multiplet by linear interpolation in L_z.

struct Interpolated {
  double value;
  double uncertainty;
};

/// M<33> = M<30> + (M<32> - M<30>) L_z(3)/L_z(2); the uncertainty combines
/// the mass errors and an alpha error in quadrature.
inline Interpolated interpolate_33(double m30, double m32, double alpha, double alpha_err = 0.0, double m30_err = 0.0,
                                   double m32_err = 0.0) {
  auto ratio = [](double a) { return lz_eigenvalue(a, 3) / lz_eigenvalue(a, 2); };
  const double r = ratio(alpha);
  const double h = 1e-6;
  const double dr = (ratio(alpha + h) - ratio(alpha - h)) / (2 * h);
  const double span = m32 - m30;
  const double var = std::pow(span * dr * alpha_err, 2) + std::pow((1.0 - r) * m30_err, 2) + std::pow(r * m32_err, 2);
  return {m30 + span * r, std::sqrt(var)};
}

// ---------------------------------------------------------------------------
// Size of the lightest state.

struct QuarkMasses {
  double md_c2 = 300.0;   // MeV
  double mc_c2 = 1400.0;  // MeV
};

/// Operator whose expectation is reported as the radius.
enum class RadiusOperator {
  cartesian,     // (hbar/mc)^{1-a}/Gamma(1+a) sqrt(sum_i x_i^{2a})
  radial_power,  // (hbar/mc)^{1-a}/Gamma(1+a) r^a
};

struct RadiusOptions {
  double k0 = 0.0;  // root in units of 1 (not pi/2); 0 = computed
  Measure measure = Measure::lebesgue;
  RadiusOperator op = RadiusOperator::cartesian;
  int panels = 6;
};

struct RadiusResult {
  double size_fm = 0.0;      // half width a, or sphere radius r0
  double r_mean_fm = 0.0;    // <r-hat>
  double zero_point = 0.0;   // MeV
  double k0 = 0.0;
  bool unbounded = false;    // zero-point energy vanishes: size -> infinity
  double quadrature_change = 0.0;  // relative change under panel refinement
};

namespace charm_detail {

inline double zero_point(double sigma_mass, const QuarkMasses& q) {
  const double e0 = sigma_mass - (2.0 * q.md_c2 + q.mc_c2);
  if (e0 < 0.0) throw NegativeZeroPoint("mass below the constituent sum by " + std::to_string(-e0) + " MeV");
  return e0;
}

inline double rhat_prefactor(double alpha, const AlphaContext& ctx) {
  return std::pow(ctx.compton_fm(), 1.0 - alpha) * rgamma(1.0 + alpha);
}

// <sqrt(sum x_i^{2a})> over [0,a]^3 with weight prod psi(x_i)^2, from
// tabulated axis values.
inline double cube_expectation(double alpha, double a, double k0, Measure m, int panels) {
  const AxisRule rule = axis_rule(alpha, a, m, panels);
  const std::size_t n = rule.x.size();
  std::vector<double> w(n), p(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double psi = frac_cos(alpha, k0 * rule.x[i] / a);
    w[i] = rule.w[i] * psi * psi;
    p[i] = std::pow(rule.x[i], 2.0 * alpha);
  }
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double wij = w[i] * w[j], pij = p[i] + p[j];
      for (std::size_t k = 0; k < n; ++k) {
        num += wij * w[k] * std::sqrt(pij + p[k]);
        den += wij * w[k];
      }
    }
  if (!(den > 0.0)) throw DegenerateNorm("radius_box: vanishing norm");
  return num / den;
}

}  // namespace charm_detail

/// Half width of the cubic box from the zero-point energy
/// (3/2) mc^2 (hbar k0 / (mc a))^{2a}, and <r-hat> in its ground state.
inline RadiusResult radius_box(double sigma_mass, const QuarkMasses& q, double alpha, const AlphaContext& ctx,
                               const RadiusOptions& opt = {}) {
  RadiusResult r;
  r.zero_point = charm_detail::zero_point(sigma_mass, q);
  r.k0 = opt.k0 > 0.0 ? opt.k0 : kHalfPi * well_roots(alpha, 1).front();
  const double mc2 = q.mc_c2;
  const double lambda = ctx.hbar_c / mc2;
  if (r.zero_point == 0.0) {
    r.unbounded = true;
    r.size_fm = r.r_mean_fm = std::numeric_limits<double>::infinity();
    return r;
  }
  r.size_fm = lambda * r.k0 * std::pow(1.5 * mc2 / r.zero_point, 1.0 / (2.0 * alpha));
  AlphaContext c = ctx;
  c.mc2 = mc2;
  const double pref = charm_detail::rhat_prefactor(alpha, c);
  if (opt.op == RadiusOperator::radial_power)
    throw std::invalid_argument("radius_box: the radial-power operator is only defined for the sphere");
  const double coarse = charm_detail::cube_expectation(alpha, r.size_fm, r.k0, opt.measure, opt.panels);
  const double fine = charm_detail::cube_expectation(alpha, r.size_fm, r.k0, opt.measure, opt.panels + 2);
  r.quadrature_change = std::fabs(fine - coarse) / std::fabs(fine);
  r.r_mean_fm = pref * fine;
  return r;
}

namespace charm_detail {

// Mean of sqrt(sum_i |n_i|^{2a}) over the positive octant of the unit sphere.
inline double octant_angular_mean(double alpha) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  const double e = 2.0 * alpha;
  auto inner = [&](double theta) {
    const double st = std::sin(theta), ct = std::cos(theta);
    auto f = [&](double phi) {
      return std::sqrt(std::pow(st * std::cos(phi), e) + std::pow(st * std::sin(phi), e) + std::pow(ct, e));
    };
    return GK::integrate(f, 0.0, kHalfPi, 12, 1e-12) * st;
  };
  return GK::integrate(inner, 0.0, kHalfPi, 12, 1e-12) / kHalfPi;
}

}  // namespace charm_detail

/// Sphere radius from e0 = 1/2 mc^2 (hbar k0 / (mc r0))^{2a} and <r-hat> in the
/// radial ground state. Only the ordinary volume measure is supported here.
inline RadiusResult radius_sphere(double sigma_mass, const QuarkMasses& q, double alpha, const AlphaContext& ctx,
                                  const RadiusOptions& opt = {}) {
  if (opt.measure != Measure::lebesgue)
    throw std::invalid_argument("radius_sphere: only the ordinary volume measure is supported");
  RadiusResult r;
  r.zero_point = charm_detail::zero_point(sigma_mass, q);
  const RadialGround g = radial_ground(3, alpha);
  r.k0 = opt.k0 > 0.0 ? opt.k0 : g.k0;
  const double mc2 = q.mc_c2;
  const double lambda = ctx.hbar_c / mc2;
  if (r.zero_point == 0.0) {
    r.unbounded = true;
    r.size_fm = r.r_mean_fm = std::numeric_limits<double>::infinity();
    return r;
  }
  r.size_fm = lambda * r.k0 * std::pow(0.5 * mc2 / r.zero_point, 1.0 / (2.0 * alpha));
  AlphaContext c = ctx;
  c.mc2 = mc2;
  const double pref = charm_detail::rhat_prefactor(alpha, c);
  // radial moments in units of r0; g vanishes at t = 1
  auto dens = [&](double t) {
    const double v = g(r.k0 * t);
    return v * v * t * t;
  };
  const double den = plain_integral(dens, 1.0, 1e-10);
  const double num = plain_integral([&](double t) { return dens(t) * std::pow(t, alpha); }, 1.0, 1e-10);
  const double angular = opt.op == RadiusOperator::cartesian ? charm_detail::octant_angular_mean(alpha) : 1.0;
  r.r_mean_fm = pref * std::pow(r.size_fm, alpha) * angular * num / den;
  return r;
}

// ---------------------------------------------------------------------------
// Reference parameter sets and the masses they imply.

struct ReferenceParameterSet {
  std::string label;
  FitParams params;                 // alpha as quoted
  std::optional<double> reference_c;  // commutator constant as quoted, if numeric
  std::array<double, 12> masses;    // <00>..<40>, then <50>
};

/// (j, m) in table order; the last row is the <50> prediction.
inline const std::array<std::pair<int, int>, 12>& table3_states() {
  static const std::array<std::pair<int, int>, 12> s = {{{0, 0}, {1, 0}, {1, 1}, {2, 0}, {2, 1}, {2, 2},
                                                          {3, 0}, {3, 1}, {3, 2}, {3, 3}, {4, 0}, {5, 0}}};
  return s;
}

inline const std::vector<ReferenceParameterSet>& reference_parameter_sets() {
  auto mk = [](double alpha, CVariant v, double m0, double kappa, double b1, double b2, double b3, double dt) {
    FitParams p;
    p.alpha = alpha;
    p.c_model = v;
    p.m0 = m0;
    p.kappa = kappa;
    p.b1 = b1;
    p.b2 = b2;
    p.b3 = b3;
    p.delta_tau = dt;
    return p;
  };
  static const std::vector<ReferenceParameterSet> sets = {
      {"alpha=2/3 c0", mk(2.0 / 3.0, CVariant::c0, 2439.33, 274.66, 108.25, 87.00, 263.69, -129.04), 1.0,
       {2439.33, 2988.66, 3096.92, 3426.89, 3513.89, 3554.00, 3772.35, 4036.04, 4157.60, 4263.01, 4406.07, 4937.06}},
      {"alpha=0.681 c0", mk(0.681, CVariant::c0, 2451.26, 263.83, 117.98, 93.39, 259.16, -124.48), 1.0,
       {2451.26, 2978.94, 3096.92, 3417.80, 3511.19, 3555.85, 3773.92, 4033.08, 4157.02, 4264.98, 4413.80, 4959.54}},
      {"alpha=0.647 c1", mk(0.647, CVariant::c1, 2452.67, 336.16, 119.79, 95.72, 270.19, -129.00), 0.545,
       {2452.67, 2977.12, 3096.92, 3417.15, 3512.87, 3554.68, 3770.17, 4040.37, 4158.39, 4260.08, 4414.36, 4957.54}},
      {"alpha=0.649 c2", mk(0.649, CVariant::c2, 2451.90, 367.41, 116.13, 98.37, 269.46, -124.39), std::nullopt,
       {2451.90, 2980.78, 3096.92, 3413.65, 3512.03, 3555.26, 3770.41, 4039.87, 4158.30, 4260.42, 4415.22, 4969.07}},
  };
  return sets;
}

struct Table3Row {
  int j, m;
  std::string name;
  std::optional<double> m_exp;
  std::vector<double> m_th;       // one per parameter set
  std::vector<double> reference;  // reference m_th
};

struct Table3Report {
  std::vector<std::string> set_labels;
  std::vector<double> alphas;  // alpha actually used per set
  std::vector<Table3Row> rows;

  double max_abs_deviation() const {
    double m = 0.0;
    for (const auto& r : rows)
      for (std::size_t i = 0; i < r.m_th.size(); ++i) m = std::max(m, std::fabs(r.m_th[i] - r.reference[i]));
    return m;
  }

  CsvTable csv() const {
    CsvTable t;
    t.header = {"state", "name", "m_exp"};
    for (std::size_t i = 0; i < set_labels.size(); ++i) {
      const std::string tag = "set" + std::to_string(i + 1);
      for (const char* col : {"_m_th", "_delta", "_ref", "_deviation"}) t.header.push_back(tag + col);
    }
    for (const auto& r : rows) {
      std::vector<std::string> cells{"<" + std::to_string(r.j) + std::to_string(r.m) + ">", r.name,
                                      r.m_exp ? fmt6(*r.m_exp) : ""};
      for (std::size_t i = 0; i < r.m_th.size(); ++i) {
        cells.push_back(fmt6(r.m_th[i]));
        cells.push_back(r.m_exp ? fmt6(r.m_th[i] - *r.m_exp) : "");
        cells.push_back(fmt6(r.reference[i]));
        cells.push_back(fmt6(r.m_th[i] - r.reference[i]));
      }
      t.add_row(std::move(cells));
    }
    return t;
  }
};

/// Masses for the given parameter sets; `alphas` overrides each set's alpha
/// when non-empty.
inline Table3Report table3_report(const std::vector<ReferenceParameterSet>& sets,
                                  const std::vector<CharmState>& dataset, const std::vector<double>& alphas = {}) {
  if (!alphas.empty() && alphas.size() != sets.size())
    throw std::invalid_argument("table3_report: one alpha per parameter set");
  Table3Report rep;
  std::vector<FitParams> params;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    FitParams p = sets[i].params;
    if (!alphas.empty()) p.alpha = alphas[i];
    rep.set_labels.push_back(sets[i].label);
    rep.alphas.push_back(p.alpha);
    params.push_back(p);
  }
  const auto& states = table3_states();
  for (std::size_t k = 0; k < states.size(); ++k) {
    Table3Row row;
    row.j = states[k].first;
    row.m = states[k].second;
    if (const CharmState* s = find_state(dataset, row.j, row.m)) {
      row.name = s->name;
      row.m_exp = s->mass;
    } else {
      row.name = "X";
    }
    for (std::size_t i = 0; i < sets.size(); ++i) {
      row.m_th.push_back(mass_model(params[i], row.j, row.m));
      row.reference.push_back(sets[i].masses[k]);
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

/// Alpha minimizing the RMS residual for each reference set's c model.
inline std::vector<double> rms_optimal_alphas(const std::vector<ReferenceParameterSet>& sets,
                                              const std::vector<CharmState>& dataset) {
  std::vector<double> out;
  for (const auto& s : sets) {
    const bool fixed = std::fabs(s.params.alpha - 2.0 / 3.0) < 1e-12;
    out.push_back(fixed ? s.params.alpha : fit_scan(dataset, s.params.c_model).params.alpha);
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON views.

inline nlohmann::json to_json(const FitParams& p) {
  nlohmann::json j = {{"m0c2", p.m0},       {"kappa", p.kappa}, {"B1", p.b1},
                      {"B2", p.b2},         {"B3", p.b3},       {"delta_tau", p.delta_tau},
                      {"alpha", p.alpha},   {"c_model", to_string(p.c_model)}};
  if (p.c_override) j["c_override"] = *p.c_override;
  return j;
}

inline nlohmann::json to_json(const FitResult& r) {
  return {{"params", to_json(r.params)},
          {"dm_m0_rms", r.diag.dm_m0_rms},
          {"dm_all_rms", r.diag.dm_all_rms},
          {"dm_m0_abs", r.diag.dm_m0_abs},
          {"dm_all_abs", r.diag.dm_all_abs}};
}

}  // namespace fracspec
