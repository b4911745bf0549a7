#pragma once

// Factorizing the Schroedinger operator into three matrix-valued fractional
// operators
//
//   R = a A d_t^{a_t} + b B^i d_i^{a_i} + c C     (and R', R'')
//
// with 9x9 matrices built from three cyclic 3x3 phase matrices. Derivative
// symbols commute with everything, so products are expanded as polynomials
// in (d_t, d_1, d_2, d_3) with ordered matrix coefficients. The scalars
// a, b, c are implied by the monomial (a per d_t, b per d_i, c per constant
// factor) and only ever enter through a^2 c = -i hbar and b^3 = -hbar^2/2m.
// Units: hbar = m = c = 1.

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <boost/rational.hpp>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include <json.hpp>

namespace fracspec {

using cplx = std::complex<double>;
using Mat3 = Eigen::Matrix<cplx, 3, 3>;
using Mat9 = Eigen::Matrix<cplx, 9, 9>;

inline constexpr double kMatrixTol = 1e-12;

/// x_k = exp(2 pi i k / 3), k = 1, 2, 3.
// Closed form keeps x1 + x2 + x3 exactly zero.
inline cplx phase(int k) {
  const double h = std::sqrt(3.0) / 2.0;
  switch (((k % 3) + 3) % 3) {
    case 1: return {-0.5, h};
    case 2: return {-0.5, -h};
    default: return {1.0, 0.0};
  }
}

inline std::array<Mat3, 3> build_sigma() {
  const cplx x1 = phase(1), x2 = phase(2), x3 = phase(3);
  Mat3 s1 = Mat3::Zero(), s2 = Mat3::Zero(), s3 = Mat3::Zero();
  s1(0, 1) = x1;
  s1(1, 2) = x2;
  s1(2, 0) = x3;
  s2(0, 1) = x2;
  s2(1, 2) = x1;
  s2(2, 0) = x3;
  s3(0, 0) = x1;
  s3(1, 1) = x2;
  s3(2, 2) = x3;
  return {s1, s2, s3};
}

inline Mat9 kron(const Mat3& a, const Mat3& b) {
  Mat9 out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out.block<3, 3>(3 * i, 3 * j) = a(i, j) * b;
  return out;
}

/// gamma^0 = 1 (x) sigma^3, gamma^i = sigma^i (x) sigma^1.
inline std::array<Mat9, 4> build_gamma() {
  const auto s = build_sigma();
  return {kron(Mat3::Identity(), s[2]), kron(s[0], s[0]), kron(s[1], s[0]), kron(s[2], s[0])};
}

struct CheckResult {
  std::string check_name;
  double max_abs_deviation = 0.0;
  bool pass = false;
};

inline nlohmann::json to_json(const CheckResult& c) {
  return {{"check_name", c.check_name}, {"max_abs_deviation", c.max_abs_deviation}, {"pass", c.pass}};
}

inline double max_abs(const Mat9& m) { return m.cwiseAbs().maxCoeff(); }
inline double max_abs(const Mat3& m) { return m.cwiseAbs().maxCoeff(); }

/// x1 + x2 + x3 = 0 and x_k^3 = 1.
inline CheckResult phase_check() {
  double dev = std::abs(phase(1) + phase(2) + phase(3));
  for (int k = 1; k <= 3; ++k) dev = std::max(dev, std::abs(phase(k) * phase(k) * phase(k) - 1.0));
  return {"phase_identities", dev, dev <= 1e-15};
}

/// Sum over the six orderings of sigma^i sigma^j sigma^k against 6 delta^{ijk} 1_3,
/// for all 27 index triples.
inline std::vector<CheckResult> clifford_check() {
  const auto s = build_sigma();
  std::vector<CheckResult> out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        const std::array<int, 3> idx{i, j, k};
        const std::array<std::array<int, 3>, 6> perms{{{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
        Mat3 sum = Mat3::Zero();
        for (const auto& p : perms) sum += s[idx[p[0]]] * s[idx[p[1]]] * s[idx[p[2]]];
        const Mat3 expected = (i == j && j == k) ? Mat3(6.0 * Mat3::Identity()) : Mat3(Mat3::Zero());
        const double dev = max_abs(Mat3(sum - expected));
        out.push_back({"clifford_" + std::to_string(i + 1) + std::to_string(j + 1) + std::to_string(k + 1), dev,
                       dev <= kMatrixTol});
      }
  return out;
}

// ---------------------------------------------------------------------------
// Polynomials in the commuting symbols (d_t, d_1, d_2, d_3).

using Monomial = std::array<int, 4>;  // powers of d_t, d_1, d_2, d_3

inline std::string to_string(const Monomial& m) {
  static const char* names[] = {"t", "1", "2", "3"};
  std::string s;
  for (int i = 0; i < 4; ++i)
    if (m[i] > 0) s += std::string(s.empty() ? "" : "*") + "d" + names[i] + (m[i] > 1 ? "^" + std::to_string(m[i]) : "");
  return s.empty() ? "1" : s;
}

struct MatrixPoly {
  std::map<Monomial, Mat9> terms;
  int degree = 0;  // number of R factors multiplied together

  Mat9 coeff(const Monomial& m) const {
    const auto it = terms.find(m);
    return it == terms.end() ? Mat9(Mat9::Zero()) : it->second;
  }
};

/// Ordered product: matrix coefficients multiply left to right.
inline MatrixPoly operator*(const MatrixPoly& l, const MatrixPoly& r) {
  MatrixPoly out;
  out.degree = l.degree + r.degree;
  for (const auto& [ml, cl] : l.terms)
    for (const auto& [mr, cr] : r.terms) {
      Monomial m;
      for (int i = 0; i < 4; ++i) m[i] = ml[i] + mr[i];
      auto [it, fresh] = out.terms.try_emplace(m, Mat9::Zero());
      it->second += cl * cr;
    }
  return out;
}

struct Factors {
  std::array<Mat9, 3> A, C;
  std::array<Mat9, 3> B;  // B^1..B^3, shared by all three factors
  std::array<MatrixPoly, 3> R;
};

/// A^(k) = (gamma^0 - x_k 1_9)/sqrt(3), B^i = gamma^i, C^(k) = x_k 1_3 (x) E_kk.
inline Factors build_factors() {
  const auto g = build_gamma();
  Factors f;
  for (int k = 0; k < 3; ++k) {
    const cplx x = phase(k + 1);
    f.A[k] = (g[0] - x * Mat9::Identity()) / std::sqrt(3.0);
    Mat3 e = Mat3::Zero();
    e(k, k) = 1.0;
    f.C[k] = x * kron(Mat3::Identity(), e);
  }
  for (int i = 0; i < 3; ++i) f.B[i] = g[i + 1];
  for (int k = 0; k < 3; ++k) {
    MatrixPoly p;
    p.degree = 1;
    p.terms[{1, 0, 0, 0}] = f.A[k];
    p.terms[{0, 1, 0, 0}] = f.B[0];
    p.terms[{0, 0, 1, 0}] = f.B[1];
    p.terms[{0, 0, 0, 1}] = f.B[2];
    p.terms[{0, 0, 0, 0}] = f.C[k];
    f.R[k] = p;
  }
  return f;
}

/// Fractional orders forced by matching the Schroedinger operator.
struct FractionalOrders {
  boost::rational<int> alpha_t{1, 2};
  boost::rational<int> alpha_i{2, 3};
};

struct TripleProductReport {
  std::vector<CheckResult> checks;
  /// Monomials whose coefficient should vanish but does not.
  std::vector<std::string> violations;
  std::size_t monomials = 0;

  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return violations.empty();
  }
};

/// Expands R R' R'' and compares against (a^2 c d_t^2 + b^3 sum_i d_i^3) 1_9.
inline TripleProductReport triple_product_check() {
  const Factors f = build_factors();
  const MatrixPoly p = f.R[0] * f.R[1] * f.R[2];
  TripleProductReport rep;
  rep.monomials = p.terms.size();
  const std::vector<Monomial> claimed = {{2, 0, 0, 0}, {0, 3, 0, 0}, {0, 0, 3, 0}, {0, 0, 0, 3}};
  for (const auto& m : claimed) {
    const double dev = max_abs(Mat9(p.coeff(m) - Mat9::Identity()));
    rep.checks.push_back({"triple_coefficient_" + to_string(m), dev, dev <= kMatrixTol});
  }
  double cross = 0.0;
  for (const auto& [m, c] : p.terms) {
    if (std::find(claimed.begin(), claimed.end(), m) != claimed.end()) continue;
    const double dev = max_abs(c);
    cross = std::max(cross, dev);
    if (dev > kMatrixTol) rep.violations.push_back(to_string(m));
  }
  rep.checks.push_back({"triple_cross_terms", cross, cross <= kMatrixTol});
  const FractionalOrders o;
  using R = boost::rational<int>;
  // rational against rational: mixed comparisons recurse under C++20 rewriting
  const bool exact = 2 * o.alpha_t == R(1) && 3 * o.alpha_i == R(2);
  rep.checks.push_back({"exponent_identities", exact ? 0.0 : 1.0, exact});
  return rep;
}

struct S2Report {
  std::vector<CheckResult> checks;
  Mat9 time_coefficient;                   // -i hbar A A'
  std::map<Monomial, Mat9> space_coefficients;  // b^2 c (B^i B^j + B^j B^i) or b^2 c (B^i)^2
  double remainder_norm = 0.0;            // largest remaining coefficient
  double space_prefactor = 0.0;           // b^2 c
  double reference_space_prefactor = 0.0;   // -(1/2)(1/2)^{1/3}
};

/// Structure of c R R' (the twofold iterated operator).
inline S2Report s2_structure() {
  const Factors f = build_factors();
  const MatrixPoly p = f.R[0] * f.R[1];
  S2Report rep;
  // a^2 c = -i, b^2 c = (1/2)^{2/3} with hbar = m = c = 1
  const cplx a2c(0.0, -1.0);
  const double b2c = std::pow(0.5, 2.0 / 3.0);
  rep.space_prefactor = b2c;
  rep.reference_space_prefactor = -0.5 * std::pow(0.5, 1.0 / 3.0);

  rep.time_coefficient = a2c * p.coeff({2, 0, 0, 0});
  const double tdev = max_abs(Mat9(rep.time_coefficient - a2c * f.A[0] * f.A[1]));
  rep.checks.push_back({"s2_time_coefficient", tdev, tdev <= kMatrixTol});

  double sdev = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      Monomial m{0, 0, 0, 0};
      m[1 + i] += 1;
      m[1 + j] += 1;
      const Mat9 expected = i == j ? Mat9(f.B[i] * f.B[i]) : Mat9(f.B[i] * f.B[j] + f.B[j] * f.B[i]);
      rep.space_coefficients[m] = b2c * p.coeff(m);
      sdev = std::max(sdev, max_abs(Mat9(p.coeff(m) - expected)));
    }
  rep.checks.push_back({"s2_space_coefficients", sdev, sdev <= kMatrixTol});

  for (const auto& [m, c] : p.terms) {
    const int spatial = m[1] + m[2] + m[3];
    if ((m[0] == 2 && spatial == 0) || (m[0] == 0 && spatial == 2)) continue;
    rep.remainder_norm = std::max(rep.remainder_norm, max_abs(c));
  }
  rep.checks.push_back({"s2_additional_terms_present", rep.remainder_norm, rep.remainder_norm > kMatrixTol});

  const double pdev = std::fabs(rep.reference_space_prefactor - rep.space_prefactor);
  rep.checks.push_back({"s2_space_prefactor_reference", pdev, pdev <= kMatrixTol});
  return rep;
}

/// Structural properties of the building blocks.
inline std::vector<CheckResult> matrix_structure_checks() {
  std::vector<CheckResult> out;
  const auto s = build_sigma();
  double tr = 0.0, un = 0.0;
  for (const auto& m : s) {
    tr = std::max(tr, std::abs(m.trace()));
    un = std::max(un, max_abs(Mat3(m * m.adjoint() - Mat3::Identity())));
  }
  out.push_back({"sigma_traceless", tr, tr <= kMatrixTol});
  out.push_back({"sigma_unitary", un, un <= kMatrixTol});
  const auto g = build_gamma();
  double gu = 0.0;
  for (const auto& m : g) gu = std::max(gu, max_abs(Mat9(m * m.adjoint() - Mat9::Identity())));
  out.push_back({"gamma_unitary", gu, gu <= kMatrixTol});
  const Factors f = build_factors();
  const double asum = max_abs(Mat9(f.A[0] + f.A[1] + f.A[2] - std::sqrt(3.0) * g[0]));
  out.push_back({"A_sum_is_sqrt3_gamma0", asum, asum <= kMatrixTol});
  double bdev = 0.0;
  for (int i = 0; i < 3; ++i) bdev = std::max(bdev, max_abs(Mat9(f.B[i] - g[i + 1])));
  out.push_back({"B_equals_gamma", bdev, bdev <= kMatrixTol});
  return out;
}

}  // namespace fracspec
