#pragma once

// Spectrum of the deformed rotation algebra: eigenvalues of the generalized
// Euler operator, the commutator constant models and the L_z / J^2 values
// built from them.

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "fracspec/gamma.hpp"
#include "fracspec/report.hpp"

namespace fracspec {

enum class CVariant { c0, c1, c2 };

inline const char* to_string(CVariant v) {
  switch (v) {
    case CVariant::c0: return "c0";
    case CVariant::c1: return "c1";
    default: return "c2";
  }
}

inline CVariant parse_cvariant(const std::string& s) {
  if (s == "c0") return CVariant::c0;
  if (s == "c1") return CVariant::c1;
  if (s == "c2") return CVariant::c2;
  throw std::invalid_argument("unknown c model '" + s + "' (expected c0, c1 or c2)");
}

struct CModel {
  CVariant variant = CVariant::c0;
  double alpha = 1.0;
  int j = 1;  // only c2 depends on it
};

namespace angular_detail {

// Gamma(1 + p a) / Gamma(1 + q a); 1/Gamma keeps the poles harmless.
inline double ratio(double alpha, int p, int q) { return gamma(1.0 + p * alpha) * rgamma(1.0 + q * alpha); }

}  // namespace angular_detail

/// The bracket (1/Gamma(1+a)) (Gamma(1+na)/Gamma(1+(n-1)a) - Gamma(1+(n+1)a)/Gamma(1+na)).
/// Note its sign: it tends to -1 as a -> 1, opposite to the c models.
inline double commutator_c(int n, double alpha) {
  using angular_detail::ratio;
  return rgamma(1.0 + alpha) * (ratio(alpha, n, n - 1) - ratio(alpha, n + 1, n));
}

/// c0 = 1; c1 = 1 - 1/(Gamma(1-a) Gamma(1+a)); c2(j) from neighbouring gamma ratios.
inline double c_value(const CModel& m) {
  using angular_detail::ratio;
  const double a = m.alpha;
  switch (m.variant) {
    case CVariant::c0: return 1.0;
    case CVariant::c1: return 1.0 - rgamma(1.0 - a) * rgamma(1.0 + a);
    default: return rgamma(1.0 + a) * (ratio(a, m.j + 1, m.j) - ratio(a, m.j, m.j - 1));
  }
}

/// Eigenvalue of the generalized Euler operator on homogeneous degree n.
inline double euler_eigenvalue(double alpha, int n) {
  if (n < 0) throw std::invalid_argument("euler_eigenvalue: n must be non-negative");
  if (n == 0) return 0.0;
  return rgamma(1.0 + alpha) * angular_detail::ratio(alpha, n, n - 1);
}

/// L_z eigenvalue. Negative m only on request; the spectrum is odd in m.
inline double lz_eigenvalue(double alpha, int m, bool allow_negative = false) {
  if (m < 0 && !allow_negative) throw std::invalid_argument("lz_eigenvalue: negative m requires allow_negative");
  return m < 0 ? -euler_eigenvalue(alpha, -m) : euler_eigenvalue(alpha, m);
}

/// J^2 = l (l + c) with l the Euler eigenvalue at j.
inline double j2_eigenvalue(double alpha, int j, CVariant variant) {
  const double l = euler_eigenvalue(alpha, j);
  return l * (l + c_value({variant, alpha, j}));
}

inline double j2_eigenvalue(int j, const CModel& m) { return j2_eigenvalue(m.alpha, j, m.variant); }

struct AngularEigen {
  double alpha;
  int n;
  double l;
  double lz;
  double j2;
  CModel c_model;
};

inline AngularEigen angular_eigen(double alpha, int n, CVariant v) {
  const double l = euler_eigenvalue(alpha, n);
  return {alpha, n, l, l, j2_eigenvalue(alpha, n, v), {v, alpha, n}};
}

// ---------------------------------------------------------------------------
// Eigenvalue table for n = 0..6 with reference values.

struct Table1Column {
  std::string name;
  double alpha;
  bool is_j2;
  CVariant variant;
  std::array<double, 7> reference;
};

inline const std::vector<Table1Column>& table1_columns() {
  static const std::vector<Table1Column> cols = {
      {"lz_1", 1.0, false, CVariant::c0, {0, 1, 2, 3, 4, 5, 6}},
      {"lz_2/3", 2.0 / 3.0, false, CVariant::c0, {0, 1, 1.460998, 1.860735, 2.222222, 2.556747, 2.870848}},
      {"lz_0.68", 0.68, false, CVariant::c0, {0, 1, 1.478157, 1.894649, 2.272597, 2.623332, 2.953417}},
      {"j2c0_1", 1.0, true, CVariant::c0, {0, 2, 6, 12, 20, 30, 42}},
      {"j2c0_2/3", 2.0 / 3.0, true, CVariant::c0, {0, 2, 3.595515, 5.323069, 7.160493, 9.093704, 11.112618}},
      {"j2c0_0.68", 0.68, true, CVariant::c0, {0, 2, 3.663108, 5.484346, 7.437298, 9.505205, 11.676094}},
      {"j2c1_0.65", 0.65, true, CVariant::c1, {0, 1.604767, 3.078892, 4.735519, 6.539094, 8.468379, 10.508808}},
      {"j2c2_0.65", 0.65, true, CVariant::c2, {0, 1.478157, 2.800590, 4.305776, 5.961779, 7.747796, 9.649033}},
  };
  return cols;
}

struct Table1Cell {
  double value;
  double reference;
  double deviation() const { return value - reference; }
};

struct Table1Report {
  std::vector<std::string> columns;
  std::vector<std::vector<Table1Cell>> rows;  // rows[n][column]

  double max_abs_deviation(std::size_t column) const {
    double m = 0.0;
    for (const auto& r : rows) m = std::max(m, std::fabs(r[column].deviation()));
    return m;
  }

  CsvTable csv() const {
    CsvTable t;
    t.header.push_back("n");
    for (const auto& c : columns) {
      t.header.push_back(c);
      t.header.push_back(c + "_ref");
      t.header.push_back(c + "_deviation");
    }
    for (std::size_t n = 0; n < rows.size(); ++n) {
      std::vector<std::string> r{std::to_string(n)};
      for (const auto& cell : rows[n]) {
        r.push_back(fmt6(cell.value));
        r.push_back(fmt6(cell.reference));
        r.push_back(fmt6(cell.deviation()));
      }
      t.add_row(std::move(r));
    }
    return t;
  }
};

inline double table1_value(const Table1Column& c, int n) {
  return c.is_j2 ? j2_eigenvalue(c.alpha, n, c.variant) : lz_eigenvalue(c.alpha, n);
}

inline Table1Report table1_report() {
  Table1Report rep;
  const auto& cols = table1_columns();
  for (const auto& c : cols) rep.columns.push_back(c.name);
  for (int n = 0; n <= 6; ++n) {
    std::vector<Table1Cell> row;
    for (const auto& c : cols) row.push_back({table1_value(c, n), c.reference[n]});
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace fracspec
