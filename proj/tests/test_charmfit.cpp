#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <string>

#include "fracspec/charmfit.hpp"

using namespace fracspec;

namespace {

const std::vector<CharmState>& bundled() {
  static const std::vector<CharmState> s = load_dataset(std::filesystem::path(FRACSPEC_DATA_DIR) / "charmonium.json");
  return s;
}

const FitParams& row2() { return reference_parameter_sets()[1].params; }

}  // namespace

TEST(Dataset, BundledFile) {
  const auto& s = bundled();
  ASSERT_EQ(s.size(), 11u);
  int jmax = 0;
  for (const auto& st : s) jmax = std::max(jmax, st.j);
  EXPECT_EQ(jmax, 4);
  ASSERT_NE(find_state(s, 0, 0), nullptr);
  EXPECT_DOUBLE_EQ(find_state(s, 0, 0)->mass, 2452.2);
  EXPECT_DOUBLE_EQ(find_state(s, 4, 0)->mass, 4415.0);
}

TEST(Dataset, EmptyIsValid) {
  EXPECT_TRUE(parse_dataset("").empty());
  EXPECT_TRUE(parse_dataset("[]").empty());
}

TEST(Dataset, DuplicateState) {
  const std::string text = R"([
  {"name": "a", "j": 2, "m": 1, "mass_mev": 3510.6},
  {"name": "b", "j": 2, "m": 1, "mass_mev": 3511.0}
])";
  EXPECT_THROW(parse_dataset(text), DuplicateState);
}

TEST(Dataset, ParseErrorCarriesLine) {
  const std::string text = "[\n  {\"name\": \"a\", \"j\": 1, \"m\": 0, \"mass_mev\": 1},\n  {\"name\": \"b\", \"j\": 1, \"m\": 2, \"mass_mev\": 2}\n]";
  try {
    parse_dataset(text);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  try {
    parse_dataset("[\n{\"name\": \"a\",\n \"j\": }\n]");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(Dataset, OptionalError) {
  const auto s = parse_dataset(R"([{"name": "x", "j": 0, "m": 0, "mass_mev": 100, "err_mev": 2.5}])");
  ASSERT_TRUE(s[0].mass_err);
  EXPECT_EQ(*s[0].mass_err, 2.5);
}

TEST(MassModel, ReferenceRows) {
  EXPECT_NEAR(mass_model(row2(), 1, 1), 3096.92, 0.05);
  EXPECT_NEAR(mass_model(reference_parameter_sets()[0].params, 2, 1), 3513.89, 0.05);
  EXPECT_EQ(mass_model(row2(), 0, 0), row2().m0);
}

TEST(MassModel, MissingB) {
  EXPECT_THROW(mass_model(row2(), 4, 1), MissingB);
  FitParams p = row2();
  p.extra_b[4] = 10.0;
  EXPECT_NO_THROW(mass_model(p, 4, 1));
}

TEST(MassModel, IncreasingInJ) {
  for (const auto& set : reference_parameter_sets())
    for (int j = 1; j <= 6; ++j) EXPECT_GT(mass_model(set.params, j, 0), mass_model(set.params, j - 1, 0));
}

TEST(AlphaFromMultiplet, ChiTriplet) {
  const auto r = alpha_from_multiplet(3415.2, 3510.6, 3556.3);
  EXPECT_NEAR(r.ratio, 1.478, 0.007);
  EXPECT_NEAR(r.alpha, 0.680, 0.006);
  EXPECT_NEAR(euler_eigenvalue(r.alpha, 2), r.ratio, 1e-12);
}

TEST(AlphaFromMultiplet, PsiTriplet) {
  const auto r = alpha_from_multiplet(3770.0, 4040.0, 4160.0);
  EXPECT_NEAR(r.ratio, 1.44, 0.09);
  EXPECT_NEAR(r.alpha, 0.65, 0.08);
}

TEST(AlphaFromMultiplet, EqualSpacingIsClassical) {
  EXPECT_NEAR(alpha_from_multiplet(100, 110, 120).alpha, 1.0, 1e-12);
  EXPECT_THROW(alpha_from_multiplet(100, 110, 200), OutOfRange);
}

TEST(TwoState, ReferenceValues) {
  const auto s = two_state_solve(2979.6, 3415.2, 0.680);
  EXPECT_NEAR(s.m0, 2455.0, 3.0);
  EXPECT_NEAR(s.kappa, 262.4, 0.9);
}

TEST(TwoState, DegenerateAndClassical) {
  EXPECT_EQ(two_state_solve(3000, 3000, 0.7).kappa, 0.0);
  // alpha = 1: m0 + 2 kappa = 10, m0 + 6 kappa = 30
  const auto s = two_state_solve(10, 30, 1.0);
  EXPECT_NEAR(s.kappa, 5.0, 1e-12);
  EXPECT_NEAR(s.m0, 0.0, 1e-11);
}

TEST(Fit, RecoversReferenceRow) {
  const FitResult r = fit(bundled(), 0.681, CVariant::c0);
  const FitParams& p = row2();
  EXPECT_NEAR(r.params.m0, p.m0, 2.0);
  EXPECT_NEAR(r.params.kappa, p.kappa, 2.0);
  EXPECT_NEAR(r.params.b1, p.b1, 2.0);
  EXPECT_NEAR(r.params.b2, p.b2, 2.0);
  EXPECT_NEAR(r.params.b3, p.b3, 2.0);
  EXPECT_NEAR(r.params.delta_tau, p.delta_tau, 2.0);
}

TEST(Fit, InterpolatesTheUniquelySupportedState) {
  const auto& ds = bundled();
  const FitResult r = fit(ds, 0.67, CVariant::c1);
  for (std::size_t i = 0; i < ds.size(); ++i)
    if (ds[i].j == 1 && ds[i].m == 1) EXPECT_NEAR(r.diag.residuals[i], 0.0, 1e-9);
}

TEST(Fit, LeastSquaresOptimality) {
  const auto& ds = bundled();
  const FitResult r = fit(ds, 0.681, CVariant::c0);
  std::mt19937 rng(12345);
  std::normal_distribution<double> nd(0.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    FitParams p = r.params;
    p.m0 += nd(rng);
    p.kappa += nd(rng);
    p.b1 += nd(rng);
    p.b2 += nd(rng);
    p.b3 += nd(rng);
    p.delta_tau += nd(rng);
    EXPECT_LE(r.diag.dm_all_rms, diagnostics(p, ds).dm_all_rms + 1e-12);
  }
}

TEST(Fit, ScaleCovariance) {
  auto scaled = bundled();
  for (auto& s : scaled) s.mass *= 1.7;
  const FitParams a = fit(bundled(), 0.66, CVariant::c2).params;
  const FitParams b = fit(scaled, 0.66, CVariant::c2).params;
  EXPECT_NEAR(b.m0, 1.7 * a.m0, 1e-8);
  EXPECT_NEAR(b.kappa, 1.7 * a.kappa, 1e-8);
  EXPECT_NEAR(b.b3, 1.7 * a.b3, 1e-8);
  EXPECT_NEAR(b.delta_tau, 1.7 * a.delta_tau, 1e-8);
}

TEST(Fit, RankDeficientNamesTheParameter) {
  std::vector<CharmState> ds;
  for (const auto& s : bundled())
    if (s.j != 3) ds.push_back(s);
  try {
    fit(ds, 0.68, CVariant::c0);
    FAIL() << "expected RankDeficient";
  } catch (const RankDeficient& e) {
    EXPECT_NE(std::string(e.what()).find("B3"), std::string::npos);
  }
}

TEST(Fit, ScanMinimizer) {
  const FitResult r = fit_scan(bundled(), CVariant::c0);
  EXPECT_NEAR(r.params.alpha, 0.681, 0.005);
  EXPECT_EQ(r.scan.size(), 121u);
  for (const auto& [a, rms] : r.scan) EXPECT_GE(rms, r.diag.dm_all_rms - 1e-12) << a;
}

TEST(Table3, ReferenceMassesAtRmsOptimalAlpha) {
  const auto& sets = reference_parameter_sets();
  const Table3Report rep = table3_report(sets, bundled(), rms_optimal_alphas(sets, bundled()));
  EXPECT_LE(rep.max_abs_deviation(), 0.5);
  EXPECT_EQ(rep.rows.size(), 12u);
  EXPECT_NEAR(rep.rows[0].m_th[0], 2439.33, 1e-9);
  EXPECT_NEAR(rep.rows[10].m_th[3], 4415.22, 0.5);
  EXPECT_NEAR(rep.rows[11].m_th[2], 4957.54, 0.5);
  EXPECT_NEAR(rep.rows[11].m_th[3], 4969.07, 0.5);
}

TEST(Table3, CsvHasAllRows) {
  const CsvTable t = table3_report(reference_parameter_sets(), bundled()).csv();
  EXPECT_EQ(t.rows.size(), 12u);
  EXPECT_EQ(t.header[0], "state");
  EXPECT_EQ(t.rows[11][0], "<50>");
  EXPECT_EQ(t.rows[11][2], "");
}

TEST(Predict, Interpolated33) {
  const Interpolated v = interpolate_33(3770.0, 4160.0, 0.680, 0.006);
  EXPECT_NEAR(v.value, 4268.0, 22.0);
  EXPECT_NEAR(v.value, 4259.0, 22.0);
  EXPECT_GT(v.uncertainty, 0.0);
  EXPECT_EQ(predict(row2(), 0, 0), row2().m0);
}

TEST(Radius, BoxClassicalLimitAgainstMonteCarlo) {
  // alpha = 1: <r>/a in cos^2(pi x / 2a) over the cube octant, by rejection sampling
  const QuarkMasses q;
  const RadiusResult r = radius_box(2452.2, q, 1.0, AlphaContext(1.0, 1400.0));
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto draw = [&] {
    while (true) {
      const double x = u(rng);
      if (u(rng) < std::pow(std::cos(M_PI / 2 * x), 2)) return x;
    }
  };
  double sum = 0.0;
  const int n = 400000;
  for (int i = 0; i < n; ++i) {
    const double x = draw(), y = draw(), z = draw();
    sum += std::sqrt(x * x + y * y + z * z);
  }
  EXPECT_NEAR(r.r_mean_fm / r.size_fm, sum / n, 2e-3);
}

TEST(Radius, PositiveAndInsideTheBox) {
  const QuarkMasses q;
  for (double a : {2.0 / 3.0, 0.8, 1.0}) {
    const AlphaContext ctx(a, 1400.0);
    const RadiusResult r = radius_box(2452.2, q, a, ctx);
    const double bound = std::pow(ctx.compton_fm(), 1 - a) / std::tgamma(1 + a) * std::sqrt(3.0) * std::pow(r.size_fm, a);
    EXPECT_GT(r.r_mean_fm, 0.0);
    EXPECT_LT(r.r_mean_fm, bound);
    EXPECT_LT(r.quadrature_change, 1e-4);
  }
}

TEST(Radius, ZeroPointEdgeCases) {
  const QuarkMasses q;
  EXPECT_TRUE(radius_box(2000.0, q, 2.0 / 3.0, AlphaContext(2.0 / 3.0, 1400.0)).unbounded);
  EXPECT_THROW(radius_box(1999.0, q, 2.0 / 3.0, AlphaContext(2.0 / 3.0, 1400.0)), NegativeZeroPoint);
  EXPECT_THROW(radius_sphere(1999.0, q, 2.0 / 3.0, AlphaContext(2.0 / 3.0, 1400.0)), NegativeZeroPoint);
}

TEST(Radius, SphereClassicalLimit) {
  // alpha = 1: r0 from the s-wave zero point, and <r> = r0/2 for sin(kr)/(kr)
  const QuarkMasses q;
  const AlphaContext ctx(1.0, 1400.0);
  const RadiusResult r = radius_sphere(2452.2, q, 1.0, ctx, {.op = RadiusOperator::radial_power});
  const double r0 = ctx.hbar_c * M_PI / std::sqrt(2.0 * 1400.0 * 452.2);
  EXPECT_NEAR(r.size_fm, r0, 1e-9);
  EXPECT_NEAR(r.r_mean_fm, r0 / 2, 1e-8);
}

TEST(Json, FitResultKeys) {
  const auto j = to_json(fit(bundled(), 0.68, CVariant::c0));
  for (const char* k : {"params", "dm_m0_rms", "dm_all_rms", "dm_m0_abs", "dm_all_abs"}) EXPECT_TRUE(j.contains(k)) << k;
}
