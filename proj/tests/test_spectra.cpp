#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "fracspec/spectra.hpp"

using namespace fracspec;

TEST(Zeros, ClassicalRootsAreIntegers) {
  const ZeroList c = find_zeros(TrigKind::cos, 1.0, 4);
  const ZeroList s = find_zeros(TrigKind::sin, 1.0, 4);
  ASSERT_EQ(c.roots.size(), 4u);
  ASSERT_EQ(s.roots.size(), 4u);
  for (int i = 0; i < 4; ++i) {
    EXPECT_NEAR(c.roots[i], 2 * i + 1, 1e-8);
    EXPECT_NEAR(s.roots[i], 2 * i + 2, 1e-8);
  }
}

TEST(Zeros, FirstCosRootAtTwoThirds) {
  EXPECT_NEAR(find_zeros(TrigKind::cos, 2.0 / 3.0, 1).roots.at(0), 1.1648, 1e-3);
}

TEST(Zeros, NoneBelowOneHalf) {
  EXPECT_THROW(find_zeros(TrigKind::cos, 0.45, 1), NoZeros);
  EXPECT_THROW(find_zeros(TrigKind::sin, 0.3, 1), NoZeros);
}

TEST(Zeros, RootsAreZerosOfTheFunction) {
  const double a = 0.8;
  for (double r : find_zeros(TrigKind::cos, a, 3).roots) EXPECT_NEAR(frac_cos(a, kHalfPi * r), 0.0, 1e-9);
  for (double r : find_zeros(TrigKind::sin, a, 3).roots) EXPECT_NEAR(frac_sin(a, kHalfPi * r), 0.0, 1e-9);
}

TEST(Zeros, Interlace) {
  for (double a : {0.9, 0.95, 1.1}) {
    const std::vector<double> r = well_roots(a, 6);
    for (std::size_t i = 1; i < r.size(); ++i) EXPECT_LT(r[i - 1], r[i]) << a << " " << i;
  }
}

TEST(Zeros, StronglyDampedTrigHasFewZeros) {
  // at alpha = 2/3 cos crosses zero once and sin stays positive
  EXPECT_EQ(find_zeros(TrigKind::cos, 2.0 / 3.0, 3).roots.size(), 1u);
  EXPECT_TRUE(find_zeros(TrigKind::sin, 2.0 / 3.0, 1).roots.empty());
  EXPECT_THROW(well_roots(2.0 / 3.0, 2), NoZeros);
}

TEST(Zeros, FirstRootFallsWithAlphaBelowItsTurningPoint) {
  // The first cos root is not monotone over all of [0.6, 1.2]: it bottoms
  // out near alpha = 0.9 and climbs back to 1 at alpha = 1.
  double prev = find_zeros(TrigKind::cos, 0.6, 1).roots.at(0);
  for (double a = 0.625; a <= 0.85 + 1e-12; a += 0.025) {
    const double r = find_zeros(TrigKind::cos, a, 1).roots.at(0);
    EXPECT_LT(r, prev) << a;
    prev = r;
  }
}

TEST(Zeros, TruncatesWhenTheSeriesStopsCertifying) {
  const ZeroList z = find_zeros(TrigKind::cos, 0.6, 50);
  EXPECT_TRUE(z.truncated);
  EXPECT_LT(z.roots.size(), 50u);
  EXPECT_GT(z.scanned_to, 1.0);
}

TEST(Well, ClassicalEnergiesGoAsNSquared) {
  const AlphaContext ctx(1.0, 1000.0);
  const auto states = well_states_1d(1.0, 5, 2.0, ctx);
  for (const auto& s : states) {
    const double k = (s.n + 1) * kHalfPi / 2.0;  // 1/fm
    EXPECT_NEAR(s.energy, ctx.hbar_c * ctx.hbar_c * k * k / (2 * ctx.mc2), 1e-9 * s.energy) << s.n;
  }
}

TEST(Well, BoundaryConditionAndOrdering) {
  for (double a : {0.9, 1.0}) {
    const auto states = well_states_1d(a, 6, 0.8, AlphaContext(a, 1400.0));
    for (std::size_t i = 0; i < states.size(); ++i) {
      EXPECT_NEAR(states[i].psi(0.8), 0.0, 1e-8);
      EXPECT_NEAR(states[i].psi(-0.8), 0.0, 1e-8);
      if (i) EXPECT_GT(states[i].energy, states[i - 1].energy);
    }
  }
}

TEST(Well, FractionalStatesPeakNearerTheCentre) {
  // compare the position of |psi| maxima for the odd ground state
  auto argmax = [](const WellState& s) {
    double best = 0, where = 0;
    for (double x = 0.0; x <= 1.0; x += 1e-3)
      if (std::fabs(s.psi(x)) > best) best = std::fabs(s.psi(x)), where = x;
    return where;
  };
  const auto frac = well_states_1d(0.9, 6, 1.0, AlphaContext(0.9, 1.0));
  const auto ord = well_states_1d(1.0, 6, 1.0, AlphaContext(1.0, 1.0));
  for (int n : {1, 3, 5}) EXPECT_LT(argmax(frac[n]), argmax(ord[n])) << n;
}

TEST(Well, NDimensionalIsSeparable) {
  const AlphaContext ctx(2.0 / 3.0, 1400.0);
  const double e1 = well_states_1d(2.0 / 3.0, 1, 0.81, ctx)[0].energy;
  EXPECT_NEAR(well_energy_nd(2.0 / 3.0, {0, 0, 0}, {0.81, 0.81, 0.81}, ctx), 3 * e1, 1e-9 * e1);
}

TEST(Well, BoxZeroPointEnergyForTheLightState) {
  const double e = well_energy_nd(2.0 / 3.0, {0, 0, 0}, {0.81, 0.81, 0.81}, AlphaContext(2.0 / 3.0, 1400.0));
  EXPECT_NEAR(2000.0 + e, 2452.2, 5.0);
}

TEST(FreeEnergy, Limits) {
  const AlphaContext ctx(1.0, 938.0);
  EXPECT_EQ(free_energy(0.7, 0.0, ctx), 0.0);
  EXPECT_NEAR(free_energy(1.0, 1.3, ctx), std::pow(ctx.hbar_c * 1.3, 2) / (2 * ctx.mc2), 1e-9);
  // the well energy is the free energy at k = k0 / a
  const auto s = well_states_1d(2.0 / 3.0, 1, 0.9, AlphaContext(2.0 / 3.0, 1400.0))[0];
  EXPECT_NEAR(free_energy(2.0 / 3.0, s.k0 / s.a, AlphaContext(2.0 / 3.0, 1400.0)), s.energy, 1e-9 * s.energy);
}

TEST(Radial, ClassicalSWave) {
  const RadialGround g = radial_ground(3, 1.0);
  EXPECT_EQ(g.coeffs[0], 1.0);
  EXPECT_NEAR(g.coeffs[1], 1.0 / 6.0, 1e-15);
  EXPECT_NEAR(g.first_zero, 2.0, 1e-9);
  for (double x : {0.3, 1.7, 2.9}) EXPECT_NEAR(g(x), std::sin(x) / x, 1e-12);
}

TEST(Radial, CoefficientsPositiveAndDecreasing) {
  const RadialGround g = radial_ground(3, 2.0 / 3.0);
  for (std::size_t j = 1; j < 30; ++j) {
    EXPECT_GT(g.coeffs[j], 0.0);
    EXPECT_LT(g.coeffs[j], g.coeffs[j - 1]);
  }
}

TEST(Radial, TwoDimensionsAtAlphaOneIsBesselJ0) {
  const RadialGround g = radial_ground(2, 1.0);
  EXPECT_NEAR(g.k0, 2.404825557695773, 1e-9);
}

TEST(Radial, SphericalEnergyClassicalLimit) {
  const AlphaContext ctx(1.0, 1400.0);
  const double r0 = 1.2;
  const double e = spherical_ground_energy(3, 1.0, r0, ctx);
  EXPECT_NEAR(e, std::pow(ctx.hbar_c * M_PI / r0, 2) / (2 * ctx.mc2), 1e-9 * e);
}

TEST(Radial, SphericalEnergyFallsWithRadius) {
  const AlphaContext ctx(2.0 / 3.0, 1400.0);
  const double k0 = radial_ground(3, 2.0 / 3.0).k0;
  double prev = spherical_ground_energy(3, 2.0 / 3.0, 0.5, ctx, k0);
  for (double r = 0.6; r < 2.0; r += 0.1) {
    const double e = spherical_ground_energy(3, 2.0 / 3.0, r, ctx, k0);
    EXPECT_LT(e, prev);
    prev = e;
  }
}

namespace {

std::vector<double> interior_grid(double half, int n) {
  std::vector<double> g;
  for (int i = 0; i <= n; ++i) g.push_back(-half + 2 * half * i / n);
  return g;
}

}  // namespace

TEST(EquivalentPotential, FlatAtAlphaOne) {
  const auto v = equivalent_potential(1.0, 50.0, 22, interior_grid(0.5, 40));
  double mean = 0, sq = 0;
  for (const auto& s : v) mean += s.v_over_t;
  mean /= v.size();
  for (const auto& s : v) sq += (s.v_over_t - mean) * (s.v_over_t - mean);
  // shifted so the minimum is 0: compare the spread with the unshifted level
  EXPECT_LT(std::sqrt(sq / v.size()), 1e-3);
}

TEST(EquivalentPotential, Symmetric) {
  const auto v = equivalent_potential(0.9, 30.0, 20, interior_grid(0.9, 18));
  for (std::size_t i = 0; i < v.size(); ++i) EXPECT_NEAR(v[i].v_over_t, v[v.size() - 1 - i].v_over_t, 1e-9);
}

TEST(EquivalentPotential, CutoffTooSmall) {
  EXPECT_THROW(equivalent_potential(1.0, 50.0, 3, {0.0}), CutoffTooSmall);
}
