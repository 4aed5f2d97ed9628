#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "oracle.hpp"
#include "rvb/measures.hpp"

using namespace rvb;

namespace {

StateVector singlet01() {
  DimerCovering cov;
  cov.dimers.push_back({0, 1});
  return covering_state(cov, 2);
}

// Applies a site permutation: site k of the input becomes site perm[k] of the output.
StateVector permute_sites(const StateVector& psi, const std::vector<SiteId>& perm) {
  Eigen::VectorXcd out(psi.amplitudes().size());
  for (std::size_t x = 0; x < psi.dimension(); ++x) {
    std::size_t y = 0;
    for (std::size_t k = 0; k < perm.size(); ++k) y |= ((x >> k) & 1u) << perm[k];
    out(static_cast<Eigen::Index>(y)) = psi[x];
  }
  return StateVector(psi.num_sites(), out);
}

}  // namespace

TEST(Tangle, ClosedForm) {
  EXPECT_DOUBLE_EQ(tangle(1.0), 1.0);
  EXPECT_DOUBLE_EQ(tangle(1.0 / 3.0), 0.0);
  EXPECT_DOUBLE_EQ(tangle(0.0), 0.0);
  EXPECT_NEAR(tangle(0.7), 0.3025, 1e-15);
  EXPECT_THROW(tangle(1.1), std::invalid_argument);
  EXPECT_THROW(tangle(-0.5), std::invalid_argument);
}

TEST(Tangle, WoottersOnReferenceStates) {
  const auto pure = partial_trace(singlet01(), std::vector<SiteId>{0, 1});
  EXPECT_NEAR(tangle_from_density_matrix(pure), 1.0, 1e-12);
  DensityMatrix mixed{{0, 1}, 0.25 * numerics::ComplexMatrix::Identity(4, 4)};
  EXPECT_NEAR(tangle_from_density_matrix(mixed), 0.0, 1e-12);
  EXPECT_NEAR(tangle_from_density_matrix(werner_state(0.7, 0, 1)), 0.3025, 1e-10);
}

TEST(Tangle, WoottersAgreesWithClosedFormOnRandomWernerStates) {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> u(-1.0 / 3.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const double p = u(rng);
    EXPECT_NEAR(tangle_from_density_matrix(werner_state(p, 0, 1)), tangle(p), 1e-10) << p;
  }
}

TEST(Tangle, WoottersOnProductAndBellStates) {
  // |up down> is separable
  DensityMatrix product{{0, 1}, numerics::ComplexMatrix::Zero(4, 4)};
  product.matrix(2, 2) = 1.0;
  EXPECT_NEAR(tangle_from_density_matrix(product), 0.0, 1e-12);
  // cos a |00> + sin a |11> has concurrence sin 2a
  const double a = 0.3;
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
  v(0) = std::cos(a);
  v(3) = std::sin(a);
  DensityMatrix partial{{0, 1}, v * v.adjoint()};
  EXPECT_NEAR(tangle_from_density_matrix(partial), std::pow(std::sin(2 * a), 2), 1e-10);
}

TEST(Tangle, WoottersRejectsInvalidInput) {
  DensityMatrix bad{{0, 1}, numerics::ComplexMatrix::Identity(4, 4)};
  EXPECT_THROW(tangle_from_density_matrix(bad), std::invalid_argument);
  bad.matrix = 0.25 * numerics::ComplexMatrix::Identity(4, 4);
  bad.matrix(0, 1) = 0.1;
  EXPECT_THROW(tangle_from_density_matrix(bad), std::invalid_argument);
}

TEST(Monogamy, BoundaryCases) {
  auto r = monogamy_check(1.0 / 3.0, 1.0 / 3.0);
  EXPECT_NEAR(r.lhs, 0.0, 1e-15);
  EXPECT_TRUE(r.satisfied);
  r = monogamy_check(1.0 / 3.0, 1.0);
  EXPECT_NEAR(r.lhs, 1.0, 1e-15);
  EXPECT_TRUE(r.satisfied);
  r = monogamy_check(1.0, 1.0);
  EXPECT_FALSE(r.satisfied);
}

TEST(Monogamy, LhsUnclampedTanglesClamped) {
  const auto r = monogamy_check(0.0, 0.0);
  EXPECT_NEAR(r.lhs, 0.5 + 0.25, 1e-15);
  EXPECT_DOUBLE_EQ(r.tangle_rail, 0.0);
  EXPECT_DOUBLE_EQ(r.tangle_step, 0.0);
  EXPECT_TRUE(r.satisfied);
}

TEST(MonogamySurface, GridAndValues) {
  const auto pts = monogamy_surface_sample(5);
  ASSERT_EQ(pts.size(), 25u);
  EXPECT_DOUBLE_EQ(pts.front().p_rail, -1.0 / 3.0);
  EXPECT_DOUBLE_EQ(pts.back().p_rail, 1.0);
  EXPECT_DOUBLE_EQ(pts.back().p_step, 1.0);
  EXPECT_NEAR(pts.back().value, 2.0, 1e-14);
  // 5 points on [-1/3, 1] put 1/3 at index 2
  EXPECT_NEAR(pts[2 * 5 + 2].value, -1.0, 1e-14);
  EXPECT_THROW(monogamy_surface_sample(1), std::invalid_argument);
}

TEST(MonogamySurface, RailBoundNearPointEight) {
  // at p_r = 0.8 the surface is -0.02 at its minimum over p_s (p_s = 1/3)
  const double v = std::pow(3 * 0.8 - 1, 2) / 2 - 1;
  EXPECT_NEAR(v, -0.02, 1e-12);
  for (const auto& pt : monogamy_surface_sample(61)) {
    if (pt.value <= 0.0) EXPECT_LE(pt.p_rail, 0.8 + 1e-12);
  }
}

TEST(Cloning, ThetaZeroWhenRailsUnentangledAndStepsPure) {
  const auto rec = cloning_theta_sets(-0.1, 1.0);
  ASSERT_EQ(rec.step_set.size(), 1u);
  EXPECT_DOUBLE_EQ(rec.step_set[0].lo, 0.0);
  EXPECT_DOUBLE_EQ(rec.step_set[0].hi, 0.0);
  ASSERT_TRUE(rec.theta_max.has_value());
  EXPECT_DOUBLE_EQ(*rec.theta_max, 0.0);
}

TEST(Cloning, StepBoundInvertsToPiOverThree) {
  const auto rec = cloning_theta_sets(0.0, 0.0);
  ASSERT_EQ(rec.step_set.size(), 1u);
  EXPECT_NEAR(rec.step_set[0].hi, std::numbers::pi / 3.0, 1e-9);
  ASSERT_TRUE(rec.theta_max.has_value());
  EXPECT_NEAR(*rec.theta_max, std::numbers::pi / 3.0, 1e-9);
}

TEST(Cloning, StepEndpointMatchesClosedFormInversion) {
  for (double ps = -1.0 / 3.0; ps < 1.0; ps += 0.05) {
    const auto rec = cloning_theta_sets(0.0, ps);
    const double exact = std::asin(std::sqrt(0.75 * (1.0 - ps)));
    ASSERT_FALSE(rec.step_set.empty());
    EXPECT_NEAR(rec.step_set.back().hi, std::min(exact, std::numbers::pi / 2), 1e-9) << ps;
  }
}

TEST(Cloning, IntervalsRespectPredicatesAndIntersection) {
  const auto rec = cloning_theta_sets(0.45, 0.7, 2001, 1e-11);
  for (const auto& iv : rec.rail_set) {
    EXPECT_TRUE(rail_cloning_bound(0.45, 0.5 * (iv.lo + iv.hi)));
    EXPECT_TRUE(rail_cloning_bound(0.45, iv.lo));
  }
  for (const auto& iv : rec.step_set) EXPECT_TRUE(step_cloning_bound(0.7, iv.hi));
  if (rec.theta_max) {
    EXPECT_TRUE(rail_cloning_bound(0.45, *rec.theta_max));
    EXPECT_TRUE(step_cloning_bound(0.7, *rec.theta_max));
    EXPECT_FALSE(rail_cloning_bound(0.45, *rec.theta_max + 1e-8) &&
                 step_cloning_bound(0.7, *rec.theta_max + 1e-8));
  }
}

TEST(Cloning, EmptyIntersectionIsReported) {
  // rails demand large theta, steps demand small theta
  const auto rec = cloning_theta_sets(0.9, 0.9);
  EXPECT_TRUE(rec.common.empty());
  EXPECT_FALSE(rec.theta_max.has_value());
}

TEST(Cloning, IntersectHandlesDisjointAndNested) {
  const ThetaSet a{{0.0, 0.2}, {0.5, 0.9}};
  const ThetaSet b{{0.1, 0.6}};
  const auto c = intersect(a, b);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_DOUBLE_EQ(c[0].lo, 0.1);
  EXPECT_DOUBLE_EQ(c[0].hi, 0.2);
  EXPECT_DOUBLE_EQ(c[1].lo, 0.5);
  EXPECT_DOUBLE_EQ(c[1].hi, 0.6);
  EXPECT_TRUE(intersect(ThetaSet{{0.0, 0.1}}, ThetaSet{{0.2, 0.3}}).empty());
}

TEST(Ggm, SingletIsHalf) {
  const auto rec = ggm(singlet01());
  EXPECT_NEAR(rec.value, 0.5, 1e-12);
  EXPECT_EQ(rec.bipartitions_scanned, 1u);
}

TEST(Ggm, ProductStateIsZero) {
  const auto rec = ggm(StateVector::basis(6, 0));
  EXPECT_NEAR(rec.value, 0.0, 1e-12);
  EXPECT_EQ(rec.bipartitions_scanned, 31u);
  EXPECT_EQ(rec.side_a, std::vector<SiteId>{0});
}

TEST(Ggm, RejectsUnnormalisedState) {
  StateVector psi(2, Eigen::VectorXcd::Ones(4));
  EXPECT_THROW(ggm(psi), std::invalid_argument);
}

TEST(Ggm, GhzHasHalf) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(16);
  v(0) = v(15) = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(ggm(StateVector(4, v)).value, 0.5, 1e-12);
}

TEST(Ggm, SmallLaddersMatchOracle) {
  // brute-force values: 1/4 for m = 2 open, 3/22 for m = 3 open
  const auto lat2 = build_ladder(2, Boundary::open);
  const auto lat3 = build_ladder(3, Boundary::open);
  EXPECT_NEAR(ggm(rvb_state(lat2)).value, 0.25, 1e-12);
  EXPECT_NEAR(ggm(rvb_state(lat3)).value, 3.0 / 22.0, 1e-12);
  EXPECT_NEAR(ggm(rvb_state(lat3)).value, oracle::ggm(oracle::rvb_amplitudes(lat3), 6), 1e-10);
}

TEST(Ggm, SpectrumSumsToOneAndPowerIterationAgrees) {
  for (std::size_t m = 2; m <= 5; ++m) {
    const auto rec = ggm(rvb_state(build_ladder(m, Boundary::periodic)));
    EXPECT_LT(rec.max_spectrum_deviation, 1e-10);
    EXPECT_NEAR(rec.power_iteration_schmidt_sq, rec.max_schmidt_sq, 1e-9);
    EXPECT_EQ(rec.bipartitions_scanned, (std::size_t{1} << (2 * m - 1)) - 1);
    EXPECT_GE(rec.value, 0.0);
    EXPECT_LT(rec.value, 1.0);
  }
}

TEST(Ggm, InvariantUnderSiteRelabelling) {
  std::mt19937 rng(99);
  const auto psi = rvb_state(build_ladder(4, Boundary::open));
  const double base = ggm(psi).value;
  std::vector<SiteId> perm(psi.num_sites());
  std::iota(perm.begin(), perm.end(), 0);
  for (int trial = 0; trial < 5; ++trial) {
    std::shuffle(perm.begin(), perm.end(), rng);
    EXPECT_NEAR(ggm(permute_sites(psi, perm)).value, base, 1e-10);
  }
}

TEST(Ggm, MaxSchmidtRespectsUniformSpectrumBound) {
  const auto psi = rvb_state(build_ladder(3, Boundary::periodic));
  const auto rec = ggm(psi);
  const std::size_t a = rec.side_a.size();
  const double d_min = std::pow(2.0, static_cast<double>(std::min(a, psi.num_sites() - a)));
  EXPECT_GE(rec.max_schmidt_sq, 1.0 / d_min - 1e-12);
}

TEST(Bipartition, ColumnHelpers) {
  const auto lat = build_ladder(3, Boundary::periodic);
  // columns 0 and 1 (sites 0, 1, 3, 4)
  const std::uint64_t cols = 0b011011;
  EXPECT_TRUE(splits_along_columns(lat, cols));
  EXPECT_EQ(steps_inside(lat, cols), 2u);
  EXPECT_FALSE(splits_along_columns(lat, 0b000111));
  EXPECT_EQ(steps_inside(lat, 0b000111), 0u);
}
