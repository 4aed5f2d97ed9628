#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rvb/lattice.hpp"
#include "rvb/numerics.hpp"
#include "rvb/reduced_density.hpp"
#include "rvb/rvb_state.hpp"

namespace rvb {

/// Squared concurrence of a Werner state: max(0, (3p - 1)/2)^2.
/// Throws std::invalid_argument outside [-1/3, 1].
double tangle(double p);

/// Wootters tangle of a general two-qubit state: (max(0, l1 - l2 - l3 - l4))^2 with l_i the
/// square roots of the eigenvalues of rho * (sy x sy) rho^* (sy x sy), descending.
double tangle_from_density_matrix(const DensityMatrix& rho);

struct MonogamyRecord {
  double p_rail;
  double p_step;
  double tangle_rail;  // clamped
  double tangle_step;  // clamped
  double lhs;          // (3p_r - 1)^2/2 + (3p_s - 1)^2/4, unclamped
  double clamped_lhs;  // 2 tangle_rail + tangle_step
  bool satisfied;      // clamped_lhs <= 1
};

MonogamyRecord monogamy_check(double p_rail, double p_step);

struct SurfacePoint {
  double p_rail;
  double p_step;
  double value;  // (3p_r - 1)^2/2 + (3p_s - 1)^2/4 - 1
};

/// resolution x resolution grid over [-1/3, 1]^2, p_rail major.
std::vector<SurfacePoint> monogamy_surface_sample(std::size_t resolution);

struct ThetaInterval {
  double lo;
  double hi;
};
using ThetaSet = std::vector<ThetaInterval>;

/// Theta ranges on [0, pi/2] allowed by the asymmetric-cloning fidelity bounds.
struct CloningBoundRecord {
  double p_rail;
  double p_step;
  std::size_t grid_resolution;
  ThetaSet rail_set;   // p_r <= (sin^2 t + sqrt(2) sin 2t)/3
  ThetaSet step_set;   // p_s <= 1 - (4/3) sin^2 t
  ThetaSet common;     // intersection
  std::optional<double> theta_max;
};

bool rail_cloning_bound(double p_rail, double theta);
bool step_cloning_bound(double p_step, double theta);

/// Scans `grid_resolution` evenly spaced angles, then bisects every endpoint to `tol`.
CloningBoundRecord cloning_theta_sets(double p_rail, double p_step,
                                      std::size_t grid_resolution = 4001, double tol = 1e-10);

ThetaSet intersect(const ThetaSet& x, const ThetaSet& y);

/// Amplitudes reshaped to (configurations of side_a) x (configurations of the rest).
numerics::ComplexMatrix bipartition_matrix(const StateVector& state, std::uint64_t side_a_mask);

struct GgmRecord {
  double value = 0.0;
  double max_schmidt_sq = 0.0;
  std::uint64_t side_a_mask = 0;  // always contains site 0
  std::vector<SiteId> side_a;
  std::size_t bipartitions_scanned = 0;
  double power_iteration_schmidt_sq = 0.0;  // independent estimate at the maximising split
  double max_spectrum_deviation = 0.0;      // max |sum sigma^2 - 1| over all splits
};

constexpr double kGgmTieTolerance = 1e-12;

/// Generalised geometric measure: 1 - max over bipartitions of the largest squared Schmidt
/// coefficient. Ties within kGgmTieTolerance go to the lexicographically smallest side_a.
/// Throws std::invalid_argument if the state is not normalised to 1e-10 or has fewer than 2 sites.
GgmRecord ggm(const StateVector& state);

/// True when every column has both of its sites on the same side of the split.
bool splits_along_columns(const LadderLattice& lattice, std::uint64_t side_a_mask);
/// Number of columns whose two sites both lie in side_a.
std::size_t steps_inside(const LadderLattice& lattice, std::uint64_t side_a_mask);

}  // namespace rvb
