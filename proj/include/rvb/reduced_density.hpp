#pragma once

#include <span>
#include <vector>

#include "rvb/lattice.hpp"
#include "rvb/numerics.hpp"
#include "rvb/rvb_state.hpp"

namespace rvb {

/// Reduced state of an ordered list of sites. Bit k of a row/column index is the spin
/// of sites[k].
struct DensityMatrix {
  std::vector<SiteId> sites;
  numerics::ComplexMatrix matrix;

  double trace() const { return matrix.trace().real(); }
};

constexpr std::size_t kMaxKeptSites = 12;
constexpr double kWernerTolerance = 1e-8;

/// Tr over every site not in `keep` of |psi><psi|.
/// Throws std::invalid_argument for an empty, duplicated, out-of-range or oversized keep list.
DensityMatrix partial_trace(const StateVector& state, std::span<const SiteId> keep);

/// Two-site density matrix p |s><s| + (1 - p)/4 I with |s> the directed singlet a -> b,
/// expressed in the basis of the sites list {a, b}.
DensityMatrix werner_state(double p, SiteId a, SiteId b);

/// Singlet |a,b> = (|up_a down_b> - |down_a up_b>)/sqrt(2) in the basis of `sites`.
Eigen::VectorXcd directed_singlet(std::span<const SiteId> sites, SiteId a, SiteId b);

struct WernerFit {
  double p = 0.0;
  double singlet_fraction = 0.0;
  /// max-abs entry of rho minus the Werner state at p
  double residual = 0.0;
  EdgeKind kind = EdgeKind::step;

  bool is_werner() const { return residual <= kWernerTolerance; }
};

/// p = (4F - 1)/3 from the singlet fraction F = <a,b|rho|a,b>.
WernerFit werner_parameter(const DensityMatrix& rho, SiteId a_site, SiteId b_site);

struct EdgeWernerSummary {
  std::vector<WernerFit> fits;  // indexed like lattice.edges()
  double p_rail = 0.0;          // mean over dimer-allowed rails
  double p_step = 0.0;          // mean over steps
  double rail_min = 0.0, rail_max = 0.0;
  double step_min = 0.0, step_max = 0.0;
  double max_residual = 0.0;
};

EdgeWernerSummary edge_werner_parameters(const LadderLattice& lattice, const StateVector& state);

/// Mean Werner parameter over the three bonds at `site`.
/// Throws std::invalid_argument when the site does not have exactly three bonds.
double regional_entanglement(const LadderLattice& lattice, std::span<const WernerFit> fits,
                             SiteId site);

struct TeleportationFidelities {
  double rail;
  double step;
  double average;
};

TeleportationFidelities teleportation_fidelities(double p_rail, double p_step);

}  // namespace rvb
