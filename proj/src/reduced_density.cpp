#include "rvb/reduced_density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rvb {

DensityMatrix partial_trace(const StateVector& state, std::span<const SiteId> keep) {
  const std::size_t n = state.num_sites();
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep list is empty");
  if (keep.size() > kMaxKeptSites) throw std::invalid_argument("partial_trace: keep list too long");
  std::vector<bool> kept(n, false);
  for (SiteId s : keep) {
    if (s >= n) throw std::invalid_argument("partial_trace: site out of range");
    if (kept[s]) throw std::invalid_argument("partial_trace: duplicate site");
    kept[s] = true;
  }
  std::vector<SiteId> traced;
  for (SiteId s = 0; s < n; ++s) {
    if (!kept[s]) traced.push_back(s);
  }

  const auto rows = static_cast<Eigen::Index>(std::size_t{1} << keep.size());
  const auto cols = static_cast<Eigen::Index>(std::size_t{1} << traced.size());
  numerics::ComplexMatrix reshaped(rows, cols);
  for (std::size_t x = 0; x < state.dimension(); ++x) {
    std::size_t r = 0;
    for (std::size_t k = 0; k < keep.size(); ++k) r |= ((x >> keep[k]) & 1u) << k;
    std::size_t c = 0;
    for (std::size_t k = 0; k < traced.size(); ++k) c |= ((x >> traced[k]) & 1u) << k;
    reshaped(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = state[x];
  }

  DensityMatrix out;
  out.sites.assign(keep.begin(), keep.end());
  out.matrix = reshaped * reshaped.adjoint();
  return out;
}

Eigen::VectorXcd directed_singlet(std::span<const SiteId> sites, SiteId a, SiteId b) {
  const auto pos = [&](SiteId s) {
    const auto it = std::find(sites.begin(), sites.end(), s);
    if (it == sites.end()) throw std::invalid_argument("directed_singlet: site not in basis");
    return static_cast<std::size_t>(it - sites.begin());
  };
  if (a == b) throw std::invalid_argument("directed_singlet: sites must differ");
  const std::size_t pa = pos(a);
  const std::size_t pb = pos(b);
  const double h = 1.0 / std::sqrt(2.0);
  Eigen::VectorXcd s = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(std::size_t{1} << sites.size()));
  s(static_cast<Eigen::Index>(std::size_t{1} << pb)) = h;   // up_a down_b
  s(static_cast<Eigen::Index>(std::size_t{1} << pa)) = -h;  // down_a up_b
  return s;
}

DensityMatrix werner_state(double p, SiteId a, SiteId b) {
  DensityMatrix rho;
  rho.sites = {a, b};
  const Eigen::VectorXcd s = directed_singlet(rho.sites, a, b);
  rho.matrix = p * s * s.adjoint() + (1.0 - p) / 4.0 * numerics::ComplexMatrix::Identity(4, 4);
  return rho;
}

WernerFit werner_parameter(const DensityMatrix& rho, SiteId a_site, SiteId b_site) {
  if (rho.sites.size() != 2 || rho.matrix.rows() != 4 || rho.matrix.cols() != 4) {
    throw std::invalid_argument("werner_parameter: expected a two-site density matrix");
  }
  const Eigen::VectorXcd s = directed_singlet(rho.sites, a_site, b_site);
  WernerFit fit;
  fit.singlet_fraction = (s.adjoint() * rho.matrix * s)(0).real();
  fit.p = (4.0 * fit.singlet_fraction - 1.0) / 3.0;
  const numerics::ComplexMatrix model =
      fit.p * s * s.adjoint() + (1.0 - fit.p) / 4.0 * numerics::ComplexMatrix::Identity(4, 4);
  fit.residual = (rho.matrix - model).cwiseAbs().maxCoeff();
  return fit;
}

EdgeWernerSummary edge_werner_parameters(const LadderLattice& lattice, const StateVector& state) {
  if (state.num_sites() != lattice.num_sites()) {
    throw std::invalid_argument("edge_werner_parameters: state does not match lattice");
  }
  EdgeWernerSummary out;
  double rail_sum = 0.0, step_sum = 0.0;
  std::size_t rail_count = 0, step_count = 0;
  out.rail_min = out.step_min = std::numeric_limits<double>::infinity();
  out.rail_max = out.step_max = -std::numeric_limits<double>::infinity();

  for (const Edge& e : lattice.edges()) {
    const std::array<SiteId, 2> keep{e.a, e.b};
    WernerFit fit = werner_parameter(partial_trace(state, keep), e.a, e.b);
    fit.kind = e.kind;
    out.max_residual = std::max(out.max_residual, fit.residual);
    if (e.kind == EdgeKind::step) {
      step_sum += fit.p;
      ++step_count;
      out.step_min = std::min(out.step_min, fit.p);
      out.step_max = std::max(out.step_max, fit.p);
    } else if (e.dimer_allowed) {
      rail_sum += fit.p;
      ++rail_count;
      out.rail_min = std::min(out.rail_min, fit.p);
      out.rail_max = std::max(out.rail_max, fit.p);
    }
    out.fits.push_back(fit);
  }
  out.p_rail = rail_count ? rail_sum / static_cast<double>(rail_count) : 0.0;
  out.p_step = step_count ? step_sum / static_cast<double>(step_count) : 0.0;
  return out;
}

double regional_entanglement(const LadderLattice& lattice, std::span<const WernerFit> fits,
                             SiteId site) {
  if (fits.size() != lattice.edges().size()) {
    throw std::invalid_argument("regional_entanglement: one fit per edge required");
  }
  if (site >= lattice.num_sites()) throw std::invalid_argument("regional_entanglement: bad site");
  const auto& bonds = lattice.incident_edges(site);
  if (bonds.size() != 3) {
    throw std::invalid_argument("regional_entanglement: site does not have three neighbours");
  }
  double sum = 0.0;
  for (std::size_t idx : bonds) sum += fits[idx].p;
  return sum / 3.0;
}

TeleportationFidelities teleportation_fidelities(double p_rail, double p_step) {
  TeleportationFidelities f;
  f.rail = (p_rail + 1.0) / 2.0;
  f.step = (p_step + 1.0) / 2.0;
  f.average = (2.0 * f.rail + f.step) / 3.0;
  return f;
}

}  // namespace rvb
