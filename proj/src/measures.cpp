#include "rvb/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rvb {

namespace {

constexpr double kRangeSlack = 1e-12;
constexpr double kThetaMax = std::numbers::pi / 2.0;

// sy x sy in the computational basis
numerics::ComplexMatrix sigma_y_pair() {
  numerics::ComplexMatrix yy = numerics::ComplexMatrix::Zero(4, 4);
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  return yy;
}

// Eigenvalues below this are rounding noise of a rank-deficient state.
constexpr double kSpectrumFloor = 1e-14;

numerics::ComplexMatrix hermitian_sqrt(const numerics::ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<numerics::ComplexMatrix> solver(m);
  Eigen::VectorXd roots =
      solver.eigenvalues().unaryExpr([](double x) { return x > kSpectrumFloor ? std::sqrt(x) : 0.0; });
  return solver.eigenvectors() * roots.asDiagonal() * solver.eigenvectors().adjoint();
}

ThetaSet scan_theta_set(const std::function<bool(double)>& allowed, std::size_t resolution,
                        double tol) {
  if (resolution < 2) throw std::invalid_argument("theta grid needs at least two points");
  const double step = kThetaMax / static_cast<double>(resolution - 1);
  const auto theta_at = [&](std::size_t i) {
    return i + 1 == resolution ? kThetaMax : step * static_cast<double>(i);
  };

  ThetaSet out;
  bool inside = false;
  double open_at = 0.0;
  bool prev = false;
  for (std::size_t i = 0; i < resolution; ++i) {
    const double t = theta_at(i);
    const bool now = allowed(t);
    if (i == 0) {
      if (now) {
        inside = true;
        open_at = 0.0;
      }
    } else if (now != prev) {
      const numerics::Bracket b = numerics::bisect_bracket(allowed, theta_at(i - 1), t, tol);
      if (now) {
        inside = true;
        open_at = b.hi;
      } else {
        out.push_back({open_at, b.lo});
        inside = false;
      }
    }
    prev = now;
  }
  if (inside) out.push_back({open_at, kThetaMax});
  return out;
}

std::vector<SiteId> mask_sites(std::uint64_t mask, std::size_t n) {
  std::vector<SiteId> out;
  for (SiteId s = 0; s < n; ++s) {
    if ((mask >> s) & 1u) out.push_back(s);
  }
  return out;
}

}  // namespace

double tangle(double p) {
  if (p < -1.0 / 3.0 - kRangeSlack || p > 1.0 + kRangeSlack) {
    throw std::invalid_argument("tangle: Werner parameter outside [-1/3, 1]");
  }
  const double c = std::max(0.0, (3.0 * p - 1.0) / 2.0);
  return c * c;
}

double tangle_from_density_matrix(const DensityMatrix& rho) {
  const auto& m = rho.matrix;
  if (m.rows() != 4 || m.cols() != 4) {
    throw std::invalid_argument("tangle_from_density_matrix: expected a 4x4 matrix");
  }
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("tangle_from_density_matrix: matrix is not Hermitian");
  }
  if (std::abs(m.trace() - 1.0) > 1e-10) {
    throw std::invalid_argument("tangle_from_density_matrix: trace is not 1");
  }
  // sqrt(rho) rho~ sqrt(rho) = A A^dagger with A = sqrt(rho) (sy x sy) sqrt(rho)^*, so the
  // lambda_i are the singular values of A.
  const numerics::ComplexMatrix root = hermitian_sqrt(m);
  const std::vector<double> ev = numerics::singular_values(root * sigma_y_pair() * root.conjugate());
  const double concurrence = std::max(0.0, ev[0] - ev[1] - ev[2] - ev[3]);
  return concurrence * concurrence;
}

MonogamyRecord monogamy_check(double p_rail, double p_step) {
  MonogamyRecord rec;
  rec.p_rail = p_rail;
  rec.p_step = p_step;
  rec.tangle_rail = tangle(p_rail);
  rec.tangle_step = tangle(p_step);
  const double r = 3.0 * p_rail - 1.0;
  const double s = 3.0 * p_step - 1.0;
  rec.lhs = r * r / 2.0 + s * s / 4.0;
  rec.clamped_lhs = 2.0 * rec.tangle_rail + rec.tangle_step;
  rec.satisfied = rec.clamped_lhs <= 1.0 + 1e-12;
  return rec;
}

std::vector<SurfacePoint> monogamy_surface_sample(std::size_t resolution) {
  if (resolution < 2) throw std::invalid_argument("monogamy surface needs resolution >= 2");
  const double lo = -1.0 / 3.0;
  const double width = 1.0 - lo;
  const auto axis = [&](std::size_t i) {
    return i + 1 == resolution ? 1.0 : lo + width * static_cast<double>(i) / static_cast<double>(resolution - 1);
  };
  std::vector<SurfacePoint> out;
  out.reserve(resolution * resolution);
  for (std::size_t i = 0; i < resolution; ++i) {
    for (std::size_t j = 0; j < resolution; ++j) {
      const double pr = axis(i);
      const double ps = axis(j);
      const double r = 3.0 * pr - 1.0;
      const double s = 3.0 * ps - 1.0;
      out.push_back({pr, ps, r * r / 2.0 + s * s / 4.0 - 1.0});
    }
  }
  return out;
}

bool rail_cloning_bound(double p_rail, double theta) {
  const double s = std::sin(theta);
  return p_rail <= (s * s + std::numbers::sqrt2 * std::sin(2.0 * theta)) / 3.0;
}

bool step_cloning_bound(double p_step, double theta) {
  const double s = std::sin(theta);
  // rearranged so that p_s = 1 admits exactly theta = 0
  return 4.0 / 3.0 * s * s <= 1.0 - p_step;
}

ThetaSet intersect(const ThetaSet& x, const ThetaSet& y) {
  ThetaSet out;
  std::size_t i = 0, j = 0;
  while (i < x.size() && j < y.size()) {
    const double lo = std::max(x[i].lo, y[j].lo);
    const double hi = std::min(x[i].hi, y[j].hi);
    if (lo <= hi) out.push_back({lo, hi});
    if (x[i].hi < y[j].hi) {
      ++i;
    } else {
      ++j;
    }
  }
  return out;
}

CloningBoundRecord cloning_theta_sets(double p_rail, double p_step, std::size_t grid_resolution,
                                      double tol) {
  CloningBoundRecord rec;
  rec.p_rail = p_rail;
  rec.p_step = p_step;
  rec.grid_resolution = grid_resolution;
  rec.rail_set = scan_theta_set([&](double t) { return rail_cloning_bound(p_rail, t); },
                                grid_resolution, tol);
  rec.step_set = scan_theta_set([&](double t) { return step_cloning_bound(p_step, t); },
                                grid_resolution, tol);
  rec.common = intersect(rec.rail_set, rec.step_set);
  if (!rec.common.empty()) rec.theta_max = rec.common.back().hi;
  return rec;
}

numerics::ComplexMatrix bipartition_matrix(const StateVector& state, std::uint64_t side_a_mask) {
  const std::size_t n = state.num_sites();
  const std::uint64_t all = (std::uint64_t{1} << n) - 1;
  if ((side_a_mask & ~all) != 0) throw std::invalid_argument("bipartition: mask out of range");
  const std::vector<SiteId> a = mask_sites(side_a_mask, n);
  const std::vector<SiteId> b = mask_sites(all & ~side_a_mask, n);
  numerics::ComplexMatrix m(static_cast<Eigen::Index>(std::size_t{1} << a.size()),
                            static_cast<Eigen::Index>(std::size_t{1} << b.size()));
  for (std::size_t x = 0; x < state.dimension(); ++x) {
    std::size_t r = 0, c = 0;
    for (std::size_t k = 0; k < a.size(); ++k) r |= ((x >> a[k]) & 1u) << k;
    for (std::size_t k = 0; k < b.size(); ++k) c |= ((x >> b[k]) & 1u) << k;
    m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = state[x];
  }
  return m;
}

GgmRecord ggm(const StateVector& state) {
  const std::size_t n = state.num_sites();
  if (n < 2) throw std::invalid_argument("ggm: need at least two sites");
  if (std::abs(state.norm() - 1.0) > 1e-10) throw std::invalid_argument("ggm: state is not normalised");

  GgmRecord rec;
  rec.max_schmidt_sq = -1.0;
  const std::uint64_t others = std::uint64_t{1} << (n - 1);
  // side A = {0} plus the sites selected by `extra` among 1..n-1; A = everything is excluded.
  for (std::uint64_t extra = 0; extra + 1 < others; ++extra) {
    const std::uint64_t mask = 1u | (extra << 1);
    const std::vector<double> sv = numerics::singular_values(bipartition_matrix(state, mask));
    double total = 0.0;
    for (double s : sv) total += s * s;
    rec.max_spectrum_deviation = std::max(rec.max_spectrum_deviation, std::abs(total - 1.0));
    const double top = sv.front() * sv.front();
    ++rec.bipartitions_scanned;

    const bool better = top > rec.max_schmidt_sq + kGgmTieTolerance;
    const bool tied = !better && top >= rec.max_schmidt_sq - kGgmTieTolerance;
    if (better || (tied && mask_sites(mask, n) < rec.side_a)) {
      rec.max_schmidt_sq = better ? top : std::max(top, rec.max_schmidt_sq);
      rec.side_a_mask = mask;
      rec.side_a = mask_sites(mask, n);
    }
  }

  const double sigma = numerics::dominant_singular_value(bipartition_matrix(state, rec.side_a_mask));
  rec.power_iteration_schmidt_sq = sigma * sigma;
  if (std::abs(rec.power_iteration_schmidt_sq - rec.max_schmidt_sq) > 1e-9) {
    throw std::runtime_error("ggm: power iteration disagrees with the singular value decomposition");
  }
  rec.value = 1.0 - rec.max_schmidt_sq;
  return rec;
}

bool splits_along_columns(const LadderLattice& lattice, std::uint64_t side_a_mask) {
  for (std::size_t c = 0; c < lattice.columns(); ++c) {
    const bool top = (side_a_mask >> lattice.site(0, c)) & 1u;
    const bool bottom = (side_a_mask >> lattice.site(1, c)) & 1u;
    if (top != bottom) return false;
  }
  return true;
}

std::size_t steps_inside(const LadderLattice& lattice, std::uint64_t side_a_mask) {
  std::size_t count = 0;
  for (std::size_t c = 0; c < lattice.columns(); ++c) {
    const bool top = (side_a_mask >> lattice.site(0, c)) & 1u;
    const bool bottom = (side_a_mask >> lattice.site(1, c)) & 1u;
    if (top && bottom) ++count;
  }
  return count;
}

}  // namespace rvb
