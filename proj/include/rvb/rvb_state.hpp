#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <string>

#include <Eigen/Dense>

#include "rvb/lattice.hpp"

namespace rvb {

constexpr std::size_t kMaxSites = 16;

/// Amplitudes over the 2^n computational basis. Bit k of an index is the spin of
/// site k, with 0 = up and 1 = down.
class StateVector {
 public:
  StateVector() = default;
  StateVector(std::size_t num_sites, Eigen::VectorXcd amplitudes);

  static StateVector zero(std::size_t num_sites);
  /// Single basis state |index>.
  static StateVector basis(std::size_t num_sites, std::size_t index);

  std::size_t num_sites() const { return n_; }
  std::size_t dimension() const { return static_cast<std::size_t>(amps_.size()); }
  const Eigen::VectorXcd& amplitudes() const { return amps_; }
  std::complex<double> operator[](std::size_t index) const {
    return amps_(static_cast<Eigen::Index>(index));
  }

  double norm() const { return amps_.norm(); }
  std::complex<double> overlap(const StateVector& other) const;

  StateVector& operator+=(const StateVector& other);
  StateVector normalized() const;

  /// Text dump: header line then one real amplitude per line in index order.
  std::string dump(const std::string& header) const;

 private:
  std::size_t n_ = 0;
  Eigen::VectorXcd amps_;
};

/// Directed singlet (|up_i down_j> - |down_i up_j>)/sqrt(2) on two sites, as four amplitudes
/// indexed by bit(min(i, j)) + 2 * bit(max(i, j)). Swapping i and j negates the result.
/// Throws std::invalid_argument if i == j or either site is >= n.
std::array<double, 4> singlet_pair(SiteId i, SiteId j, std::size_t n);

/// Product of directed singlets, A-site first in every pair.
/// Throws if the dimers do not cover each of the n sites exactly once.
StateVector covering_state(const DimerCovering& covering, std::size_t n);

/// Normalised equal-weight superposition of all dimer coverings of the lattice.
/// Throws std::runtime_error when the lattice has no covering.
StateVector rvb_state(const LadderLattice& lattice);

/// <psi| S_tot^2 |psi> applied sparsely, pair by pair.
double total_spin_squared(const StateVector& state);

}  // namespace rvb
