#include "rvb/rvb_state.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace rvb {

StateVector::StateVector(std::size_t num_sites, Eigen::VectorXcd amplitudes)
    : n_(num_sites), amps_(std::move(amplitudes)) {
  if (n_ > kMaxSites) throw std::invalid_argument("state vector: too many sites");
  if (static_cast<std::size_t>(amps_.size()) != (std::size_t{1} << n_)) {
    throw std::invalid_argument("state vector: amplitude count is not 2^n");
  }
}

StateVector StateVector::zero(std::size_t num_sites) {
  if (num_sites > kMaxSites) throw std::invalid_argument("state vector: too many sites");
  return StateVector(num_sites,
                     Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(std::size_t{1} << num_sites)));
}

StateVector StateVector::basis(std::size_t num_sites, std::size_t index) {
  StateVector s = zero(num_sites);
  if (index >= s.dimension()) throw std::out_of_range("basis index out of range");
  s.amps_(static_cast<Eigen::Index>(index)) = 1.0;
  return s;
}

std::complex<double> StateVector::overlap(const StateVector& other) const {
  if (other.n_ != n_) throw std::invalid_argument("overlap: site counts differ");
  return amps_.dot(other.amps_);
}

StateVector& StateVector::operator+=(const StateVector& other) {
  if (other.n_ != n_) throw std::invalid_argument("state sum: site counts differ");
  amps_ += other.amps_;
  return *this;
}

StateVector StateVector::normalized() const {
  const double nrm = norm();
  if (nrm == 0.0) throw std::runtime_error("cannot normalise the zero vector");
  return StateVector(n_, amps_ / nrm);
}

std::string StateVector::dump(const std::string& header) const {
  std::ostringstream out;
  out << header << '\n' << std::setprecision(17);
  for (Eigen::Index i = 0; i < amps_.size(); ++i) out << amps_(i).real() << '\n';
  return out.str();
}

std::array<double, 4> singlet_pair(SiteId i, SiteId j, std::size_t n) {
  if (i == j) throw std::invalid_argument("singlet_pair: sites must differ");
  if (i >= n || j >= n) throw std::invalid_argument("singlet_pair: site out of range");
  const double h = 1.0 / std::sqrt(2.0);
  // local index = bit(low) + 2 * bit(high); up_i down_j gets +h
  std::array<double, 4> amps{0.0, 0.0, 0.0, 0.0};
  if (i < j) {
    amps[2] = h;
    amps[1] = -h;
  } else {
    amps[1] = h;
    amps[2] = -h;
  }
  return amps;
}

StateVector covering_state(const DimerCovering& covering, std::size_t n) {
  if (n > kMaxSites || n % 2 != 0) throw std::invalid_argument("covering_state: bad site count");
  std::vector<int> seen(n, 0);
  for (const Dimer& d : covering.dimers) {
    if (d.a >= n || d.b >= n || d.a == d.b) {
      throw std::invalid_argument("covering_state: dimer site out of range");
    }
    ++seen[d.a];
    ++seen[d.b];
  }
  for (int count : seen) {
    if (count != 1) throw std::invalid_argument("covering_state: not a perfect matching");
  }

  struct Factor {
    std::size_t low;
    std::size_t high;
    std::array<double, 4> amps;
  };
  std::vector<Factor> factors;
  for (const Dimer& d : covering.dimers) {
    factors.push_back({std::min(d.a, d.b), std::max(d.a, d.b), singlet_pair(d.a, d.b, n)});
  }

  StateVector out = StateVector::zero(n);
  Eigen::VectorXcd amps = out.amplitudes();
  const std::size_t pairs = factors.size();
  // Each singlet contributes one of its two nonzero local configurations (index 1 or 2).
  for (std::size_t choice = 0; choice < (std::size_t{1} << pairs); ++choice) {
    std::size_t index = 0;
    double amp = 1.0;
    for (std::size_t k = 0; k < pairs; ++k) {
      const Factor& f = factors[k];
      const bool high_down = (choice >> k) & 1u;
      const std::size_t local = high_down ? 2 : 1;
      amp *= f.amps[local];
      index |= (high_down ? std::size_t{1} << f.high : std::size_t{1} << f.low);
    }
    amps(static_cast<Eigen::Index>(index)) += amp;
  }
  return StateVector(n, std::move(amps));
}

StateVector rvb_state(const LadderLattice& lattice) {
  const auto coverings = enumerate_coverings(lattice);
  if (coverings.empty()) throw std::runtime_error("rvb_state: lattice has no dimer covering");
  const std::size_t n = lattice.num_sites();
  StateVector sum = StateVector::zero(n);
  for (const DimerCovering& cov : coverings) sum += covering_state(cov, n);
  return sum.normalized();
}

double total_spin_squared(const StateVector& state) {
  const std::size_t n = state.num_sites();
  const Eigen::VectorXcd& psi = state.amplitudes();
  // S^2 = 3n/4 + 2 sum_{k<l} S_k . S_l, with S_k . S_l = (flip-flop)/2 + Sz_k Sz_l.
  std::complex<double> cross = 0.0;
  for (Eigen::Index x = 0; x < psi.size(); ++x) {
    const auto ux = static_cast<std::size_t>(x);
    std::complex<double> applied = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t l = k + 1; l < n; ++l) {
        const bool bk = (ux >> k) & 1u;
        const bool bl = (ux >> l) & 1u;
        if (bk == bl) {
          applied += 0.25 * psi(x);
        } else {
          applied -= 0.25 * psi(x);
          const std::size_t flipped = ux ^ (std::size_t{1} << k) ^ (std::size_t{1} << l);
          applied += 0.5 * psi(static_cast<Eigen::Index>(flipped));
        }
      }
    }
    cross += std::conj(psi(x)) * applied;
  }
  return 0.75 * static_cast<double>(n) * psi.squaredNorm() + 2.0 * cross.real();
}

}  // namespace rvb
