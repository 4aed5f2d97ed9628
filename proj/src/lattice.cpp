#include "rvb/lattice.hpp"

#include <algorithm>
#include <array>
#include <sstream>
#include <stdexcept>

namespace rvb {

const char* to_string(Boundary boundary) {
  return boundary == Boundary::periodic ? "periodic" : "open";
}

const char* to_string(Sublattice sublattice) { return sublattice == Sublattice::A ? "A" : "B"; }

const char* to_string(EdgeKind kind) { return kind == EdgeKind::rail ? "rail" : "step"; }

Boundary parse_boundary(const std::string& text) {
  if (text == "periodic") return Boundary::periodic;
  if (text == "open") return Boundary::open;
  throw std::invalid_argument("unknown boundary '" + text + "' (expected periodic|open)");
}

LadderLattice::LadderLattice(std::size_t m, Boundary boundary)
    : m_(m), boundary_(boundary), incident_(2 * m) {
  if (m < 2) throw std::invalid_argument("ladder needs at least 2 columns");

  for (std::size_t c = 0; c < m_; ++c) add_edge(site(0, c), site(1, c), EdgeKind::step);

  const bool wrap = has_wrap();
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t c = 0; c + 1 < m_; ++c) add_edge(site(r, c), site(r, c + 1), EdgeKind::rail);
    if (wrap) add_edge(site(r, m_ - 1), site(r, 0), EdgeKind::rail);
  }
}

void LadderLattice::add_edge(SiteId u, SiteId v, EdgeKind kind) {
  Edge e{u, v, kind, sublattice(u) != sublattice(v)};
  if (e.dimer_allowed && sublattice(u) == Sublattice::B) std::swap(e.a, e.b);
  incident_[u].push_back(edges_.size());
  incident_[v].push_back(edges_.size());
  edges_.push_back(e);
}

std::string LadderLattice::dump() const {
  std::ostringstream out;
  for (SiteId s = 0; s < num_sites(); ++s) {
    out << "site " << s << " row " << row(s) << " col " << column(s) << " sublattice "
        << to_string(sublattice(s)) << '\n';
  }
  for (const Edge& e : edges_) {
    out << "edge " << e.a << ' ' << e.b << ' ' << to_string(e.kind) << ' '
        << (e.dimer_allowed ? "allowed" : "forbidden") << '\n';
  }
  return out.str();
}

LadderLattice build_ladder(std::size_t m, Boundary boundary) { return LadderLattice(m, boundary); }

namespace {

void extend_matchings(const LadderLattice& lattice, std::vector<bool>& covered,
                      std::vector<std::size_t>& chosen, std::vector<DimerCovering>& out) {
  const auto first_free = std::find(covered.begin(), covered.end(), false);
  if (first_free == covered.end()) {
    DimerCovering cov;
    cov.edge_indices = chosen;
    std::sort(cov.edge_indices.begin(), cov.edge_indices.end());
    for (std::size_t idx : cov.edge_indices) {
      const Edge& e = lattice.edges()[idx];
      cov.dimers.push_back({e.a, e.b});
    }
    out.push_back(std::move(cov));
    return;
  }
  const auto s = static_cast<SiteId>(first_free - covered.begin());
  for (std::size_t idx : lattice.incident_edges(s)) {
    const Edge& e = lattice.edges()[idx];
    if (!e.dimer_allowed) continue;
    const SiteId other = e.a == s ? e.b : e.a;
    if (covered[other]) continue;
    covered[s] = covered[other] = true;
    chosen.push_back(idx);
    extend_matchings(lattice, covered, chosen, out);
    chosen.pop_back();
    covered[s] = covered[other] = false;
  }
}

// Index of the rail edge leaving (row, column) towards column + 1 (or the wrap edge).
// Returns edges().size() when no such edge exists.
std::size_t forward_rail(const LadderLattice& lattice, std::size_t row, std::size_t column) {
  const std::size_t m = lattice.columns();
  const SiteId from = lattice.site(row, column);
  const SiteId to = lattice.site(row, (column + 1) % m);
  for (std::size_t idx : lattice.incident_edges(from)) {
    const Edge& e = lattice.edges()[idx];
    if (e.kind != EdgeKind::rail) continue;
    if ((e.a == from && e.b == to) || (e.a == to && e.b == from)) return idx;
  }
  return lattice.edges().size();
}

}  // namespace

std::vector<DimerCovering> enumerate_coverings(const LadderLattice& lattice) {
  std::vector<bool> covered(lattice.num_sites(), false);
  std::vector<std::size_t> chosen;
  std::vector<DimerCovering> out;
  extend_matchings(lattice, covered, chosen, out);
  std::sort(out.begin(), out.end(), [](const DimerCovering& x, const DimerCovering& y) {
    return x.edge_indices < y.edge_indices;
  });
  return out;
}

std::uint64_t count_coverings(const LadderLattice& lattice) {
  const std::size_t m = lattice.columns();
  // allowed[c] bit r: rail from (r, c) to (r, c+1 mod m) exists and may carry a dimer.
  std::vector<unsigned> allowed(m, 0);
  for (std::size_t c = 0; c < m; ++c) {
    if (c + 1 == m && !lattice.has_wrap()) break;
    for (std::size_t r = 0; r < 2; ++r) {
      const std::size_t idx = forward_rail(lattice, r, c);
      if (idx < lattice.edges().size() && lattice.edges()[idx].dimer_allowed) allowed[c] |= 1u << r;
    }
  }

  // Frontier state: bit r set when site (r, c) is already covered by a rail from column c-1.
  std::uint64_t total = 0;
  for (unsigned start = 0; start < 4; ++start) {
    if ((start & allowed[m - 1]) != start) continue;
    std::array<std::uint64_t, 4> ways{};
    ways[start] = 1;
    for (std::size_t c = 0; c < m; ++c) {
      std::array<std::uint64_t, 4> next{};
      for (unsigned in = 0; in < 4; ++in) {
        if (ways[in] == 0) continue;
        const unsigned free_rows = ~in & 3u;
        for (unsigned out = 0; out < 4; ++out) {
          if ((out & free_rows) != out || (out & allowed[c]) != out) continue;
          const unsigned by_step = free_rows & ~out;
          if (by_step != 0 && by_step != 3) continue;
          next[out] += ways[in];
        }
      }
      ways = next;
    }
    total += ways[start];
  }
  return total;
}

}  // namespace rvb
