#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace rvb {

using SiteId = std::size_t;

enum class Boundary { periodic, open };
enum class Sublattice { A, B };
enum class EdgeKind { rail, step };

const char* to_string(Boundary boundary);
const char* to_string(Sublattice sublattice);
const char* to_string(EdgeKind kind);
Boundary parse_boundary(const std::string& text);

/// Nearest-neighbour bond. For dimer-allowed edges `a` is the A-sublattice endpoint
/// and `b` the B-sublattice endpoint; forbidden wrap edges keep (column m-1, column 0).
struct Edge {
  SiteId a;
  SiteId b;
  EdgeKind kind;
  bool dimer_allowed;
};

/// 2 x m ladder. Site (row r, column c) has id r*m + c; sublattice A iff r + c is even.
///
/// Edges are ordered steps first (by column), then rails of row 0, then rails of row 1,
/// each rail list ending with its wrap edge under periodic boundary. For m = 2 the
/// periodic wrap would duplicate an existing rail and is omitted.
class LadderLattice {
 public:
  LadderLattice(std::size_t m, Boundary boundary);

  std::size_t columns() const { return m_; }
  std::size_t num_sites() const { return 2 * m_; }
  Boundary boundary() const { return boundary_; }
  /// True when rails close from column m-1 back to column 0.
  bool has_wrap() const { return boundary_ == Boundary::periodic && m_ > 2; }

  SiteId site(std::size_t row, std::size_t column) const { return row * m_ + column; }
  std::size_t row(SiteId s) const { return s / m_; }
  std::size_t column(SiteId s) const { return s % m_; }
  Sublattice sublattice(SiteId s) const {
    return (row(s) + column(s)) % 2 == 0 ? Sublattice::A : Sublattice::B;
  }

  const std::vector<Edge>& edges() const { return edges_; }
  /// Indices into edges() of all bonds touching `s`.
  const std::vector<std::size_t>& incident_edges(SiteId s) const { return incident_.at(s); }
  std::size_t degree(SiteId s) const { return incident_edges(s).size(); }

  /// Plain-text description, one "site ..." line per site then one "edge ..." line per edge.
  std::string dump() const;

 private:
  void add_edge(SiteId u, SiteId v, EdgeKind kind);

  std::size_t m_;
  Boundary boundary_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> incident_;
};

/// Throws std::invalid_argument for m < 2.
LadderLattice build_ladder(std::size_t m, Boundary boundary);

struct Dimer {
  SiteId a;  // A-sublattice end
  SiteId b;  // B-sublattice end
};

/// One perfect matching of the lattice by dimer-allowed edges.
struct DimerCovering {
  std::vector<std::size_t> edge_indices;  // sorted ascending
  std::vector<Dimer> dimers;              // same order as edge_indices
};

/// All perfect matchings over dimer-allowed edges, ordered lexicographically by
/// their sorted edge-index lists. Empty when none exist.
std::vector<DimerCovering> enumerate_coverings(const LadderLattice& lattice);

/// Number of perfect matchings from a column-by-column transfer over frontier states.
std::uint64_t count_coverings(const LadderLattice& lattice);

}  // namespace rvb
