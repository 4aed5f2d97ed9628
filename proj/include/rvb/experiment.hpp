#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "rvb/lattice.hpp"
#include "rvb/measures.hpp"
#include "rvb/numerics.hpp"
#include "rvb/reduced_density.hpp"

namespace rvb {

struct RunConfig {
  std::vector<std::size_t> sizes{3, 4, 5, 6};  // columns m; N = 2m
  Boundary boundary = Boundary::periodic;
  std::filesystem::path output_dir = "rvb_out";
  double theta_tolerance = 1e-9;
  std::size_t theta_grid = 4001;
  std::size_t surface_resolution = 100;
  bool emit_state_dumps = false;
};

/// Throws std::invalid_argument on an empty size list, m < 2 or N > 16.
void validate(const RunConfig& config);

/// Everything computed for one ladder size.
struct SizeResult {
  std::size_t m = 0;
  std::size_t n = 0;
  Boundary boundary = Boundary::periodic;
  std::size_t covering_count = 0;
  double total_spin_sq = 0.0;
  double max_single_site_deviation = 0.0;  // max-abs entry of rho_i - I/2
  std::vector<Edge> edges;
  EdgeWernerSummary werner;
  double p_avg = 0.0;  // (2 p_r + p_s)/3
  std::optional<double> p_avg_site_mean;  // mean regional entanglement when every site has 3 bonds
  TeleportationFidelities fidelities{};
  MonogamyRecord monogamy{};
  CloningBoundRecord cloning{};
  GgmRecord ggm{};
  bool ggm_split_along_columns = false;
  std::size_t ggm_steps_on_a_side = 0;
  StateVector state;
};

struct SizeFailure {
  std::size_t m;
  std::string diagnostic;
};

/// Reference fit coefficients that computed fits are compared against.
struct ReferenceFits {
  static constexpr double theta_linear[2] = {0.747664, -0.0185155};
  static constexpr double theta_quadratic[2] = {0.671077, -0.0010471};
  static constexpr double pr_vs_ps[3] = {0.67, 0.241, -0.858};
};

struct FigureFits {
  std::optional<numerics::PolyFit> theta_linear;     // theta_max = a + b N
  std::optional<numerics::PolyFit> theta_quadratic;  // theta_max = a + c N^2
  std::optional<numerics::PolyFit> rail_vs_step;     // p_r = a + b p_s + c p_s^2
};

struct EntanglementReport {
  RunConfig config;
  std::vector<SizeResult> rows;
  std::vector<SizeFailure> failures;
  std::optional<FigureFits> fits;

  bool all_succeeded() const { return failures.empty(); }
};

/// Full pipeline for one ladder size. Throws when no covering exists or an invariant fails.
SizeResult analyze_size(std::size_t m, const RunConfig& config);

/// Runs every configured size (failures are collected, not fatal), fits the figures when at
/// least three sizes succeeded, and writes all CSV files.
EntanglementReport run_sweep(const RunConfig& config);

/// Adds theta_max-vs-N and p_r-vs-p_s fits. Throws std::invalid_argument with fewer than
/// three rows; singular fits propagate.
void fit_figures(EntanglementReport& report);

/// Writes fig2..fig8 CSVs (and state dumps if requested). Returns the files written.
std::vector<std::filesystem::path> emit_csv(const EntanglementReport& report,
                                            const std::filesystem::path& output_dir);

/// Human-readable table of the per-size rows and fits.
std::string format_summary(const EntanglementReport& report);

}  // namespace rvb
