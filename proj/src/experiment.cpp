#include "rvb/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "rvb/rvb_state.hpp"

namespace rvb {

namespace {

constexpr double kSpinTolerance = 1e-10;
constexpr double kMarginalTolerance = 1e-10;
constexpr double kSpectrumTolerance = 1e-10;

std::string num(double x) {
  std::ostringstream out;
  out << std::setprecision(12) << x;
  return out.str();
}

const char* flag(bool b) { return b ? "true" : "false"; }

std::string intervals(const ThetaSet& set) {
  std::string out;
  for (const ThetaInterval& iv : set) {
    if (!out.empty()) out += '|';
    out += num(iv.lo) + ':' + num(iv.hi);
  }
  return out;
}

std::string hex_mask(std::uint64_t mask) {
  std::ostringstream out;
  out << "0x" << std::hex << mask;
  return out.str();
}

void write_file(const std::filesystem::path& path, const std::string& contents,
                std::vector<std::filesystem::path>& written) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << contents;
  out.close();
  if (!out) throw std::runtime_error("failed writing " + path.string());
  written.push_back(path);
}

std::string edge_csv(const EntanglementReport& report, EdgeKind kind) {
  std::ostringstream out;
  out << "n,m,boundary,edge_a,edge_b,kind,allowed,p,residual\n";
  for (const SizeResult& r : report.rows) {
    for (std::size_t i = 0; i < r.edges.size(); ++i) {
      const Edge& e = r.edges[i];
      if (e.kind != kind) continue;
      const WernerFit& f = r.werner.fits[i];
      out << r.n << ',' << r.m << ',' << to_string(r.boundary) << ',' << e.a << ',' << e.b << ','
          << to_string(e.kind) << ',' << (e.dimer_allowed ? "allowed" : "forbidden") << ','
          << num(f.p) << ',' << num(f.residual) << '\n';
    }
  }
  return out.str();
}

}  // namespace

void validate(const RunConfig& config) {
  if (config.sizes.empty()) throw std::invalid_argument("no ladder sizes requested");
  for (std::size_t m : config.sizes) {
    if (m < 2) throw std::invalid_argument("ladder size m=" + std::to_string(m) + " is below 2");
    if (2 * m > kMaxSites) {
      throw std::invalid_argument("ladder size m=" + std::to_string(m) + " exceeds N = 16");
    }
  }
  if (!(config.theta_tolerance > 0.0)) throw std::invalid_argument("theta tolerance must be positive");
  if (config.theta_grid < 2) throw std::invalid_argument("theta grid needs at least two points");
  if (config.surface_resolution < 2) throw std::invalid_argument("surface resolution must be >= 2");
}

SizeResult analyze_size(std::size_t m, const RunConfig& config) {
  const LadderLattice lattice = build_ladder(m, config.boundary);
  SizeResult r;
  r.m = m;
  r.n = lattice.num_sites();
  r.boundary = config.boundary;
  r.edges = lattice.edges();
  r.covering_count = enumerate_coverings(lattice).size();
  if (r.covering_count == 0) throw std::runtime_error("no dimer covering exists");
  if (r.covering_count != count_coverings(lattice)) {
    throw std::runtime_error("covering enumeration disagrees with the column transfer count");
  }

  r.state = rvb_state(lattice);
  r.total_spin_sq = total_spin_squared(r.state);
  if (std::abs(r.total_spin_sq) > kSpinTolerance) {
    throw std::runtime_error("state is not a total singlet: <S^2> = " + num(r.total_spin_sq));
  }

  const numerics::ComplexMatrix half = 0.5 * numerics::ComplexMatrix::Identity(2, 2);
  for (SiteId s = 0; s < r.n; ++s) {
    const std::array<SiteId, 1> keep{s};
    const DensityMatrix rho = partial_trace(r.state, keep);
    r.max_single_site_deviation =
        std::max(r.max_single_site_deviation, (rho.matrix - half).cwiseAbs().maxCoeff());
  }
  if (r.max_single_site_deviation > kMarginalTolerance) {
    throw std::runtime_error("single-site marginal differs from I/2");
  }

  r.werner = edge_werner_parameters(lattice, r.state);
  if (r.werner.max_residual > kWernerTolerance) {
    throw std::runtime_error("two-site marginal is not of Werner form, residual " +
                             num(r.werner.max_residual));
  }
  r.p_avg = (2.0 * r.werner.p_rail + r.werner.p_step) / 3.0;

  bool all_three = true;
  double site_sum = 0.0;
  for (SiteId s = 0; s < r.n; ++s) {
    if (lattice.degree(s) != 3) {
      all_three = false;
      break;
    }
    site_sum += regional_entanglement(lattice, r.werner.fits, s);
  }
  if (all_three) r.p_avg_site_mean = site_sum / static_cast<double>(r.n);

  r.fidelities = teleportation_fidelities(r.werner.p_rail, r.werner.p_step);
  r.monogamy = monogamy_check(r.werner.p_rail, r.werner.p_step);
  r.cloning = cloning_theta_sets(r.werner.p_rail, r.werner.p_step, config.theta_grid,
                                 config.theta_tolerance);

  r.ggm = ggm(r.state);
  if (r.ggm.max_spectrum_deviation > kSpectrumTolerance) {
    throw std::runtime_error("Schmidt spectrum does not sum to one");
  }
  r.ggm_split_along_columns = splits_along_columns(lattice, r.ggm.side_a_mask);
  r.ggm_steps_on_a_side = steps_inside(lattice, r.ggm.side_a_mask);
  return r;
}

void fit_figures(EntanglementReport& report) {
  if (report.rows.size() < 3) throw std::invalid_argument("fits need at least three sizes");
  FigureFits fits;

  std::vector<double> ns, thetas;
  for (const SizeResult& r : report.rows) {
    if (!r.cloning.theta_max) continue;
    ns.push_back(static_cast<double>(r.n));
    thetas.push_back(*r.cloning.theta_max);
  }
  if (ns.size() >= 3) {
    fits.theta_linear = numerics::poly_fit(ns, thetas, numerics::FitModel::linear);
    fits.theta_quadratic = numerics::poly_fit(ns, thetas, numerics::FitModel::quadratic_no_linear);
  }

  std::vector<double> ps, pr;
  for (const SizeResult& r : report.rows) {
    ps.push_back(r.werner.p_step);
    pr.push_back(r.werner.p_rail);
  }
  fits.rail_vs_step = numerics::poly_fit(ps, pr, numerics::FitModel::full_quadratic);
  report.fits = std::move(fits);
}

EntanglementReport run_sweep(const RunConfig& config) {
  validate(config);
  EntanglementReport report;
  report.config = config;
  for (std::size_t m : config.sizes) {
    try {
      report.rows.push_back(analyze_size(m, config));
    } catch (const std::exception& e) {
      report.failures.push_back({m, e.what()});
    }
  }
  if (report.rows.size() >= 3) fit_figures(report);
  emit_csv(report, config.output_dir);
  return report;
}

std::vector<std::filesystem::path> emit_csv(const EntanglementReport& report,
                                            const std::filesystem::path& output_dir) {
  std::error_code ec;
  std::filesystem::create_directories(output_dir, ec);
  if (ec) throw std::runtime_error("cannot create " + output_dir.string() + ": " + ec.message());

  std::vector<std::filesystem::path> written;
  write_file(output_dir / "fig2_p_rail.csv", edge_csv(report, EdgeKind::rail), written);
  write_file(output_dir / "fig3_p_step.csv", edge_csv(report, EdgeKind::step), written);

  {
    std::ostringstream out;
    out << "n,p_r,p_s,p_avg,F_r,F_s,F_avg\n";
    for (const SizeResult& r : report.rows) {
      out << r.n << ',' << num(r.werner.p_rail) << ',' << num(r.werner.p_step) << ','
          << num(r.p_avg) << ',' << num(r.fidelities.rail) << ',' << num(r.fidelities.step) << ','
          << num(r.fidelities.average) << '\n';
    }
    write_file(output_dir / "fig4_p_avg.csv", out.str(), written);
  }
  {
    std::ostringstream out;
    out << "p_r,p_s,surface_value\n";
    for (const SurfacePoint& pt : monogamy_surface_sample(report.config.surface_resolution)) {
      out << num(pt.p_rail) << ',' << num(pt.p_step) << ',' << num(pt.value) << '\n';
    }
    write_file(output_dir / "fig5_monogamy_surface.csv", out.str(), written);
  }
  {
    std::ostringstream out;
    out << "n,p_r,p_s,theta_max,s1_intervals,s2_intervals\n";
    for (const SizeResult& r : report.rows) {
      out << r.n << ',' << num(r.werner.p_rail) << ',' << num(r.werner.p_step) << ','
          << (r.cloning.theta_max ? num(*r.cloning.theta_max) : std::string("empty")) << ','
          << intervals(r.cloning.rail_set) << ',' << intervals(r.cloning.step_set) << '\n';
    }
    write_file(output_dir / "fig6_theta_max.csv", out.str(), written);
  }
  {
    std::ostringstream out;
    out << "n,p_r,p_s,lhs,tangle_rail,tangle_step,satisfied\n";
    for (const SizeResult& r : report.rows) {
      out << r.n << ',' << num(r.werner.p_rail) << ',' << num(r.werner.p_step) << ','
          << num(r.monogamy.lhs) << ',' << num(r.monogamy.tangle_rail) << ','
          << num(r.monogamy.tangle_step) << ',' << flag(r.monogamy.satisfied) << '\n';
    }
    write_file(output_dir / "fig7_pr_vs_ps.csv", out.str(), written);
  }
  {
    std::ostringstream out;
    out << "n,ggm,max_schmidt_sq,maximizing_partition,steps_on_A_side\n";
    for (const SizeResult& r : report.rows) {
      out << r.n << ',' << num(r.ggm.value) << ',' << num(r.ggm.max_schmidt_sq) << ','
          << hex_mask(r.ggm.side_a_mask) << ',' << r.ggm_steps_on_a_side << '\n';
    }
    write_file(output_dir / "fig8_ggm.csv", out.str(), written);
  }

  if (report.config.emit_state_dumps) {
    for (const SizeResult& r : report.rows) {
      std::ostringstream header;
      header << "rvb n=" << r.n << " boundary=" << to_string(r.boundary) << " m=" << r.m;
      write_file(output_dir / ("state_n" + std::to_string(r.n) + ".txt"), r.state.dump(header.str()),
                 written);
    }
  }
  return written;
}

std::string format_summary(const EntanglementReport& report) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(6);
  out << "boundary: " << to_string(report.config.boundary) << '\n';
  out << std::setw(4) << "N" << std::setw(7) << "cover" << std::setw(11) << "p_r" << std::setw(11)
      << "p_s" << std::setw(11) << "p_avg" << std::setw(11) << "F_avg" << std::setw(11)
      << "monogamy" << std::setw(11) << "theta_max" << std::setw(11) << "GGM" << "  split\n";
  for (const SizeResult& r : report.rows) {
    out << std::setw(4) << r.n << std::setw(7) << r.covering_count << std::setw(11)
        << r.werner.p_rail << std::setw(11) << r.werner.p_step << std::setw(11) << r.p_avg
        << std::setw(11) << r.fidelities.average << std::setw(11) << r.monogamy.lhs;
    if (r.cloning.theta_max) {
      out << std::setw(11) << *r.cloning.theta_max;
    } else {
      out << std::setw(11) << "empty";
    }
    out << std::setw(11) << r.ggm.value << "  " << hex_mask(r.ggm.side_a_mask)
        << (r.ggm_split_along_columns ? " (columns)" : " (crosses a step)") << '\n';
  }
  for (const SizeFailure& f : report.failures) {
    out << "m=" << f.m << " FAILED: " << f.diagnostic << '\n';
  }
  if (report.fits) {
    const auto line = [&](const char* label, const std::optional<numerics::PolyFit>& fit) {
      out << label;
      if (!fit) {
        out << " n/a (fewer than three points)\n";
        return;
      }
      out << std::setprecision(7);
      for (double c : fit->coefficients) out << ' ' << c;
      out << "  mse " << std::scientific << fit->mean_square_error << std::fixed << '\n';
    };
    line("theta_max = a + b N:    ", report.fits->theta_linear);
    line("theta_max = a + c N^2:  ", report.fits->theta_quadratic);
    line("p_r = a + b p_s + c p_s^2:", report.fits->rail_vs_step);
  }
  return out.str();
}

}  // namespace rvb
