#include "rvb/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace rvb::numerics {

namespace {

constexpr double kHermitianTolerance = 1e-10;

std::vector<double> sorted_descending(const Eigen::VectorXd& values) {
  std::vector<double> out(values.data(), values.data() + values.size());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

std::size_t free_parameters(FitModel model) {
  return model == FitModel::full_quadratic ? 3 : 2;
}

std::vector<double> design_row(FitModel model, double x) {
  switch (model) {
    case FitModel::linear:
      return {1.0, x};
    case FitModel::quadratic_no_linear:
      return {1.0, x * x};
    case FitModel::full_quadratic:
      return {1.0, x, x * x};
  }
  throw std::logic_error("unknown fit model");
}

}  // namespace

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& matrix) {
  if (matrix.rows() != matrix.cols()) {
    throw std::invalid_argument("hermitian_eigenvalues: matrix is not square");
  }
  const double deviation = (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
  if (deviation > kHermitianTolerance) {
    throw std::invalid_argument("hermitian_eigenvalues: matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(matrix, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hermitian_eigenvalues: eigen solver did not converge");
  }
  return sorted_descending(solver.eigenvalues());
}

std::vector<double> singular_values(const ComplexMatrix& matrix) {
  if (matrix.size() == 0) return {};
  Eigen::JacobiSVD<ComplexMatrix> svd(matrix);
  return sorted_descending(svd.singularValues());
}

double dominant_singular_value(const ComplexMatrix& matrix, double tol, int max_iterations) {
  if (matrix.size() == 0) return 0.0;
  const ComplexMatrix gram =
      matrix.rows() <= matrix.cols() ? ComplexMatrix(matrix * matrix.adjoint())
                                     : ComplexMatrix(matrix.adjoint() * matrix);
  const Eigen::Index dim = gram.rows();
  // Seeded random start: structured starts can be orthogonal to the dominant subspace of
  // symmetric states.
  std::mt19937 rng(12345);
  std::normal_distribution<double> gauss;
  Eigen::VectorXcd v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = Complex(gauss(rng), gauss(rng));
  v.normalize();

  double lambda = 0.0;
  for (int it = 0; it < max_iterations; ++it) {
    Eigen::VectorXcd w = gram * v;
    lambda = v.dot(w).real();
    if ((w - lambda * v).norm() <= tol * std::max(1.0, lambda)) break;
    const double norm = w.norm();
    if (norm == 0.0) return 0.0;
    v = w / norm;
  }
  return std::sqrt(std::max(lambda, 0.0));
}

Bracket bisect_bracket(const std::function<bool(double)>& predicate, double lo, double hi,
                       double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("bisect: tolerance must be positive");
  const bool at_lo = predicate(lo);
  if (at_lo == predicate(hi)) {
    throw std::invalid_argument("bisect: predicate agrees at both ends of the bracket");
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (predicate(mid) == at_lo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {lo, hi};
}

double bisect_boundary(const std::function<bool(double)>& predicate, double lo, double hi,
                       double tol) {
  const Bracket b = bisect_bracket(predicate, lo, hi, tol);
  return 0.5 * (b.lo + b.hi);
}

double PolyFit::evaluate(double x) const {
  const std::vector<double> row = design_row(model, x);
  double y = 0.0;
  for (std::size_t k = 0; k < row.size(); ++k) y += coefficients[k] * row[k];
  return y;
}

PolyFit poly_fit(std::span<const double> xs, std::span<const double> ys, FitModel model) {
  if (xs.size() != ys.size()) {
    throw std::invalid_argument("poly_fit: xs and ys differ in length");
  }
  const std::size_t params = free_parameters(model);
  if (xs.size() < params) {
    throw std::invalid_argument("poly_fit: fewer points than free coefficients");
  }

  Eigen::MatrixXd design(static_cast<Eigen::Index>(xs.size()), static_cast<Eigen::Index>(params));
  Eigen::VectorXd target(static_cast<Eigen::Index>(ys.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const std::vector<double> row = design_row(model, xs[i]);
    for (std::size_t k = 0; k < params; ++k) {
      design(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = row[k];
    }
    target(static_cast<Eigen::Index>(i)) = ys[i];
  }

  const Eigen::MatrixXd normal = design.transpose() * design;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(normal);
  lu.setThreshold(1e-12);
  if (!lu.isInvertible()) {
    throw std::invalid_argument("poly_fit: singular design matrix");
  }
  const Eigen::VectorXd beta = lu.solve(design.transpose() * target);
  const Eigen::VectorXd residual = target - design * beta;

  PolyFit fit;
  fit.model = model;
  fit.coefficients.assign(beta.data(), beta.data() + beta.size());
  fit.mean_square_error = residual.squaredNorm() / static_cast<double>(xs.size());
  return fit;
}

const char* to_string(FitModel model) {
  switch (model) {
    case FitModel::linear:
      return "linear";
    case FitModel::quadratic_no_linear:
      return "quadratic_no_linear";
    case FitModel::full_quadratic:
      return "full_quadratic";
  }
  return "unknown";
}

}  // namespace rvb::numerics
