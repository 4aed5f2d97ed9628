#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace rvb::numerics {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

/// Eigenvalues of a Hermitian matrix, sorted in descending order.
/// Throws std::invalid_argument if the input deviates from Hermiticity by more than 1e-10.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& matrix);

/// Singular values, descending.
std::vector<double> singular_values(const ComplexMatrix& matrix);

/// Largest singular value by power iteration on the smaller Gram matrix.
/// Independent of the full decomposition used by singular_values().
double dominant_singular_value(const ComplexMatrix& matrix, double tol = 1e-13,
                               int max_iterations = 100000);

struct Bracket {
  double lo;
  double hi;
};

/// Shrinks [lo, hi] around the point where predicate changes value until hi - lo <= tol.
/// predicate(result.lo) == predicate(lo) and predicate(result.hi) == predicate(hi).
Bracket bisect_bracket(const std::function<bool(double)>& predicate, double lo, double hi,
                       double tol);

/// Midpoint of bisect_bracket(). Throws if the predicate agrees at both ends.
double bisect_boundary(const std::function<bool(double)>& predicate, double lo, double hi,
                       double tol);

enum class FitModel {
  linear,                 // a + b x
  quadratic_no_linear,    // a + c x^2
  full_quadratic,         // a + b x + c x^2
};

struct PolyFit {
  // constant term first; quadratic_no_linear stores {a, c}
  std::vector<double> coefficients;
  FitModel model;
  double mean_square_error;

  double evaluate(double x) const;
};

/// Ordinary least squares through the normal equations.
/// Throws std::invalid_argument for too few points or a singular design.
PolyFit poly_fit(std::span<const double> xs, std::span<const double> ys, FitModel model);

const char* to_string(FitModel model);

}  // namespace rvb::numerics
