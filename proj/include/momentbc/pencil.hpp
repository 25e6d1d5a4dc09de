#ifndef MOMENTBC_PENCIL_HPP
#define MOMENTBC_PENCIL_HPP

#include <string>
#include <vector>

#include "momentbc/error.hpp"
#include "momentbc/linalg.hpp"

// Symmetric definite generalized eigenproblem B f = lambda C f with C
// positive definite.  Reduction: Cholesky C = L L^T, rotation eigensolve of
// L^{-1} B L^{-T}, back-substitution f = L^{-T} y.  The back-transformed
// vectors are automatically orthonormal in the C inner product.

namespace momentbc {

struct PencilOptions {
  double tol = 1e-12;                       // off-diagonal Frobenius target, relative
  int max_sweeps = 100;                     // rotation sweep cap
  double asymmetry_tol = 1e-12;             // relative symmetry defect allowed on input
  double condition_warn_threshold = 1e12;   // Frobenius condition estimate of C
  bool extended_precision_retry = true;     // re-solve in long double when C is ill-conditioned
};

struct PencilDiagnostics {
  double condition_estimate = 0;
  bool extended_precision_used = false;
  std::vector<std::string> warnings;
};

template <class F>
struct PencilProblem {
  Matrix<F> b;
  Matrix<F> c;
};

template <class F>
struct EigenSolution {
  std::vector<F> eigenvalues;  // ascending
  Matrix<F> eigenvectors;      // columns; (C f_i, f_j) = delta_ij
};

namespace detail {

template <class F>
void check_and_symmetrize(Matrix<F>& m, double rel_tol, const char* name) {
  if (m.rows() != m.cols())
    raise(ErrorCode::invalid_argument, std::string(name) + " block must be square");
  const double scale = std::max(max_abs(m), 1e-300);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      const double defect = std::abs(static_cast<double>(m(i, j) - m(j, i)));
      if (defect > rel_tol * scale)
        raise(ErrorCode::invalid_argument,
              std::string(name) + " block is not symmetric (defect " + std::to_string(defect) + ")");
      const F v = (m(i, j) + m(j, i)) / F(2);
      m(i, j) = m(j, i) = v;
    }
}

template <class F>
void normalize_column_signs(Matrix<F>& m) {
  for (std::size_t c = 0; c < m.cols(); ++c) {
    double colmax = 0;
    for (std::size_t r = 0; r < m.rows(); ++r)
      colmax = std::max(colmax, std::abs(static_cast<double>(m(r, c))));
    F sign(1);
    for (std::size_t r = 0; r < m.rows(); ++r)
      if (std::abs(static_cast<double>(m(r, c))) > 1e-12 * colmax) {
        sign = m(r, c) > F(0) ? F(1) : F(-1);
        break;
      }
    if (sign < F(0))
      for (std::size_t r = 0; r < m.rows(); ++r) m(r, c) = -m(r, c);
  }
}

template <class F>
EigenSolution<F> solve_pencil_core(Matrix<F> b, Matrix<F> c, const PencilOptions& opts) {
  const Matrix<F> l = cholesky_lower(c);
  const Matrix<F> reduced = congruence_by_inverse(l, b);
  EigenDecomposition<F> eig = jacobi_eigensolver(reduced, opts.tol, opts.max_sweeps);
  const std::size_t n = b.rows();
  EigenSolution<F> out{std::move(eig.values), Matrix<F>(n, n)};
  for (std::size_t col = 0; col < n; ++col) {
    std::vector<F> y(n);
    for (std::size_t r = 0; r < n; ++r) y[r] = eig.vectors(r, col);
    const std::vector<F> f = back_solve_transposed(l, std::move(y));
    for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, col) = f[r];
  }
  normalize_column_signs(out.eigenvectors);
  return out;
}

}  // namespace detail

inline EigenSolution<double> solve_pencil(const PencilProblem<double>& problem,
                                          const PencilOptions& opts = {},
                                          PencilDiagnostics* diagnostics = nullptr) {
  Matrix<double> b = problem.b;
  Matrix<double> c = problem.c;
  if (b.rows() != c.rows() || b.cols() != c.cols())
    raise(ErrorCode::invalid_argument, "pencil blocks must have matching shape");
  if (b.rows() == 0) raise(ErrorCode::invalid_argument, "pencil blocks must be nonempty");
  detail::check_and_symmetrize(b, opts.asymmetry_tol, "numerator");
  detail::check_and_symmetrize(c, opts.asymmetry_tol, "denominator");

  const double cond = frobenius_condition(c);
  bool retry = false;
  std::vector<std::string> warnings;
  if (cond > opts.condition_warn_threshold) {
    warnings.push_back("denominator block condition estimate " + format_double(cond) +
                       " exceeds " + format_double(opts.condition_warn_threshold) +
                       "; results may lose accuracy");
    retry = opts.extended_precision_retry;
  }

  EigenSolution<double> solution;
  bool used_extended = false;
  if (retry) {
    const EigenSolution<long double> wide = detail::solve_pencil_core(
        convert_matrix<long double>(b), convert_matrix<long double>(c), opts);
    solution.eigenvalues = convert_vector<double>(wide.eigenvalues);
    solution.eigenvectors = convert_matrix<double>(wide.eigenvectors);
    used_extended = true;
  } else {
    solution = detail::solve_pencil_core(b, c, opts);
  }
  if (diagnostics) {
    diagnostics->condition_estimate = cond;
    diagnostics->extended_precision_used = used_extended;
    diagnostics->warnings = std::move(warnings);
  }
  return solution;
}

}  // namespace momentbc

#endif  // MOMENTBC_PENCIL_HPP
