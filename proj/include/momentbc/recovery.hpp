#ifndef MOMENTBC_RECOVERY_HPP
#define MOMENTBC_RECOVERY_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include "momentbc/bc_operators.hpp"
#include "momentbc/chebyshev.hpp"
#include "momentbc/error.hpp"
#include "momentbc/measure.hpp"
#include "momentbc/pencil.hpp"

// Recovery of an N-atom representing measure from the first 2N moments.
// The pencil (weighted Gram, Gram) of the reachable states has the atoms as
// eigenvalues; the weight of each atom comes from the boundary reading of the
// eigenvector control, in the scale-invariant form
//
//   weight_k = (R f_k)_N^2 / (C f_k, f_k),
//
// which needs no normalization of f_k.  On the rational backend the pencil is
// still solved in floating point, but the weight ratio is then evaluated
// exactly from the float eigenvector, so the reported measure is an exact
// rational object whose defect is only as large as the eigenvector error.

namespace momentbc {

struct RecoveryOptions {
  PencilOptions pencil;
  double collision_rel_gap = 1e-9;  // minimum eigenvalue separation, relative
};

template <class T>
DiscreteMeasure<T> solve_truncated(const std::vector<T>& s, int order,
                                   const RecoveryOptions& opts = {},
                                   PencilDiagnostics* diagnostics = nullptr) {
  if (order < 1) raise(ErrorCode::invalid_argument, "recovery order must be >= 1");
  if (s.size() < static_cast<std::size_t>(2 * order))
    raise(ErrorCode::insufficient_moments,
          "order " + std::to_string(order) + " recovery needs " + std::to_string(2 * order) +
              " moments, have " + std::to_string(s.size()));
  const std::vector<T> head(s.begin(), s.begin() + 2 * order);
  const std::vector<T> r = moments_to_response(head);
  const Matrix<T> c = connecting_operator(r, order);
  const Matrix<T> b = weighted_connecting_operator(r, order);

  const PencilProblem<double> pencil{convert_matrix<double>(b), convert_matrix<double>(c)};
  const EigenSolution<double> eig = solve_pencil(pencil, opts.pencil, diagnostics);

  double scale = 1;
  for (double v : eig.eigenvalues) scale = std::max(scale, std::abs(v));
  for (std::size_t k = 0; k + 1 < eig.eigenvalues.size(); ++k)
    if (eig.eigenvalues[k + 1] - eig.eigenvalues[k] <= opts.collision_rel_gap * scale)
      raise(ErrorCode::degenerate_data,
            "recovered atoms " + std::to_string(k + 1) + " and " + std::to_string(k + 2) +
                " collide; the data admits fewer than " + std::to_string(order) +
                " atoms - retry with a smaller order");

  DiscreteMeasure<T> mu;
  const auto n = static_cast<std::size_t>(order);
  mu.atoms.resize(n);
  mu.weights.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    mu.atoms[k] = convert_scalar<T>(eig.eigenvalues[k]);
    std::vector<T> f(n);
    for (std::size_t i = 0; i < n; ++i) f[i] = convert_scalar<T>(eig.eigenvectors(i, k));
    const T boundary = response_value(r, f, order);
    const T energy = dot(c * f, f);
    if (!(energy > T(0)) || boundary == T(0))
      raise(ErrorCode::degenerate_data,
            "eigenvector control " + std::to_string(k + 1) + " has no boundary reading");
    mu.weights[k] = boundary * boundary / energy;
  }
  mu.validate();
  return mu;
}

// Variational route to the same spectrum one order down: on controls with
// vanishing first entry, pairing through the connecting operator against the
// one-step time shift is symmetric, and the reduced pencil
// (P^T C D P, P^T C P) has exactly the Dirichlet eigenvalues of the
// (order-1)-site truncation.  Returns those eigenvalues together with the
// full-length eigenvector controls (leading entry zero, unit C-norm).
struct RestrictedSpectrum {
  std::vector<double> eigenvalues;  // ascending, order-1 of them
  Matrix<double> controls;          // order x (order-1); column k pairs with eigenvalue k
};

inline RestrictedSpectrum dirichlet_spectrum_restricted(const std::vector<double>& s, int order,
                                                        const PencilOptions& opts = {},
                                                        PencilDiagnostics* diagnostics = nullptr) {
  if (order < 2) raise(ErrorCode::invalid_argument, "restricted spectrum needs order >= 2");
  if (s.size() < static_cast<std::size_t>(2 * order - 1))
    raise(ErrorCode::insufficient_moments,
          "order " + std::to_string(order) + " needs " + std::to_string(2 * order - 1) +
              " moments, have " + std::to_string(s.size()));
  const std::vector<double> head(s.begin(), s.begin() + 2 * order - 1);
  const std::vector<double> r = moments_to_response(head);
  const Matrix<double> c = connecting_operator(r, order);
  const auto n = static_cast<std::size_t>(order);
  Matrix<double> shift(n, n);  // time-shift pairing: ones on the two off-diagonals
  for (std::size_t i = 0; i + 1 < n; ++i) {
    shift(i, i + 1) = 1.0;
    shift(i + 1, i) = 1.0;
  }
  const Matrix<double> cd = c * shift;
  Matrix<double> reduced_b(n - 1, n - 1);
  Matrix<double> reduced_c(n - 1, n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = 0; j + 1 < n; ++j) {
      reduced_b(i, j) = cd(i + 1, j + 1);
      reduced_c(i, j) = c(i + 1, j + 1);
    }
  const EigenSolution<double> eig =
      solve_pencil(PencilProblem<double>{reduced_b, reduced_c}, opts, diagnostics);
  RestrictedSpectrum out;
  out.eigenvalues = eig.eigenvalues;
  out.controls = Matrix<double>(n, n - 1);
  for (std::size_t col = 0; col + 1 < n; ++col)
    for (std::size_t i = 0; i + 1 < n; ++i) out.controls(i + 1, col) = eig.eigenvectors(i, col);
  return out;
}

}  // namespace momentbc

#endif  // MOMENTBC_RECOVERY_HPP
