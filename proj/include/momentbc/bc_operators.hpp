#ifndef MOMENTBC_BC_OPERATORS_HPP
#define MOMENTBC_BC_OPERATORS_HPP

#include <vector>

#include "momentbc/chebyshev.hpp"
#include "momentbc/error.hpp"
#include "momentbc/linalg.hpp"
#include "momentbc/measure.hpp"

// Operators of the boundary-control picture, assembled directly from the
// response entries r_0, r_1, ... (the averages of the polynomials P_t against
// the underlying measure).  Everything here is a finite Gram matrix of those
// polynomials, which is why the same data that fills Hankel blocks on the
// moment side fills these operators on the dynamical side.

namespace momentbc {

namespace detail {
inline void require_response(std::size_t have, std::size_t need, const char* what) {
  if (have < need)
    raise(ErrorCode::insufficient_response_entries,
          std::string(what) + " needs " + std::to_string(need) + " response entries, have " +
              std::to_string(have));
}
}  // namespace detail

// Integral of P_a * P_b against the measure, expressed through response
// entries via the product linearization
//   P_a P_b = sum_{k=0}^{min(a,b)-1} P_{a+b-1-2k}.
// Reads r up to index a+b-2.
template <class T>
T cheb_product_average(const std::vector<T>& r, int a, int b) {
  if (a < 0 || b < 0) raise(ErrorCode::invalid_argument, "polynomial index must be nonnegative");
  if (a == 0 || b == 0) return T(0);
  detail::require_response(r.size(), static_cast<std::size_t>(a + b - 1), "product average");
  T sum(0);
  const int terms = std::min(a, b);
  for (int k = 0; k < terms; ++k) sum += r[static_cast<std::size_t>(a + b - 2 - 2 * k)];
  return sum;
}

// order x order connecting operator: entry (i, j) (1-based) is the integral
// of P_{order+1-i} P_{order+1-j}, i.e. the Gram matrix of the reachable
// states at time `order`.  Needs r_0..r_{2*order-2}.
template <class T>
Matrix<T> connecting_operator(const std::vector<T>& r, int order) {
  if (order < 1) raise(ErrorCode::invalid_argument, "connecting operator needs order >= 1");
  detail::require_response(r.size(), static_cast<std::size_t>(2 * order - 1), "connecting operator");
  const auto n = static_cast<std::size_t>(order);
  Matrix<T> c(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const T v = cheb_product_average(r, order - static_cast<int>(i), order - static_cast<int>(j));
      c(i, j) = v;
      c(j, i) = v;
    }
  return c;
}

// Same Gram matrix with one factor of the spectral variable inserted:
// entry (i, j) is the integral of x * P_{order+1-i} P_{order+1-j}, expanded
// through x P_q = P_{q+1} + P_{q-1}.  Symmetric; forms the pencil numerator
// against connecting_operator.  Needs r_0..r_{2*order-1}.
template <class T>
Matrix<T> weighted_connecting_operator(const std::vector<T>& r, int order) {
  if (order < 1) raise(ErrorCode::invalid_argument, "weighted connecting operator needs order >= 1");
  detail::require_response(r.size(), static_cast<std::size_t>(2 * order), "weighted connecting operator");
  const auto n = static_cast<std::size_t>(order);
  Matrix<T> b(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const int a = order - static_cast<int>(i);
      const int q = order - static_cast<int>(j);
      b(i, j) = cheb_product_average(r, a, q + 1) + cheb_product_average(r, a, q - 1);
    }
  return b;
}

// Spectral-side assembly of the same operators by direct integration against
// a finitely supported measure; used to cross-check the response-side path.
template <class T>
Matrix<T> connecting_from_measure(const DiscreteMeasure<T>& mu, int order, int variable_power = 0) {
  if (order < 1) raise(ErrorCode::invalid_argument, "connecting operator needs order >= 1");
  if (variable_power < 0 || variable_power > 1)
    raise(ErrorCode::invalid_argument, "variable power must be 0 or 1");
  mu.validate();
  const auto n = static_cast<std::size_t>(order);
  Matrix<T> c(n, n);
  for (std::size_t k = 0; k < mu.size(); ++k) {
    const std::vector<T> p = cheb_vector(order, mu.atoms[k]);  // (P_order, ..., P_1)
    const T w = variable_power == 0 ? mu.weights[k] : mu.weights[k] * mu.atoms[k];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) c(i, j) += w * p[i] * p[j];
  }
  return c;
}

// Value of the response convolution (R f)_t = sum_{s=0}^{t-1} r_s f_{t-1-s};
// control entries beyond the stored length count as zero.
template <class T>
T response_value(const std::vector<T>& r, const std::vector<T>& f, int t) {
  if (t < 0) raise(ErrorCode::invalid_argument, "response time must be nonnegative");
  if (t == 0) return T(0);
  detail::require_response(r.size(), static_cast<std::size_t>(t), "response value");
  T sum(0);
  for (int s = 0; s < t; ++s) {
    const int fi = t - 1 - s;
    if (fi < static_cast<int>(f.size()))
      sum += r[static_cast<std::size_t>(s)] * f[static_cast<std::size_t>(fi)];
  }
  return sum;
}

// order x order response matrix: strictly lower triangular Toeplitz with
// entry (i, j) = r_{i-j-1} for i > j (1-based), so row i lists the
// coefficients producing (R f)_{i-1}.  Needs r_0..r_{order-2}.
template <class T>
Matrix<T> response_matrix(const std::vector<T>& r, int order) {
  if (order < 1) raise(ErrorCode::invalid_argument, "response matrix needs order >= 1");
  if (order > 1)
    detail::require_response(r.size(), static_cast<std::size_t>(order - 1), "response matrix");
  const auto n = static_cast<std::size_t>(order);
  Matrix<T> m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) m(i, j) = r[i - j - 1];
  return m;
}

}  // namespace momentbc

#endif  // MOMENTBC_BC_OPERATORS_HPP
