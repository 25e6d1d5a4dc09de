#ifndef MOMENTBC_CHEBYSHEV_HPP
#define MOMENTBC_CHEBYSHEV_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "momentbc/error.hpp"
#include "momentbc/linalg.hpp"

// Chebyshev-type polynomials of the second kind in the unscaled argument:
//
//   P_0 = 0,  P_1 = 1,  P_{t+1}(x) = x * P_t(x) - P_{t-1}(x)
//
// (classically P_t(x) = U_{t-1}(x/2)).  P_t is monic of degree t-1, and the
// discrete wave driven by a boundary control is a linear combination of these
// polynomials, which is what ties moment data to boundary data.

namespace momentbc {

// P_0 .. P_tmax evaluated at x.
template <class T>
std::vector<T> cheb_sequence(int tmax, const T& x) {
  if (tmax < 0) raise(ErrorCode::invalid_argument, "polynomial index must be nonnegative");
  std::vector<T> p(static_cast<std::size_t>(tmax) + 1, T(0));
  if (tmax >= 1) p[1] = T(1);
  for (int t = 1; t < tmax; ++t)
    p[static_cast<std::size_t>(t) + 1] = x * p[static_cast<std::size_t>(t)] - p[static_cast<std::size_t>(t) - 1];
  return p;
}

template <class T>
T cheb(int t, const T& x) {
  return cheb_sequence(t, x).back();
}

// d/dx P_0 .. P_tmax at x, via the differentiated recursion
// P'_{t+1} = P_t + x P'_t - P'_{t-1}.
template <class T>
std::vector<T> cheb_derivative_sequence(int tmax, const T& x) {
  if (tmax < 0) raise(ErrorCode::invalid_argument, "polynomial index must be nonnegative");
  std::vector<T> p = cheb_sequence(tmax, x);
  std::vector<T> d(static_cast<std::size_t>(tmax) + 1, T(0));
  for (int t = 1; t < tmax; ++t)
    d[static_cast<std::size_t>(t) + 1] =
        p[static_cast<std::size_t>(t)] + x * d[static_cast<std::size_t>(t)] - d[static_cast<std::size_t>(t) - 1];
  return d;
}

// (P_n(x), P_{n-1}(x), ..., P_1(x)): the descending-order vector the boundary
// control problems use.
template <class T>
std::vector<T> cheb_vector(int n, const T& x) {
  if (n < 1) raise(ErrorCode::invalid_argument, "cheb_vector needs n >= 1");
  std::vector<T> seq = cheb_sequence(n, x);
  std::vector<T> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = seq[static_cast<std::size_t>(n - i)];
  return out;
}

template <class T>
std::vector<T> cheb_derivative_vector(int n, const T& x) {
  if (n < 1) raise(ErrorCode::invalid_argument, "cheb_derivative_vector needs n >= 1");
  std::vector<T> seq = cheb_derivative_sequence(n, x);
  std::vector<T> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = seq[static_cast<std::size_t>(n - i)];
  return out;
}

// Row t (1-based) of the change-of-basis matrix holds the monomial
// coefficients of P_t, so the matrix is unit lower triangular with integer
// entries and maps power moments to polynomial averages.  Built by running
// the recursion on coefficient rows.
template <class T>
Matrix<T> cheb_coefficient_matrix(int n) {
  if (n < 1) raise(ErrorCode::invalid_argument, "coefficient matrix needs n >= 1");
  const auto un = static_cast<std::size_t>(n);
  Matrix<T> m(un, un);
  m(0, 0) = T(1);  // P_1 = 1
  if (n >= 2) m(1, 1) = T(1);  // P_2 = x
  for (std::size_t t = 2; t < un; ++t)
    for (std::size_t j = 0; j <= t; ++j) {
      T v = j > 0 ? m(t - 1, j - 1) : T(0);  // shift = multiply by x
      v -= m(t - 2, j);
      m(t, j) = v;
    }
  return m;
}

// Same matrix with rows and columns both reversed; upper unit triangular.
template <class T>
Matrix<T> cheb_coefficient_matrix_flipped(int n) {
  return flip_both(cheb_coefficient_matrix<T>(n));
}

// Closed form for the (i, j) entry (0-based): zero unless j <= i and i + j is
// even, otherwise binom((i+j)/2, j) * (-1)^((i+j)/2 + j).  Exact in 64-bit
// for n <= 66; beyond that the binomials overflow.
inline std::int64_t cheb_coefficient_entry(int i, int j) {
  if (i < 0 || j < 0) raise(ErrorCode::invalid_argument, "coefficient index must be nonnegative");
  if (i > 65 || j > 65)
    raise(ErrorCode::invalid_argument, "closed-form coefficient exceeds 64-bit range");
  if (j > i || ((i + j) % 2) != 0) return 0;
  const int m = (i + j) / 2;
  __int128 binom = 1;
  for (int k = 1; k <= j; ++k) binom = binom * (m - j + k) / k;
  const std::int64_t b = static_cast<std::int64_t>(binom);
  return ((m + j) % 2 == 0) ? b : -b;
}

// Moments s_0..s_{n-1} -> polynomial averages r_0..r_{n-1}, where
// r_{t-1} is the integral of P_t against the underlying measure.
template <class T>
std::vector<T> moments_to_response(const std::vector<T>& s) {
  if (s.empty()) raise(ErrorCode::insufficient_moments, "need at least one moment");
  const Matrix<T> m = cheb_coefficient_matrix<T>(static_cast<int>(s.size()));
  return m * s;
}

// Inverse transform by forward substitution on the unit triangular system.
template <class T>
std::vector<T> response_to_moments(const std::vector<T>& r) {
  if (r.empty()) raise(ErrorCode::insufficient_response_entries, "need at least one response entry");
  const Matrix<T> m = cheb_coefficient_matrix<T>(static_cast<int>(r.size()));
  std::vector<T> s(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    T v = r[i];
    for (std::size_t j = 0; j < i; ++j) v -= m(i, j) * s[j];
    s[i] = v;  // unit diagonal
  }
  return s;
}

}  // namespace momentbc

#endif  // MOMENTBC_CHEBYSHEV_HPP
