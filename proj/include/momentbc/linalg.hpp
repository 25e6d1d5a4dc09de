#ifndef MOMENTBC_LINALG_HPP
#define MOMENTBC_LINALG_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <vector>

#include "momentbc/error.hpp"
#include "momentbc/numeric.hpp"

// Small dense linear algebra shared by every module.  All routines are
// templated over the scalar so the exact rational backend and the floating
// backend run the same code; the handful of floating-only algorithms
// (Cholesky, the rotation eigensolver) are constrained to floating point.
//
// Matrices at the scale this library targets are tiny (N <= a few dozen), so
// everything below favours clarity and determinism over blocking or SIMD.

namespace momentbc {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& init = T(0))
      : rows_(rows), cols_(cols), data_(rows * cols, init) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix transpose() const {
    Matrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
  }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) raise(ErrorCode::invalid_argument, "matrix product shape mismatch");
  Matrix<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T& aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

template <class T>
Matrix<T> operator+(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    raise(ErrorCode::invalid_argument, "matrix sum shape mismatch");
  Matrix<T> c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) += b(i, j);
  return c;
}

template <class T>
Matrix<T> operator-(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    raise(ErrorCode::invalid_argument, "matrix difference shape mismatch");
  Matrix<T> c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) -= b(i, j);
  return c;
}

template <class T>
std::vector<T> operator*(const Matrix<T>& a, const std::vector<T>& x) {
  if (a.cols() != x.size()) raise(ErrorCode::invalid_argument, "matrix-vector shape mismatch");
  std::vector<T> y(a.rows(), T(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
  return y;
}

template <class T>
T dot(const std::vector<T>& x, const std::vector<T>& y) {
  if (x.size() != y.size()) raise(ErrorCode::invalid_argument, "dot product length mismatch");
  T s(0);
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

// J*A*J where J is the anti-identity: reverses both row and column order.
template <class T>
Matrix<T> flip_both(const Matrix<T>& a) {
  Matrix<T> m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      m(i, j) = a(a.rows() - 1 - i, a.cols() - 1 - j);
  return m;
}

template <class To, class From>
To convert_scalar(const From& x) {
  if constexpr (std::is_same_v<To, From>)
    return x;
  else
    return To(scalar_traits<From>::to_double(x));
}

template <class To, class From>
Matrix<To> convert_matrix(const Matrix<From>& a) {
  Matrix<To> m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = convert_scalar<To>(a(i, j));
  return m;
}

template <class To, class From>
std::vector<To> convert_vector(const std::vector<From>& x) {
  std::vector<To> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = convert_scalar<To>(x[i]);
  return y;
}

template <class T>
double frobenius_norm(const Matrix<T>& a) {
  double s = 0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const double v = scalar_traits<T>::to_double(a(i, j));
      s += v * v;
    }
  return std::sqrt(s);
}

template <class T>
double max_abs(const Matrix<T>& a) {
  double m = 0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      m = std::max(m, std::abs(scalar_traits<T>::to_double(a(i, j))));
  return m;
}

// Copy of `a` with row i and column j removed (for minors).
template <class T>
Matrix<T> erase_row_col(const Matrix<T>& a, std::size_t i, std::size_t j) {
  if (i >= a.rows() || j >= a.cols()) raise(ErrorCode::invalid_argument, "minor index out of range");
  Matrix<T> m(a.rows() - 1, a.cols() - 1);
  for (std::size_t r = 0, rr = 0; r < a.rows(); ++r) {
    if (r == i) continue;
    for (std::size_t c = 0, cc = 0; c < a.cols(); ++c) {
      if (c == j) continue;
      m(rr, cc++) = a(r, c);
    }
    ++rr;
  }
  return m;
}

// Gaussian elimination with partial pivoting.  Exact for rational scalars.
template <class T>
T determinant(Matrix<T> a) {
  if (a.rows() != a.cols()) raise(ErrorCode::invalid_argument, "determinant of non-square matrix");
  const std::size_t n = a.rows();
  T det(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (abs_value(a(i, k)) > abs_value(a(pivot, k))) pivot = i;
    if (a(pivot, k) == T(0)) return T(0);
    if (pivot != k) {
      for (std::size_t j = k; j < n; ++j) std::swap(a(k, j), a(pivot, j));
      det = -det;
    }
    det *= a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const T f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

// Solve a*x = b by LU with partial pivoting; throws singular-matrix when a
// pivot vanishes exactly.
template <class T>
std::vector<T> solve_linear(Matrix<T> a, std::vector<T> b) {
  if (a.rows() != a.cols() || a.rows() != b.size())
    raise(ErrorCode::invalid_argument, "linear solve shape mismatch");
  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (abs_value(a(i, k)) > abs_value(a(pivot, k))) pivot = i;
    if (a(pivot, k) == T(0)) raise(ErrorCode::singular_matrix, "zero pivot in linear solve");
    if (pivot != k) {
      for (std::size_t j = k; j < n; ++j) std::swap(a(k, j), a(pivot, j));
      std::swap(b[k], b[pivot]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const T f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
      b[i] -= f * b[k];
    }
  }
  std::vector<T> x(n);
  for (std::size_t i = n; i-- > 0;) {
    T s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
    x[i] = s / a(i, i);
  }
  return x;
}

// ---------------------------------------------------------------------------
// Symmetric factorizations and definiteness tests.

// LDL^T without pivoting for symmetric positive definite input; used as the
// positive definite solver on both backends.  Throws not-positive-definite
// when a pivot fails to be strictly positive, which by Sylvester's criterion
// is exact on the rational backend.
template <class T>
struct LdltFactors {
  Matrix<T> l;        // unit lower triangular
  std::vector<T> d;   // positive diagonal pivots
};

template <class T>
LdltFactors<T> ldlt_factor(const Matrix<T>& a) {
  if (a.rows() != a.cols()) raise(ErrorCode::invalid_argument, "LDL^T of non-square matrix");
  const std::size_t n = a.rows();
  LdltFactors<T> f{Matrix<T>::identity(n), std::vector<T>(n, T(0))};
  for (std::size_t j = 0; j < n; ++j) {
    T dj = a(j, j);
    for (std::size_t k = 0; k < j; ++k) dj -= f.l(j, k) * f.l(j, k) * f.d[k];
    if (!(dj > T(0)))
      raise(ErrorCode::not_positive_definite, "pivot " + std::to_string(j + 1) + " is not positive");
    f.d[j] = dj;
    for (std::size_t i = j + 1; i < n; ++i) {
      T s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= f.l(i, k) * f.l(j, k) * f.d[k];
      f.l(i, j) = s / dj;
    }
  }
  return f;
}

template <class T>
std::vector<T> ldlt_solve(const LdltFactors<T>& f, std::vector<T> b) {
  const std::size_t n = f.d.size();
  if (b.size() != n) raise(ErrorCode::invalid_argument, "LDL^T solve shape mismatch");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) b[i] -= f.l(i, j) * b[j];
  for (std::size_t i = 0; i < n; ++i) b[i] /= f.d[i];
  for (std::size_t i = n; i-- > 0;)
    for (std::size_t j = i + 1; j < n; ++j) b[i] -= f.l(j, i) * b[j];
  return b;
}

enum class PdVerdict { positive_definite, indefinite, degenerate };
enum class PsdVerdict { positive_semidefinite, indefinite, degenerate };

inline const char* verdict_name(PdVerdict v) {
  switch (v) {
    case PdVerdict::positive_definite: return "positive-definite";
    case PdVerdict::indefinite: return "indefinite";
    case PdVerdict::degenerate: return "degenerate";
  }
  return "unknown";
}

inline const char* verdict_name(PsdVerdict v) {
  switch (v) {
    case PsdVerdict::positive_semidefinite: return "positive-semidefinite";
    case PsdVerdict::indefinite: return "indefinite";
    case PsdVerdict::degenerate: return "degenerate";
  }
  return "unknown";
}

template <class T>
PsdVerdict check_positive_semidefinite(const Matrix<T>& a, double rel_tol = 1e-10);

// Positive-definiteness test.  Exact backend: sequential LDL^T pivots
// (Sylvester); a negative pivot means indefinite, and a vanishing pivot
// hands the remaining not-strictly-definite cases to the semidefinite test
// (degenerate when the matrix is still PSD, indefinite otherwise).
// Floating backend: same logic with pivots measured against rel_tol times
// the largest initial diagonal entry.
template <class T>
PdVerdict check_positive_definite(const Matrix<T>& a, double rel_tol = 1e-10) {
  if (a.rows() != a.cols()) raise(ErrorCode::invalid_argument, "definiteness of non-square matrix");
  Matrix<T> w = a;
  const std::size_t n = w.rows();
  if (n == 0) return PdVerdict::positive_definite;
  double scale = 0;
  for (std::size_t i = 0; i < n; ++i)
    scale = std::max(scale, std::abs(scalar_traits<T>::to_double(w(i, i))));
  const auto settle = [&a, rel_tol]() {
    return check_positive_semidefinite(a, rel_tol) == PsdVerdict::indefinite
               ? PdVerdict::indefinite
               : PdVerdict::degenerate;
  };
  for (std::size_t k = 0; k < n; ++k) {
    const T& piv = w(k, k);
    if constexpr (scalar_traits<T>::is_exact) {
      if (piv < T(0)) return PdVerdict::indefinite;
      if (piv == T(0)) return settle();
    } else {
      const double p = scalar_traits<T>::to_double(piv);
      const double floor = rel_tol * (scale > 0 ? scale : 1.0);
      if (p < -floor) return PdVerdict::indefinite;
      if (p <= floor) return settle();
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const T f = w(i, k) / piv;
      for (std::size_t j = k + 1; j < n; ++j) w(i, j) -= f * w(k, j);
    }
  }
  return PdVerdict::positive_definite;
}

// Positive-semidefiniteness test via diagonal-pivoted symmetric elimination.
// A zero diagonal pivot is admissible only when its whole remaining row is
// zero; that check is exact on the rational backend and tolerance-based on
// the floating one.
template <class T>
PsdVerdict check_positive_semidefinite(const Matrix<T>& a, double rel_tol) {
  if (a.rows() != a.cols()) raise(ErrorCode::invalid_argument, "definiteness of non-square matrix");
  Matrix<T> w = a;
  const std::size_t n = w.rows();
  std::vector<std::size_t> live(n);
  std::iota(live.begin(), live.end(), std::size_t{0});
  double scale = std::max(max_abs(w), 1.0);
  const double floor = scalar_traits<T>::is_exact ? 0.0 : rel_tol * scale;
  bool grazed_zero = false;
  while (!live.empty()) {
    // Pick the largest remaining diagonal entry as pivot (first wins ties).
    std::size_t best = 0;
    double best_val = -std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < live.size(); ++t) {
      const double v = scalar_traits<T>::to_double(w(live[t], live[t]));
      if (v > best_val) {
        best_val = v;
        best = t;
      }
    }
    const std::size_t k = live[best];
    const T piv = w(k, k);
    const double p = scalar_traits<T>::to_double(piv);
    if (p < -floor || (scalar_traits<T>::is_exact && piv < T(0))) return PsdVerdict::indefinite;
    const bool zero_pivot = scalar_traits<T>::is_exact ? (piv == T(0)) : (p <= floor);
    if (zero_pivot) {
      // Remaining block has max diagonal ~ 0; PSD forces the block to vanish.
      for (std::size_t t = 0; t < live.size(); ++t)
        for (std::size_t u = 0; u < live.size(); ++u) {
          const T& v = w(live[t], live[u]);
          if constexpr (scalar_traits<T>::is_exact) {
            if (v != T(0)) return PsdVerdict::indefinite;
          } else {
            if (std::abs(scalar_traits<T>::to_double(v)) > floor) return PsdVerdict::indefinite;
          }
        }
      return PsdVerdict::degenerate;
    }
    if (!scalar_traits<T>::is_exact && p <= 4 * floor) grazed_zero = true;
    live.erase(live.begin() + static_cast<std::ptrdiff_t>(best));
    for (std::size_t t = 0; t < live.size(); ++t) {
      const T f = w(live[t], k) / piv;
      for (std::size_t u = 0; u < live.size(); ++u) w(live[t], live[u]) -= f * w(k, live[u]);
    }
  }
  return grazed_zero ? PsdVerdict::degenerate : PsdVerdict::positive_semidefinite;
}

// ---------------------------------------------------------------------------
// Floating-point factorizations used by the eigensolvers.

template <class F>
  requires std::is_floating_point_v<F>
Matrix<F> cholesky_lower(const Matrix<F>& a) {
  if (a.rows() != a.cols()) raise(ErrorCode::invalid_argument, "Cholesky of non-square matrix");
  const std::size_t n = a.rows();
  Matrix<F> l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    F d = a(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > F(0)) || !std::isfinite(static_cast<double>(d)))
      raise(ErrorCode::not_positive_definite,
            "Cholesky pivot " + std::to_string(j + 1) + " is not positive");
    l(j, j) = std::sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      F s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / l(j, j);
    }
  }
  return l;
}

// Solve L*X = B for lower triangular L, column by column.
template <class F>
Matrix<F> forward_solve_matrix(const Matrix<F>& l, const Matrix<F>& b) {
  const std::size_t n = l.rows();
  if (b.rows() != n) raise(ErrorCode::invalid_argument, "triangular solve shape mismatch");
  Matrix<F> x = b;
  for (std::size_t c = 0; c < b.cols(); ++c)
    for (std::size_t i = 0; i < n; ++i) {
      F s = x(i, c);
      for (std::size_t j = 0; j < i; ++j) s -= l(i, j) * x(j, c);
      x(i, c) = s / l(i, i);
    }
  return x;
}

// Solve L^T * x = b for lower triangular L.
template <class F>
std::vector<F> back_solve_transposed(const Matrix<F>& l, std::vector<F> b) {
  const std::size_t n = l.rows();
  if (b.size() != n) raise(ErrorCode::invalid_argument, "triangular solve shape mismatch");
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = i + 1; j < n; ++j) b[i] -= l(j, i) * b[j];
    b[i] /= l(i, i);
  }
  return b;
}

// L^{-1} * A * L^{-T}, symmetrized against rounding.
template <class F>
Matrix<F> congruence_by_inverse(const Matrix<F>& l, const Matrix<F>& a) {
  Matrix<F> x = forward_solve_matrix(l, a);
  Matrix<F> y = forward_solve_matrix(l, x.transpose());
  Matrix<F> m = y.transpose();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      const F v = (m(i, j) + m(j, i)) / F(2);
      m(i, j) = m(j, i) = v;
    }
  return m;
}

template <class F>
struct EigenDecomposition {
  std::vector<F> values;  // ascending
  Matrix<F> vectors;      // columns, orthonormal, sign-normalized
};

template <class F>
double off_diagonal_frobenius(const Matrix<F>& a) {
  double s = 0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) {
        const double v = static_cast<double>(a(i, j));
        s += v * v;
      }
  return std::sqrt(s);
}

// Cyclic-by-rows two-sided Jacobi rotations for a symmetric matrix.
// Deterministic: fixed (p,q) sweep order, convergence when the off-diagonal
// Frobenius norm falls below tol * ||A||_F, hard cap on sweeps.  Eigenvalues
// ascending; each eigenvector's first nonzero component (threshold 1e-12
// relative to its largest component) is made positive.
template <class F>
  requires std::is_floating_point_v<F>
EigenDecomposition<F> jacobi_eigensolver(Matrix<F> a, double tol = 1e-12, int max_sweeps = 100) {
  if (a.rows() != a.cols()) raise(ErrorCode::invalid_argument, "eigensolver needs a square matrix");
  const std::size_t n = a.rows();
  Matrix<F> v = Matrix<F>::identity(n);
  const double norm = frobenius_norm(a);
  const double target = tol * (norm > 0 ? norm : 1.0);
  bool converged = off_diagonal_frobenius(a) <= target;
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const F apq = a(p, q);
        if (apq == F(0)) continue;
        const F theta = (a(q, q) - a(p, p)) / (F(2) * apq);
        F t;
        if (std::abs(static_cast<double>(theta)) > 1e12) {
          t = F(1) / (F(2) * theta);
        } else {
          t = F(1) / (abs_value(theta) + std::sqrt(theta * theta + F(1)));
          if (theta < F(0)) t = -t;
        }
        const F c = F(1) / std::sqrt(t * t + F(1));
        const F s = t * c;
        const F tau = s / (F(1) + c);
        a(p, p) -= t * apq;
        a(q, q) += t * apq;
        a(p, q) = a(q, p) = F(0);
        for (std::size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const F arp = a(r, p);
          const F arq = a(r, q);
          a(r, p) = a(p, r) = arp - s * (arq + tau * arp);
          a(r, q) = a(q, r) = arq + s * (arp - tau * arq);
        }
        for (std::size_t r = 0; r < n; ++r) {
          const F vrp = v(r, p);
          const F vrq = v(r, q);
          v(r, p) = vrp * c - vrq * s;
          v(r, q) = vrp * s + vrq * c;
        }
      }
    converged = off_diagonal_frobenius(a) <= target;
  }
  if (!converged)
    raise(ErrorCode::no_convergence, "rotation eigensolver did not converge within sweep cap");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });
  EigenDecomposition<F> out{std::vector<F>(n), Matrix<F>(n, n)};
  for (std::size_t c = 0; c < n; ++c) {
    const std::size_t src = order[c];
    out.values[c] = a(src, src);
    double colmax = 0;
    for (std::size_t r = 0; r < n; ++r)
      colmax = std::max(colmax, std::abs(static_cast<double>(v(r, src))));
    F sign(1);
    for (std::size_t r = 0; r < n; ++r)
      if (std::abs(static_cast<double>(v(r, src))) > 1e-12 * colmax) {
        sign = v(r, src) > F(0) ? F(1) : F(-1);
        break;
      }
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, c) = sign * v(r, src);
  }
  return out;
}

// Frobenius condition estimate ||A||_F * ||A^{-1}||_F via explicit inverse;
// returns +inf when A is numerically singular.
template <class F>
  requires std::is_floating_point_v<F>
double frobenius_condition(const Matrix<F>& a) {
  const std::size_t n = a.rows();
  double inv_norm_sq = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<F> e(n, F(0));
    e[c] = F(1);
    std::vector<F> col;
    try {
      col = solve_linear(a, e);
    } catch (const Error&) {
      return std::numeric_limits<double>::infinity();
    }
    for (const F& x : col) {
      const double v = static_cast<double>(x);
      inv_norm_sq += v * v;
    }
  }
  return frobenius_norm(a) * std::sqrt(inv_norm_sq);
}

}  // namespace momentbc

#endif  // MOMENTBC_LINALG_HPP
