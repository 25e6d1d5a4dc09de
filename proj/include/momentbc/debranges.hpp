#ifndef MOMENTBC_DEBRANGES_HPP
#define MOMENTBC_DEBRANGES_HPP

#include <vector>

#include "momentbc/bc_operators.hpp"
#include "momentbc/chebyshev.hpp"
#include "momentbc/error.hpp"
#include "momentbc/linalg.hpp"
#include "momentbc/moments.hpp"

// The finite de Branges space attached to a truncated moment sequence: the
// polynomials of degree < order, carrying the inner product integrated
// against any representing measure.  A space element can be addressed either
// by its monomial coefficients or by the boundary control whose final state
// it is; the two charts are related by the triangular coefficient matrix.

namespace momentbc {

template <class T>
struct PolynomialElement {
  std::vector<T> monomial;  // ascending coefficients a_0..a_{order-1}
  std::vector<T> control;   // boundary control f_0..f_{order-1}

  int order() const { return static_cast<int>(monomial.size()); }

  // Horner evaluation of the polynomial itself.
  T evaluate(const T& x) const {
    T v(0);
    for (std::size_t j = monomial.size(); j-- > 0;) v = v * x + monomial[j];
    return v;
  }

  // The state produced by control f is sum_i f_i P_{order-i}, i.e. the
  // control entries read the coefficient rows in reverse order.
  static PolynomialElement from_control(std::vector<T> f) {
    if (f.empty()) raise(ErrorCode::invalid_argument, "control must be nonempty");
    const int n = static_cast<int>(f.size());
    const Matrix<T> coeff = cheb_coefficient_matrix<T>(n);
    PolynomialElement e;
    e.monomial.assign(f.size(), T(0));
    for (std::size_t i = 0; i < f.size(); ++i)
      for (std::size_t j = 0; j < f.size(); ++j)
        e.monomial[j] += f[i] * coeff(f.size() - 1 - i, j);
    e.control = std::move(f);
    return e;
  }

  static PolynomialElement from_monomial(std::vector<T> a) {
    if (a.empty()) raise(ErrorCode::invalid_argument, "coefficient vector must be nonempty");
    const std::size_t n = a.size();
    const Matrix<T> coeff = cheb_coefficient_matrix<T>(static_cast<int>(n));
    // Solve coeff^T g = a (unit upper triangular), then reverse g.
    std::vector<T> g(n);
    for (std::size_t i = n; i-- > 0;) {
      T v = a[i];
      for (std::size_t t = i + 1; t < n; ++t) v -= coeff(t, i) * g[t];
      g[i] = v;
    }
    PolynomialElement e;
    e.control.resize(n);
    for (std::size_t t = 0; t < n; ++t) e.control[n - 1 - t] = g[t];
    e.monomial = std::move(a);
    return e;
  }
};

// Inner product of two space elements through the moment data:
// sum_{j,k} a_j b_k s_{j+k}.
template <class T>
T scalar_product(const PolynomialElement<T>& f, const PolynomialElement<T>& g,
                 const std::vector<T>& s) {
  const std::size_t need = f.monomial.size() + g.monomial.size() - 1;
  if (s.size() < need)
    raise(ErrorCode::insufficient_moments, "inner product needs " + std::to_string(need) +
                                               " moments, have " + std::to_string(s.size()));
  T sum(0);
  for (std::size_t j = 0; j < f.monomial.size(); ++j)
    for (std::size_t k = 0; k < g.monomial.size(); ++k)
      sum += f.monomial[j] * g.monomial[k] * s[j + k];
  return sum;
}

// Control whose final state reproduces point evaluation at z: solves
// C j = (P_order(z), ..., P_1(z)) with C the connecting operator.  Fails
// with not-positive-definite when the data admits no such space.
template <class T>
std::vector<T> krein_control(const std::vector<T>& s, int order, const T& z) {
  if (order < 1) raise(ErrorCode::invalid_argument, "krein control needs order >= 1");
  if (s.size() < static_cast<std::size_t>(2 * order - 1))
    raise(ErrorCode::insufficient_moments,
          "order " + std::to_string(order) + " needs " + std::to_string(2 * order - 1) +
              " moments, have " + std::to_string(s.size()));
  const std::vector<T> head(s.begin(), s.begin() + (2 * order - 1));
  const std::vector<T> r = moments_to_response(head);
  const Matrix<T> c = connecting_operator(r, order);
  const LdltFactors<T> f = ldlt_factor(c);
  return ldlt_solve(f, cheb_vector(order, z));
}

enum class KernelForm { bilinear, determinant };

// Reproducing kernel K(z, x) of the order-limited space.  The bilinear form
// pairs the point-evaluation control with the polynomial vector at x; the
// determinant form evaluates the same number as a bordered-determinant ratio
// over the shift-0 Hankel block:
//   K(z, x) = -det [[0, m(x)^T], [m(z), H]] / det H,  m(y) = (1, y, ..., y^{order-1}).
template <class T>
T reproducing_kernel(const std::vector<T>& s, int order, const T& z, const T& x,
                     KernelForm form = KernelForm::bilinear) {
  if (order < 1) raise(ErrorCode::invalid_argument, "kernel needs order >= 1");
  if (form == KernelForm::bilinear) {
    const std::vector<T> j = krein_control(s, order, z);
    return dot(cheb_vector(order, x), j);
  }
  const Matrix<T> h = hankel_block(s, 0, order);
  const T den = determinant(h);
  if (den == T(0)) raise(ErrorCode::singular_hankel, "shift-0 Hankel block is singular");
  const auto n = static_cast<std::size_t>(order);
  Matrix<T> bordered(n + 1, n + 1);
  T zp(1), xp(1);
  for (std::size_t k = 0; k < n; ++k) {
    bordered(0, k + 1) = xp;
    bordered(k + 1, 0) = zp;
    xp *= x;
    zp *= z;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j2 = 0; j2 < n; ++j2) bordered(i + 1, j2 + 1) = h(i, j2);
  return -determinant(bordered) / den;
}

template <class T>
struct ChristoffelValue {
  T kernel_diagonal;  // K(x, x)
  T kappa;            // 1 / K(x, x): the extremal mass a measure can put at x
};

template <class T>
ChristoffelValue<T> christoffel(const std::vector<T>& s, int order, const T& x) {
  const T diag = reproducing_kernel(s, order, x, x, KernelForm::bilinear);
  if (!(diag > T(0)))
    raise(ErrorCode::degenerate_data, "kernel diagonal is not positive");
  return ChristoffelValue<T>{diag, T(1) / diag};
}

}  // namespace momentbc

#endif  // MOMENTBC_DEBRANGES_HPP
