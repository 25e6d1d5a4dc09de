#ifndef MOMENTBC_JACOBI_SIM_HPP
#define MOMENTBC_JACOBI_SIM_HPP

#include <algorithm>
#include <vector>

#include "momentbc/error.hpp"
#include "momentbc/linalg.hpp"
#include "momentbc/measure.hpp"
#include "momentbc/moments.hpp"

// Discrete wave dynamics on a finite Jacobi lattice.  Site n carries
// diagonal coefficient b_n (n = 1..N) and coupling a_n between sites n and
// n+1 (a_0 = 1 couples the boundary, interior couplings positive).  The
// second-order evolution driven by a boundary control f is
//
//   v_{n,t+1} = a_n v_{n+1,t} + a_{n-1} v_{n-1,t} + b_n v_{n,t} - v_{n,t-1}
//   v_{n,-1} = v_{n,0} = 0,   v_{0,t} = f_t,
//
// with either a Dirichlet wall just past the last site or a lattice wide
// enough that the wave never reaches the far end.

namespace momentbc {

template <class T>
struct JacobiCoefficients {
  std::vector<T> a;  // a_0..a_{N-1}; a_0 must be 1
  std::vector<T> b;  // b_1..b_N

  int sites() const { return static_cast<int>(b.size()); }

  // Coefficients extended past the last site by a_n = 1, b_n = 0 (free lattice).
  T coupling(int n) const {
    if (n < 0) raise(ErrorCode::invalid_argument, "coupling index must be nonnegative");
    return n < static_cast<int>(a.size()) ? a[static_cast<std::size_t>(n)] : T(1);
  }
  T diagonal(int n) const {
    if (n < 1) raise(ErrorCode::invalid_argument, "diagonal index must be >= 1");
    return n <= sites() ? b[static_cast<std::size_t>(n - 1)] : T(0);
  }

  void validate() const {
    if (b.empty()) raise(ErrorCode::invalid_argument, "system needs at least one site");
    if (a.size() != b.size())
      raise(ErrorCode::invalid_argument, "coefficient arrays must have equal length");
    if (!(a[0] == T(1)))
      raise(ErrorCode::invalid_argument, "boundary coupling a_0 must equal 1");
    for (const T& x : a)
      if (!scalar_traits<T>::finite(x) || !(x > T(0)))
        raise(ErrorCode::invalid_argument, "couplings must be positive and finite");
    for (const T& x : b)
      if (!scalar_traits<T>::finite(x))
        raise(ErrorCode::invalid_argument, "diagonal coefficients must be finite");
  }
};

// Computed wave field v(n, t) for n = 0..sites+1, t = -1..horizon.
template <class T>
class WaveField {
 public:
  WaveField(int sites, int horizon)
      : sites_(sites), horizon_(horizon),
        grid_(static_cast<std::size_t>(sites + 2) * static_cast<std::size_t>(horizon + 2), T(0)) {
    if (sites < 1 || horizon < 0) raise(ErrorCode::invalid_argument, "bad wave field shape");
  }

  int sites() const { return sites_; }
  int horizon() const { return horizon_; }

  const T& v(int n, int t) const { return at(n, t); }
  T& at(int n, int t) {
    return const_cast<T&>(static_cast<const WaveField*>(this)->at(n, t));
  }
  const T& at(int n, int t) const {
    if (n < 0 || n > sites_ + 1 || t < -1 || t > horizon_)
      raise(ErrorCode::invalid_argument, "wave field index out of range");
    return grid_[static_cast<std::size_t>(n) * static_cast<std::size_t>(horizon_ + 2) +
                 static_cast<std::size_t>(t + 1)];
  }

 private:
  int sites_;
  int horizon_;
  std::vector<T> grid_;
};

// Run the evolution up to time `horizon`.  With dirichlet = true the wall
// sits just past site system.sites(); otherwise the lattice is widened to
// max(sites, horizon) + 1 sites so no reflection can occur within the
// horizon.  Control entries beyond f.size() count as zero.
template <class T>
WaveField<T> simulate(const JacobiCoefficients<T>& system, const std::vector<T>& control,
                      int horizon, bool dirichlet = true) {
  system.validate();
  if (horizon < 0) raise(ErrorCode::invalid_argument, "horizon must be nonnegative");
  const int lattice = dirichlet ? system.sites() : std::max(system.sites(), horizon) + 1;
  WaveField<T> w(lattice, horizon);
  const auto f = [&](int t) -> T {
    return (t >= 0 && t < static_cast<int>(control.size())) ? control[static_cast<std::size_t>(t)]
                                                            : T(0);
  };
  for (int t = 0; t <= horizon; ++t) w.at(0, t) = f(t);
  for (int t = 0; t < horizon; ++t)
    for (int n = 1; n <= lattice; ++n) {
      // w.v(lattice + 1, t) stays 0: Dirichlet wall or never-reached far end.
      T next = system.coupling(n) * w.v(n + 1, t) + system.coupling(n - 1) * w.v(n - 1, t) +
               system.diagonal(n) * w.v(n, t) - w.v(n, t - 1);
      w.at(n, t + 1) = next;
    }
  return w;
}

// Response entries r_0..r_{count-1}: the wave at site 1 under the unit
// impulse control, shifted by one time step (r_{t-1} = v_{1,t}).
template <class T>
std::vector<T> response_by_simulation(const JacobiCoefficients<T>& system, int count,
                                      bool dirichlet = true) {
  if (count < 1) raise(ErrorCode::invalid_argument, "response count must be >= 1");
  const std::vector<T> impulse{T(1)};
  const WaveField<T> w = simulate(system, impulse, count, dirichlet);
  std::vector<T> r(static_cast<std::size_t>(count));
  for (int t = 1; t <= count; ++t) r[static_cast<std::size_t>(t - 1)] = w.v(1, t);
  return r;
}

// Final-time snapshot (v_{1,N}, ..., v_{N,N}) produced by an N-entry control.
template <class T>
std::vector<T> control_to_state(const JacobiCoefficients<T>& system, const std::vector<T>& control) {
  const int n = system.sites();
  if (static_cast<int>(control.size()) != n)
    raise(ErrorCode::invalid_argument, "control length must equal the number of sites");
  const WaveField<T> w = simulate(system, control, n, true);
  std::vector<T> state(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) state[static_cast<std::size_t>(i - 1)] = w.v(i, n);
  return state;
}

// Solutions of the three-term spectral recursion at a fixed argument x:
//   phi_{n+1} = ((x - b_n) phi_n - a_{n-1} phi_{n-1}) / a_n
// with phi_0 = 0, phi_1 = 1 (regular family) and xi_0 = -1, xi_1 = 0
// (complementary family); a_{sites} counts as 1 for the final step.
template <class T>
struct RecursionSolutions {
  std::vector<T> phi;
  std::vector<T> xi;
};

template <class T>
RecursionSolutions<T> phi_xi(const JacobiCoefficients<T>& system, const T& x, int nmax) {
  system.validate();
  if (nmax < 1 || nmax > system.sites() + 1)
    raise(ErrorCode::invalid_argument, "recursion depth must lie in 1..sites+1");
  RecursionSolutions<T> out{std::vector<T>(static_cast<std::size_t>(nmax) + 1, T(0)),
                            std::vector<T>(static_cast<std::size_t>(nmax) + 1, T(0))};
  out.phi[1] = T(1);
  out.xi[0] = T(-1);
  for (int n = 1; n < nmax; ++n) {
    const T an = system.coupling(n);  // = 1 when n == sites
    const T scale = (x - system.diagonal(n)) / an;
    const T carry = system.coupling(n - 1) / an;
    const auto un = static_cast<std::size_t>(n);
    out.phi[un + 1] = scale * out.phi[un] - carry * out.phi[un - 1];
    out.xi[un + 1] = scale * out.xi[un] - carry * out.xi[un - 1];
  }
  return out;
}

// Eigenvalues of the sites x sites tridiagonal matrix with Dirichlet
// truncation, with norming constants rho_k = sum_i phi_i(lambda_k)^2 and
// weights 1/rho_k; total mass is 1 by construction.
inline DiscreteMeasure<double> dirichlet_spectral_data(const JacobiCoefficients<double>& system) {
  system.validate();
  const int n = system.sites();
  Matrix<double> m(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    m(static_cast<std::size_t>(i), static_cast<std::size_t>(i)) = system.diagonal(i + 1);
    if (i + 1 < n) {
      m(static_cast<std::size_t>(i), static_cast<std::size_t>(i + 1)) = system.coupling(i + 1);
      m(static_cast<std::size_t>(i + 1), static_cast<std::size_t>(i)) = system.coupling(i + 1);
    }
  }
  const EigenDecomposition<double> eig = jacobi_eigensolver(m);
  DiscreteMeasure<double> mu;
  mu.atoms = eig.values;
  mu.weights.resize(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const RecursionSolutions<double> sol = phi_xi(system, eig.values[static_cast<std::size_t>(k)], n);
    double rho = 0;
    for (int i = 1; i <= n; ++i) rho += sol.phi[static_cast<std::size_t>(i)] * sol.phi[static_cast<std::size_t>(i)];
    mu.weights[static_cast<std::size_t>(k)] = 1.0 / rho;
  }
  mu.validate();
  return mu;
}

// Recover the coefficient arrays of an N-site system from the first 2N
// moments, through the Cholesky factor of the shift-0 Hankel block: the
// congruence L^{-1} H_1 L^{-T} is the tridiagonal matrix itself.  The result
// is invariant under rescaling of the sequence, so s_0 need not be 1.
inline JacobiCoefficients<double> jacobi_from_moments(const std::vector<double>& s, int sites) {
  if (sites < 1) raise(ErrorCode::invalid_argument, "site count must be >= 1");
  if (s.size() < static_cast<std::size_t>(2 * sites))
    raise(ErrorCode::insufficient_moments,
          std::to_string(sites) + " sites need " + std::to_string(2 * sites) +
              " moments, have " + std::to_string(s.size()));
  const Matrix<double> h0 = hankel_block(s, 0, sites);
  const Matrix<double> h1 = hankel_block(s, 1, sites);
  const Matrix<double> l = cholesky_lower(h0);
  const Matrix<double> j = congruence_by_inverse(l, h1);
  JacobiCoefficients<double> out;
  out.a.resize(static_cast<std::size_t>(sites));
  out.b.resize(static_cast<std::size_t>(sites));
  out.a[0] = 1.0;
  for (int k = 0; k < sites; ++k) {
    out.b[static_cast<std::size_t>(k)] = j(static_cast<std::size_t>(k), static_cast<std::size_t>(k));
    if (k + 1 < sites) {
      const double ak = j(static_cast<std::size_t>(k), static_cast<std::size_t>(k + 1));
      if (!(ak > 0) || !std::isfinite(ak))
        raise(ErrorCode::degenerate_data,
              "moment data is numerically rank deficient at site " + std::to_string(k + 1));
      out.a[static_cast<std::size_t>(k + 1)] = ak;
    }
  }
  out.validate();
  return out;
}

}  // namespace momentbc

#endif  // MOMENTBC_JACOBI_SIM_HPP
