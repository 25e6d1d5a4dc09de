#ifndef MOMENTBC_TESTS_FIXTURES_HPP
#define MOMENTBC_TESTS_FIXTURES_HPP

#include <random>
#include <set>
#include <vector>

#include "momentbc/jacobi_sim.hpp"
#include "momentbc/measure.hpp"
#include "momentbc/numeric.hpp"

// Seeded generators for oracle inputs.  Measures are the ground truth here:
// a discrete measure determines its moments by direct summation, so any
// pipeline that claims to recover structure from moments can be checked
// against the measure it started from.

namespace fixtures {

using momentbc::DiscreteMeasure;
using momentbc::JacobiCoefficients;
using momentbc::Rational;

inline JacobiCoefficients<double> random_jacobi(std::mt19937_64& rng, int sites) {
  std::uniform_real_distribution<double> coupling(0.5, 2.0);
  std::uniform_real_distribution<double> diagonal(-1.0, 1.0);
  JacobiCoefficients<double> j;
  j.a.resize(static_cast<std::size_t>(sites));
  j.b.resize(static_cast<std::size_t>(sites));
  j.a[0] = 1.0;
  for (int i = 1; i < sites; ++i) j.a[static_cast<std::size_t>(i)] = coupling(rng);
  for (int i = 0; i < sites; ++i) j.b[static_cast<std::size_t>(i)] = diagonal(rng);
  return j;
}

inline JacobiCoefficients<Rational> random_rational_jacobi(std::mt19937_64& rng, int sites) {
  std::uniform_int_distribution<int> num(2, 8);   // couplings in [1/2, 2]
  std::uniform_int_distribution<int> bnum(-4, 4);  // diagonals in [-1, 1]
  JacobiCoefficients<Rational> j;
  j.a.resize(static_cast<std::size_t>(sites));
  j.b.resize(static_cast<std::size_t>(sites));
  j.a[0] = Rational(1);
  for (int i = 1; i < sites; ++i) j.a[static_cast<std::size_t>(i)] = Rational(num(rng), 4);
  for (int i = 0; i < sites; ++i) j.b[static_cast<std::size_t>(i)] = Rational(bnum(rng), 4);
  return j;
}

inline Rational random_rational(std::mt19937_64& rng, int lo_num, int hi_num, int max_den) {
  std::uniform_int_distribution<int> num(lo_num, hi_num);
  std::uniform_int_distribution<int> den(1, max_den);
  return Rational(num(rng), den(rng));
}

// `sign` > 0 restricts atoms to (0, inf); `unit_interval` to (0, 1).
inline DiscreteMeasure<Rational> random_rational_measure(std::mt19937_64& rng, int atoms,
                                                         bool positive = false,
                                                         bool unit_interval = false) {
  std::set<Rational> support;
  std::uniform_int_distribution<int> num(unit_interval ? 1 : -12, 12);
  std::uniform_int_distribution<int> den(unit_interval ? 13 : 1, unit_interval ? 24 : 5);
  while (static_cast<int>(support.size()) < atoms) {
    Rational a(num(rng), den(rng));
    if (positive && !(a > 0)) continue;
    support.insert(a);
  }
  DiscreteMeasure<Rational> mu;
  mu.atoms.assign(support.begin(), support.end());
  for (int k = 0; k < atoms; ++k) mu.weights.push_back(random_rational(rng, 1, 9, 4));
  mu.validate();
  return mu;
}

inline DiscreteMeasure<double> random_double_measure(std::mt19937_64& rng, int atoms,
                                                     double min_gap = 0.05) {
  std::uniform_real_distribution<double> pos(-3.0, 3.0);
  std::uniform_real_distribution<double> mass(0.1, 2.0);
  DiscreteMeasure<double> mu;
  std::set<double> support;
  while (static_cast<int>(support.size()) < atoms) {
    const double a = pos(rng);
    bool ok = true;
    for (double b : support)
      if (std::abs(a - b) < min_gap) ok = false;
    if (ok) support.insert(a);
  }
  mu.atoms.assign(support.begin(), support.end());
  for (int k = 0; k < atoms; ++k) mu.weights.push_back(mass(rng));
  mu.validate();
  return mu;
}

}  // namespace fixtures

#endif  // MOMENTBC_TESTS_FIXTURES_HPP
