#ifndef MOMENTBC_MEASURE_HPP
#define MOMENTBC_MEASURE_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "momentbc/error.hpp"
#include "momentbc/numeric.hpp"

namespace momentbc {

// Finitely supported positive measure: sum of point masses weight[k] at
// atom[k].  Atoms are kept strictly increasing, weights strictly positive;
// rho(k) = 1/weight(k) is the norming constant attached to atom k.
template <class T>
struct DiscreteMeasure {
  std::vector<T> atoms;
  std::vector<T> weights;

  std::size_t size() const { return atoms.size(); }

  T rho(std::size_t k) const { return T(1) / weights[k]; }

  void validate() const {
    if (atoms.empty()) raise(ErrorCode::invalid_argument, "measure needs at least one atom");
    if (atoms.size() != weights.size())
      raise(ErrorCode::invalid_argument, "measure has " + std::to_string(atoms.size()) +
                                             " atoms but " + std::to_string(weights.size()) +
                                             " weights");
    for (std::size_t k = 0; k < atoms.size(); ++k) {
      if (!scalar_traits<T>::finite(atoms[k]) || !scalar_traits<T>::finite(weights[k]))
        raise(ErrorCode::invalid_argument, "measure entries must be finite");
      if (!(weights[k] > T(0)))
        raise(ErrorCode::invalid_argument, "weight " + std::to_string(k + 1) + " is not positive");
      if (k + 1 < atoms.size() && !(atoms[k] < atoms[k + 1]))
        raise(ErrorCode::invalid_argument, "atoms must be strictly increasing");
    }
  }
};

// Power moments s_0..s_{count-1} of the measure.
template <class T>
std::vector<T> moments_of_measure(const DiscreteMeasure<T>& mu, int count) {
  if (count < 1) raise(ErrorCode::invalid_argument, "moment count must be >= 1");
  mu.validate();
  std::vector<T> s(static_cast<std::size_t>(count), T(0));
  for (std::size_t k = 0; k < mu.size(); ++k) {
    T power(1);
    for (int j = 0; j < count; ++j) {
      s[static_cast<std::size_t>(j)] += mu.weights[k] * power;
      power *= mu.atoms[k];
    }
  }
  return s;
}

}  // namespace momentbc

#endif  // MOMENTBC_MEASURE_HPP
