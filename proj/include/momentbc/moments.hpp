#ifndef MOMENTBC_MOMENTS_HPP
#define MOMENTBC_MOMENTS_HPP

#include <optional>
#include <string>
#include <vector>

#include "momentbc/error.hpp"
#include "momentbc/linalg.hpp"

// Truncated power-moment sequences s_0, s_1, ... and the Hankel tests that
// decide which classical moment problem (real line, half line, unit interval)
// the data is consistent with.

namespace momentbc {

enum class Orientation { standard, flipped };

// order x order Hankel block: standard entry (i, j) is s_{i+j+shift}
// (0-based), flipped reverses both index directions.  shift 0 and 1 give the
// two pencil blocks; shift 2 appears in determinacy ratios.
template <class T>
Matrix<T> hankel_block(const std::vector<T>& s, int shift, int order,
                       Orientation orientation = Orientation::standard) {
  if (order < 1) raise(ErrorCode::invalid_argument, "Hankel order must be >= 1");
  if (shift < 0) raise(ErrorCode::invalid_argument, "Hankel shift must be >= 0");
  const std::size_t need = static_cast<std::size_t>(2 * order - 2 + shift);
  if (s.size() <= need)
    raise(ErrorCode::insufficient_moments,
          "Hankel block of order " + std::to_string(order) + " with shift " +
              std::to_string(shift) + " needs " + std::to_string(need + 1) + " moments, have " +
              std::to_string(s.size()));
  const auto n = static_cast<std::size_t>(order);
  Matrix<T> h(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t idx = orientation == Orientation::standard
                                  ? i + j + static_cast<std::size_t>(shift)
                                  : 2 * (n - 1) - i - j + static_cast<std::size_t>(shift);
      h(i, j) = s[idx];
    }
  return h;
}

// Definiteness flags at one truncation order.  The shift-1 block and the
// difference block need one more moment than the shift-0 block, so they are
// absent at the top order when the sequence runs out.
struct OrderAssessment {
  int order = 0;
  PdVerdict s0 = PdVerdict::indefinite;            // shift-0 block
  std::optional<PdVerdict> s1;                     // shift-1 block
  std::optional<PsdVerdict> s0_minus_s1;           // difference block
};

enum class Feasibility { hamburger, stieltjes, hausdorff, infeasible };

inline std::string feasibility_name(Feasibility f, int failure_order = 0) {
  switch (f) {
    case Feasibility::hamburger: return "Hamburger-feasible";
    case Feasibility::stieltjes: return "Stieltjes-feasible";
    case Feasibility::hausdorff: return "Hausdorff-feasible";
    case Feasibility::infeasible:
      return "infeasible-at-order-" + std::to_string(failure_order);
  }
  return "unknown";
}

struct Classification {
  std::vector<OrderAssessment> orders;
  Feasibility verdict = Feasibility::infeasible;
  int failure_order = 0;  // meaningful when verdict == infeasible
  std::vector<std::string> warnings;
};

inline int max_assessable_order(std::size_t moment_count) {
  return static_cast<int>((moment_count + 1) / 2);
}

// Assess orders 1..max_order.  Shift-0 positive definiteness at every order
// is required for a representing measure on the line; shift-1 positive
// definiteness adds the half line; difference semidefiniteness adds the unit
// interval.  Assessment stops early once the shift-0 block fails, since the
// failure persists at every larger order.
template <class T>
Classification classify(const std::vector<T>& s, int max_order, double rel_tol = 1e-10) {
  if (max_order < 1) raise(ErrorCode::invalid_argument, "classification order must be >= 1");
  if (s.size() < static_cast<std::size_t>(2 * max_order - 1))
    raise(ErrorCode::insufficient_moments,
          "order " + std::to_string(max_order) + " needs " + std::to_string(2 * max_order - 1) +
              " moments, have " + std::to_string(s.size()));
  Classification result;
  bool all_s1 = true;
  bool all_diff = true;
  const auto warn_degenerate = [&result](int order, const char* block) {
    result.warnings.push_back("order " + std::to_string(order) + ": " + block +
                              " block is numerically degenerate");
  };
  for (int order = 1; order <= max_order; ++order) {
    OrderAssessment a;
    a.order = order;
    a.s0 = check_positive_definite(hankel_block(s, 0, order), rel_tol);
    if (a.s0 == PdVerdict::degenerate) warn_degenerate(order, "shift-0");
    if (s.size() >= static_cast<std::size_t>(2 * order)) {
      a.s1 = check_positive_definite(hankel_block(s, 1, order), rel_tol);
      if (*a.s1 == PdVerdict::degenerate) warn_degenerate(order, "shift-1");
      if (*a.s1 != PdVerdict::positive_definite) all_s1 = false;
      const Matrix<T> diff = hankel_block(s, 0, order) - hankel_block(s, 1, order);
      a.s0_minus_s1 = check_positive_semidefinite(diff, rel_tol);
      if (*a.s0_minus_s1 == PsdVerdict::degenerate) warn_degenerate(order, "difference");
      if (*a.s0_minus_s1 == PsdVerdict::indefinite) all_diff = false;
    }
    const bool s0_ok = a.s0 == PdVerdict::positive_definite;
    result.orders.push_back(std::move(a));
    if (!s0_ok) {
      result.verdict = Feasibility::infeasible;
      result.failure_order = order;
      return result;
    }
  }
  if (!all_s1)
    result.verdict = Feasibility::hamburger;
  else if (!all_diff)
    result.verdict = Feasibility::stieltjes;
  else
    result.verdict = Feasibility::hausdorff;
  return result;
}

}  // namespace momentbc

#endif  // MOMENTBC_MOMENTS_HPP
