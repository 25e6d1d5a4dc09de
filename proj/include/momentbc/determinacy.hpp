#ifndef MOMENTBC_DETERMINACY_HPP
#define MOMENTBC_DETERMINACY_HPP

#include <string>
#include <thread>
#include <vector>

#include "momentbc/error.hpp"
#include "momentbc/linalg.hpp"
#include "momentbc/moments.hpp"

// Determinacy ladders.  For a positive definite truncation the dual norm of a
// fixed linear functional on the polynomial space is nondecreasing in the
// truncation order; whether those norms stay bounded as the order grows is
// the finite-horizon evidence one can collect for or against uniqueness of
// the representing measure.  Each ladder value is computed twice: as the
// quadratic form of a Hankel solve and as a ratio of determinants, which is
// how the identities are cross-checked.

namespace momentbc {

enum class DeterminacyVerdict { no_indeterminacy_evidence, bounded_trend, degenerate };

inline const char* verdict_name(DeterminacyVerdict v) {
  switch (v) {
    case DeterminacyVerdict::no_indeterminacy_evidence: return "no-indeterminacy-evidence";
    case DeterminacyVerdict::bounded_trend: return "bounded-trend";
    case DeterminacyVerdict::degenerate: return "degenerate";
  }
  return "unknown";
}

struct DeterminacyOptions {
  // Relative growth over the second half of the ladder below which a column
  // counts as bounded; indeterminacy evidence needs every column bounded.
  double bounded_growth_rel = 0.01;
  int threads = 1;
};

// One rung of the real-line ladder at truncation order T:
//   q1 = dual norm^2 of evaluation at 0      = (S0^{-1} e_1, e_1)
//   q2 = dual norm^2 of differentiation at 0 = (S0^{-1} e_2, e_2)
// with the determinant forms det(shift-2 block of order T-1) / det S0 and
// det(S0 without row/col 2) / det S0.
template <class T>
struct HamburgerRow {
  int order = 0;
  T q1{}, q2{};
  T ratio1{}, ratio2{};
  bool sign_match = false;
  bool monotone_ok = false;
};

// One rung of the half-line ladder:
//   m  = dual norm^2 of evaluation at 0
//   l  = length rung: the ratio of the divided-difference pairing to the
//        evaluation pairing against the last coordinate,
//        -(S0^{-1} g, e_T) / (S0^{-1} e_1, e_T),  g = (0, s_0..s_{T-2})
//   xi = dual norm^2 of the divided-difference functional, (S0^{-1} g, g)
// l's determinant form prepends a zero to the sequence and divides by the
// shift-1 block one order down:
//   l = -det [s_{i+j-1}]_{i,j=1..T} / det S1^{T-1}   (s_{-1} := 0),
// so the rung is only defined while the shift-1 block stays nonsingular.
template <class T>
struct StieltjesRow {
  int order = 0;
  T m{}, l{}, xi{};
  T ratio1{}, ratio2{};
  bool sign_match = false;
  bool monotone_ok = false;
};

template <class Row>
struct DeterminacyReport {
  std::vector<Row> rows;
  DeterminacyVerdict verdict = DeterminacyVerdict::degenerate;
  int degenerate_at = 0;  // order where the ladder stopped, 0 if it did not
  std::vector<std::string> warnings;
};

// (D^{-1} h, c) by direct solve.
template <class T>
T inverse_bilinear_form(const Matrix<T>& d, const std::vector<T>& h, const std::vector<T>& c) {
  return dot(solve_linear(d, h), c);
}

// The same value as a bordered determinant: -det [[0, c^T], [h, D]] / det D.
// (The solve lands on the column border, so h goes down the left edge.)
template <class T>
T inverse_bilinear_form_by_determinant(const Matrix<T>& d, const std::vector<T>& h,
                                       const std::vector<T>& c) {
  const std::size_t n = d.rows();
  if (h.size() != n || c.size() != n)
    raise(ErrorCode::invalid_argument, "bordered form shape mismatch");
  const T den = determinant(d);
  if (den == T(0)) raise(ErrorCode::singular_matrix, "bordered form needs nonsingular block");
  Matrix<T> bordered(n + 1, n + 1);
  for (std::size_t k = 0; k < n; ++k) {
    bordered(0, k + 1) = c[k];
    bordered(k + 1, 0) = h[k];
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) bordered(i + 1, j + 1) = d(i, j);
  return -determinant(bordered) / den;
}

// Spread a sequence onto even positions: (s_0, 0, s_1, 0, ..., s_{n-1}, 0).
// The even-order Hankel blocks of the result factor into the shift-0 and
// shift-1 blocks of the original, which transports half-line questions to
// the real line (atoms appear in plus/minus square-root pairs).
template <class T>
std::vector<T> interleave(const std::vector<T>& s) {
  if (s.empty()) raise(ErrorCode::insufficient_moments, "need at least one moment");
  std::vector<T> h(2 * s.size(), T(0));
  for (std::size_t k = 0; k < s.size(); ++k) h[2 * k] = s[k];
  return h;
}

namespace detail {

inline int env_default_threads(int requested) {
  return requested >= 1 ? requested : 1;
}

// Run fn(i) for i in [0, count) across the requested number of threads with
// a deterministic slot-per-index output contract (fn must only write state
// owned by index i).
template <class Fn>
void parallel_for_index(int count, int threads, Fn&& fn) {
  threads = std::min(env_default_threads(threads), count > 0 ? count : 1);
  if (threads <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int w = 0; w < threads; ++w)
    pool.emplace_back([count, threads, w, &fn]() {
      for (int i = w; i < count; i += threads) fn(i);
    });
  for (std::thread& t : pool) t.join();
}

template <class T>
bool same_sign(const T& a, const T& b) {
  return (a > T(0) && b > T(0)) || (a < T(0) && b < T(0)) || (a == T(0) && b == T(0));
}

// Growth of the positive sequence over its second half, relative to the
// midpoint value; conservative +inf when the midpoint vanishes.
template <class T>
double relative_growth(const std::vector<T>& v) {
  if (v.size() < 2) return std::numeric_limits<double>::infinity();
  const std::size_t mid = v.size() / 2;
  const double base = scalar_traits<T>::to_double(v[mid - 1]);
  const double last = scalar_traits<T>::to_double(v.back());
  if (!(base > 0)) return std::numeric_limits<double>::infinity();
  return (last - base) / base;
}

}  // namespace detail

template <class T>
DeterminacyReport<HamburgerRow<T>> hamburger_report(const std::vector<T>& s, int max_order,
                                                    const DeterminacyOptions& opts = {}) {
  if (max_order < 1) raise(ErrorCode::invalid_argument, "ladder order must be >= 1");
  if (s.size() < static_cast<std::size_t>(2 * max_order - 1))
    raise(ErrorCode::insufficient_moments,
          "order " + std::to_string(max_order) + " ladder needs " +
              std::to_string(2 * max_order - 1) + " moments, have " + std::to_string(s.size()));
  DeterminacyReport<HamburgerRow<T>> report;
  std::vector<HamburgerRow<T>> rows(static_cast<std::size_t>(max_order));
  std::vector<int> failed(static_cast<std::size_t>(max_order), 0);
  detail::parallel_for_index(max_order, opts.threads, [&](int idx) {
    const int order = idx + 1;
    const auto n = static_cast<std::size_t>(order);
    HamburgerRow<T>& row = rows[static_cast<std::size_t>(idx)];
    row.order = order;
    const Matrix<T> h0 = hankel_block(s, 0, order);
    LdltFactors<T> f;
    try {
      f = ldlt_factor(h0);
    } catch (const Error&) {
      failed[static_cast<std::size_t>(idx)] = 1;
      return;
    }
    std::vector<T> e1(n, T(0)), e2(n, T(0));
    e1[0] = T(1);
    row.q1 = dot(ldlt_solve(f, e1), e1);
    if (order >= 2) {
      e2[1] = T(1);
      row.q2 = dot(ldlt_solve(f, e2), e2);
    }
    const T den = determinant(h0);
    row.ratio1 = (order >= 2 ? determinant(hankel_block(s, 2, order - 1)) : T(1)) / den;
    row.ratio2 = (order >= 2 ? determinant(erase_row_col(h0, 1, 1)) : T(0)) / den;
    row.sign_match = detail::same_sign(row.q1, row.ratio1) && detail::same_sign(row.q2, row.ratio2);
  });
  int stop = max_order;
  for (int i = 0; i < max_order; ++i)
    if (failed[static_cast<std::size_t>(i)]) {
      stop = i;
      break;
    }
  rows.resize(static_cast<std::size_t>(stop));
  std::vector<T> q1s, q2s;
  for (int i = 0; i < stop; ++i) {
    HamburgerRow<T>& row = rows[static_cast<std::size_t>(i)];
    row.monotone_ok = i == 0 || (!(row.q1 < rows[static_cast<std::size_t>(i - 1)].q1) &&
                                 !(row.q2 < rows[static_cast<std::size_t>(i - 1)].q2));
    q1s.push_back(row.q1);
    q2s.push_back(row.q2);
  }
  report.rows = std::move(rows);
  if (stop < max_order) {
    report.verdict = DeterminacyVerdict::degenerate;
    report.degenerate_at = stop + 1;
    report.warnings.push_back("shift-0 block loses positive definiteness at order " +
                              std::to_string(stop + 1) +
                              "; the data admits only finitely many atoms");
    return report;
  }
  const bool bounded = detail::relative_growth(q1s) < opts.bounded_growth_rel &&
                       detail::relative_growth(q2s) < opts.bounded_growth_rel;
  report.verdict =
      bounded ? DeterminacyVerdict::bounded_trend : DeterminacyVerdict::no_indeterminacy_evidence;
  return report;
}

template <class T>
DeterminacyReport<StieltjesRow<T>> stieltjes_report(const std::vector<T>& s, int max_order,
                                                    const DeterminacyOptions& opts = {}) {
  if (max_order < 1) raise(ErrorCode::invalid_argument, "ladder order must be >= 1");
  if (s.size() < static_cast<std::size_t>(2 * max_order - 1))
    raise(ErrorCode::insufficient_moments,
          "order " + std::to_string(max_order) + " ladder needs " +
              std::to_string(2 * max_order - 1) + " moments, have " + std::to_string(s.size()));
  DeterminacyReport<StieltjesRow<T>> report;
  std::vector<StieltjesRow<T>> rows(static_cast<std::size_t>(max_order));
  std::vector<int> failed(static_cast<std::size_t>(max_order), 0);
  detail::parallel_for_index(max_order, opts.threads, [&](int idx) {
    const int order = idx + 1;
    const auto n = static_cast<std::size_t>(order);
    StieltjesRow<T>& row = rows[static_cast<std::size_t>(idx)];
    row.order = order;
    const Matrix<T> h0 = hankel_block(s, 0, order);
    LdltFactors<T> f;
    try {
      f = ldlt_factor(h0);
    } catch (const Error&) {
      failed[static_cast<std::size_t>(idx)] = 1;
      return;
    }
    std::vector<T> e1(n, T(0)), g(n, T(0));
    e1[0] = T(1);
    for (std::size_t k = 1; k < n; ++k) g[k] = s[k - 1];
    const std::vector<T> se1 = ldlt_solve(f, e1);
    const std::vector<T> sg = ldlt_solve(f, g);
    row.m = dot(se1, e1);
    row.xi = dot(sg, g);
    const T den = determinant(h0);
    row.ratio1 = (order >= 2 ? determinant(hankel_block(s, 2, order - 1)) : T(1)) / den;
    if (order == 1) {
      row.l = T(0);
      row.ratio2 = T(0);
    } else {
      const T shifted = determinant(hankel_block(s, 1, order - 1));
      if (shifted == T(0) || se1[n - 1] == T(0)) {
        failed[static_cast<std::size_t>(idx)] = 2;
        return;
      }
      row.l = -sg[n - 1] / se1[n - 1];
      std::vector<T> prepended(s.begin(), s.begin() + (2 * order - 2));
      prepended.insert(prepended.begin(), T(0));
      row.ratio2 = -determinant(hankel_block(prepended, 0, order)) / shifted;
    }
    row.sign_match = detail::same_sign(row.m, row.ratio1) && detail::same_sign(row.l, row.ratio2);
  });
  int stop = max_order;
  for (int i = 0; i < max_order; ++i)
    if (failed[static_cast<std::size_t>(i)]) {
      stop = i;
      break;
    }
  rows.resize(static_cast<std::size_t>(stop));
  std::vector<T> ms, ls;
  for (int i = 0; i < stop; ++i) {
    StieltjesRow<T>& row = rows[static_cast<std::size_t>(i)];
    row.monotone_ok = i == 0 || (!(row.m < rows[static_cast<std::size_t>(i - 1)].m) &&
                                 !(row.l < rows[static_cast<std::size_t>(i - 1)].l) &&
                                 !(row.xi < rows[static_cast<std::size_t>(i - 1)].xi));
    ms.push_back(row.m);
    ls.push_back(row.l);
  }
  report.rows = std::move(rows);
  if (stop < max_order) {
    report.verdict = DeterminacyVerdict::degenerate;
    report.degenerate_at = stop + 1;
    report.warnings.push_back(
        failed[static_cast<std::size_t>(stop)] == 2
            ? "shift-1 block is singular at order " + std::to_string(stop + 1) +
                  "; the half-line ladder stops"
            : "shift-0 block loses positive definiteness at order " + std::to_string(stop + 1) +
                  "; the data admits only finitely many atoms");
    return report;
  }
  const bool bounded = detail::relative_growth(ms) < opts.bounded_growth_rel &&
                       detail::relative_growth(ls) < opts.bounded_growth_rel;
  report.verdict =
      bounded ? DeterminacyVerdict::bounded_trend : DeterminacyVerdict::no_indeterminacy_evidence;
  return report;
}

}  // namespace momentbc

#endif  // MOMENTBC_DETERMINACY_HPP
