#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "uemb/scalar.hpp"
#include "uemb/vector.hpp"

namespace uemb {

enum class Sense { minimize, maximize };
enum class LPStatus { optimal, infeasible, unbounded };

inline const char* to_string(LPStatus s) {
  switch (s) {
    case LPStatus::optimal: return "optimal";
    case LPStatus::infeasible: return "infeasible";
    case LPStatus::unbounded: return "unbounded";
  }
  return "?";
}

/// Per-variable box; a missing side is unbounded.
template <class T>
struct Bound {
  std::optional<T> lower = T(0);
  std::optional<T> upper;

  static Bound nonnegative() { return {}; }
  static Bound free() { return {std::nullopt, std::nullopt}; }
  static Bound between(T lo, T hi) { return {std::move(lo), std::move(hi)}; }
};

/// optimize objective·x  s.t.  eq_matrix·x = eq_rhs,  bounds.
///
/// An empty `bounds` means every variable is nonnegative.
template <class T>
struct LPProblem {
  Vec<T> objective;
  Matrix<T> eq_matrix;
  Vec<T> eq_rhs;
  std::vector<Bound<T>> bounds;
  Sense sense = Sense::minimize;

  std::size_t num_vars() const { return objective.size(); }

  const Bound<T>& bound(std::size_t j) const {
    static const Bound<T> kDefault{};
    return bounds.empty() ? kDefault : bounds[j];
  }

  void validate() const {
    if (eq_matrix.size() != eq_rhs.size())
      throw InputError("LP: rhs length " + std::to_string(eq_rhs.size()) + " != row count " +
                       std::to_string(eq_matrix.size()));
    for (const auto& row : eq_matrix)
      if (row.size() != num_vars())
        throw InputError("LP: row length " + std::to_string(row.size()) +
                         " != variable count " + std::to_string(num_vars()));
    if (!bounds.empty() && bounds.size() != num_vars())
      throw InputError("LP: bounds length != variable count");
  }
};

template <class T>
struct LPSolution {
  LPStatus status = LPStatus::infeasible;
  T value = 0;
  Vec<T> point;
  /// Original variables whose column is basic at the returned vertex.
  std::vector<std::size_t> basis;

  bool optimal() const { return status == LPStatus::optimal; }
};

namespace detail {

/// Column of the standard form  min c·y, A y = b, 0 <= y <= ub.
template <class T>
struct Column {
  std::size_t var;  // original variable
  int coef;         // +1: x = offset + y,  -1: x = offset - y
};

/// Bounded-variable primal simplex on a dense tableau with Bland's rule.
template <class T>
class BoundedSimplex {
 public:
  BoundedSimplex(Matrix<T> a, Vec<T> b, std::vector<std::optional<T>> ub)
      : rows_(a.size()), structural_(ub.size()), ub_(std::move(ub)) {
    // Rows are sign-normalised so the all-artificial start is feasible.
    tab_.assign(rows_, Vec<T>(structural_ + rows_, T(0)));
    xb_.assign(rows_, T(0));
    basis_.resize(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      const bool flip = sign(b[i]) < 0;
      for (std::size_t j = 0; j < structural_; ++j) tab_[i][j] = flip ? T(-a[i][j]) : a[i][j];
      tab_[i][structural_ + i] = 1;
      xb_[i] = flip ? T(-b[i]) : b[i];
      basis_[i] = structural_ + i;
    }
    ub_.resize(structural_ + rows_);
    at_upper_.assign(structural_ + rows_, false);
    allowed_.assign(structural_ + rows_, true);
  }

  /// Runs both phases; returns the status of the structural problem.
  LPStatus run(const Vec<T>& cost) {
    Vec<T> phase1(structural_ + rows_, T(0));
    for (std::size_t i = 0; i < rows_; ++i) phase1[structural_ + i] = 1;
    iterate(phase1);
    T infeas = 0;
    for (std::size_t i = 0; i < rows_; ++i)
      if (basis_[i] >= structural_) infeas += xb_[i];
    if (sign(infeas) > 0) return LPStatus::infeasible;
    drive_out_artificials();
    for (std::size_t j = structural_; j < allowed_.size(); ++j) allowed_[j] = false;

    Vec<T> phase2(cost);
    phase2.resize(structural_ + rows_, T(0));
    return iterate(phase2) ? LPStatus::optimal : LPStatus::unbounded;
  }

  T value_of(std::size_t j) const {
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (basis_[i] == j) return xb_[i];
    return at_upper_[j] ? *ub_[j] : T(0);
  }

  std::vector<std::size_t> basic_structurals() const {
    std::vector<std::size_t> out;
    for (auto j : basis_)
      if (j < structural_) out.push_back(j);
    return out;
  }

 private:
  // Returns false on unboundedness.
  bool iterate(const Vec<T>& cost) {
    const std::size_t cols = structural_ + rows_;
    std::vector<bool> is_basic(cols, false);
    for (;;) {
      std::fill(is_basic.begin(), is_basic.end(), false);
      for (auto j : basis_) is_basic[j] = true;

      std::size_t entering = npos;
      int dir = 0;
      for (std::size_t j = 0; j < cols && entering == npos; ++j) {
        if (is_basic[j] || !allowed_[j]) continue;
        if (ub_[j] && is_zero(*ub_[j])) continue;  // fixed column
        T d = cost[j];
        for (std::size_t i = 0; i < basis_.size(); ++i)
          if (!is_zero(tab_[i][j])) d -= cost[basis_[i]] * tab_[i][j];
        const int s = sign(d);
        if (!at_upper_[j] && s < 0) {
          entering = j;
          dir = 1;
        } else if (at_upper_[j] && s > 0) {
          entering = j;
          dir = -1;
        }
      }
      if (entering == npos) return true;

      std::optional<T> best;
      std::size_t leave_row = npos;
      bool leave_to_upper = false;
      for (std::size_t i = 0; i < basis_.size(); ++i) {
        const T alpha = dir > 0 ? tab_[i][entering] : T(-tab_[i][entering]);
        const int s = sign(alpha);
        if (s == 0) continue;
        T ratio;
        bool to_upper = false;
        if (s > 0) {
          ratio = xb_[i] / alpha;
        } else {
          const auto& u = ub_[basis_[i]];
          if (!u) continue;
          ratio = (*u - xb_[i]) / T(-alpha);
          to_upper = true;
        }
        if (sign(ratio) < 0) ratio = 0;
        const int cmp = best ? sign(T(ratio - *best)) : -1;
        if (cmp < 0 || (cmp == 0 && basis_[i] < basis_[leave_row])) {
          best = ratio;
          leave_row = i;
          leave_to_upper = to_upper;
        }
      }
      const auto& range = ub_[entering];
      if (range && (!best || sign(T(*range - *best)) <= 0)) {
        // Bound flip: the entering column runs to its opposite bound.
        const T theta = *range;
        for (std::size_t i = 0; i < basis_.size(); ++i) {
          const T alpha = dir > 0 ? tab_[i][entering] : T(-tab_[i][entering]);
          if (!is_zero(alpha)) xb_[i] -= theta * alpha;
        }
        at_upper_[entering] = !at_upper_[entering];
        continue;
      }
      if (!best) return false;

      const T theta = *best;
      for (std::size_t i = 0; i < basis_.size(); ++i) {
        const T alpha = dir > 0 ? tab_[i][entering] : T(-tab_[i][entering]);
        if (!is_zero(alpha)) xb_[i] -= theta * alpha;
      }
      const T entering_value = (at_upper_[entering] ? *ub_[entering] : T(0)) + T(dir) * theta;
      const std::size_t leaving = basis_[leave_row];
      at_upper_[leaving] = leave_to_upper;
      pivot(leave_row, entering);
      xb_[leave_row] = entering_value;
      at_upper_[entering] = false;
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    const T p = tab_[r][c];
    for (auto& v : tab_[r]) v /= p;
    for (std::size_t i = 0; i < tab_.size(); ++i) {
      if (i == r || is_zero(tab_[i][c])) continue;
      const T f = tab_[i][c];
      for (std::size_t k = 0; k < tab_[i].size(); ++k)
        if (!is_zero(tab_[r][k])) tab_[i][k] -= f * tab_[r][k];
      tab_[i][c] = 0;
    }
    tab_[r][c] = 1;
    basis_[r] = c;
  }

  void drive_out_artificials() {
    for (std::size_t r = 0; r < basis_.size();) {
      if (basis_[r] < structural_) {
        ++r;
        continue;
      }
      std::size_t col = npos;
      for (std::size_t j = 0; j < structural_; ++j) {
        if (std::find(basis_.begin(), basis_.end(), j) != basis_.end()) continue;
        if (!is_zero(tab_[r][j])) {
          col = j;
          break;
        }
      }
      if (col == npos) {
        // Redundant equality.
        tab_.erase(tab_.begin() + static_cast<std::ptrdiff_t>(r));
        xb_.erase(xb_.begin() + static_cast<std::ptrdiff_t>(r));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
        continue;
      }
      const T current = at_upper_[col] ? *ub_[col] : T(0);
      pivot(r, col);
      xb_[r] = current;
      at_upper_[col] = false;
      ++r;
    }
  }

  std::size_t rows_;
  std::size_t structural_;
  Matrix<T> tab_;
  Vec<T> xb_;
  std::vector<std::size_t> basis_;
  std::vector<std::optional<T>> ub_;
  std::vector<bool> at_upper_;
  std::vector<bool> allowed_;
};

}  // namespace detail

/// Exact two-phase simplex with Bland's rule. Never throws on infeasible or
/// unbounded problems; those are reported in `status`.
template <class T>
LPSolution<T> solve_lp(const LPProblem<T>& problem) {
  problem.validate();
  const std::size_t n = problem.num_vars();
  const std::size_t m = problem.eq_matrix.size();
  const T sense_sign = problem.sense == Sense::minimize ? T(1) : T(-1);

  std::vector<detail::Column<T>> columns;
  std::vector<std::optional<T>> ub;
  Vec<T> cost;
  Vec<T> offset(n, T(0));
  LPSolution<T> result;

  for (std::size_t j = 0; j < n; ++j) {
    const auto& bd = problem.bound(j);
    if (bd.lower && bd.upper) {
      if (sign(T(*bd.upper - *bd.lower)) < 0) return result;  // empty box
      offset[j] = *bd.lower;
      columns.push_back({j, 1});
      ub.emplace_back(T(*bd.upper - *bd.lower));
    } else if (bd.lower) {
      offset[j] = *bd.lower;
      columns.push_back({j, 1});
      ub.emplace_back();
    } else if (bd.upper) {
      offset[j] = *bd.upper;
      columns.push_back({j, -1});
      ub.emplace_back();
    } else {
      columns.push_back({j, 1});
      ub.emplace_back();
      columns.push_back({j, -1});
      ub.emplace_back();
    }
  }
  for (const auto& col : columns) cost.push_back(T(col.coef) * sense_sign * problem.objective[col.var]);

  Matrix<T> a(m, Vec<T>(columns.size(), T(0)));
  Vec<T> b(problem.eq_rhs);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < columns.size(); ++k)
      a[i][k] = T(columns[k].coef) * problem.eq_matrix[i][columns[k].var];
    for (std::size_t j = 0; j < n; ++j)
      if (!is_zero(offset[j])) b[i] -= problem.eq_matrix[i][j] * offset[j];
  }

  detail::BoundedSimplex<T> simplex(std::move(a), std::move(b), ub);
  result.status = simplex.run(cost);
  if (!result.optimal()) return result;

  result.point = offset;
  for (std::size_t k = 0; k < columns.size(); ++k) {
    const T y = simplex.value_of(k);
    if (!is_zero(y)) result.point[columns[k].var] += T(columns[k].coef) * y;
  }
  if constexpr (!scalar_traits<T>::exact) {
    for (auto& c : result.point)
      if (is_zero(c)) c = 0;
  }
  for (auto k : simplex.basic_structurals()) result.basis.push_back(columns[k].var);
  std::sort(result.basis.begin(), result.basis.end());
  result.basis.erase(std::unique(result.basis.begin(), result.basis.end()), result.basis.end());
  result.value = dot(problem.objective, result.point);
  return result;
}

template <class T>
struct SingletonCheck {
  bool singleton = false;
  /// An optimal point (the LP's basic optimum).
  Vec<T> point;
  /// Two distinct optimal points when the optimal face is not a singleton.
  std::optional<std::pair<Vec<T>, Vec<T>>> witnesses;
};

/// Decides whether the optimal face of `problem` is a single point.
///
/// The optimal value is pinned as an extra equality and every coordinate is
/// minimised and maximised over the resulting face.
template <class T>
SingletonCheck<T> optimal_face_is_singleton(const LPProblem<T>& problem) {
  const auto base = solve_lp(problem);
  if (!base.optimal())
    throw PreconditionError(std::string("optimal_face_is_singleton: LP is ") +
                            to_string(base.status));
  SingletonCheck<T> out;
  out.point = base.point;

  LPProblem<T> face = problem;
  face.eq_matrix.push_back(problem.objective);
  face.eq_rhs.push_back(base.value);

  for (std::size_t i = 0; i < problem.num_vars(); ++i) {
    face.objective.assign(problem.num_vars(), T(0));
    face.objective[i] = 1;
    face.sense = Sense::minimize;
    const auto lo = solve_lp(face);
    face.sense = Sense::maximize;
    const auto hi = solve_lp(face);
    if (!lo.optimal() || !hi.optimal())
      throw InternalConsistencyError("optimal face re-solve did not reach an optimum");
    if (sign(T(hi.value - lo.value)) != 0) {
      out.witnesses = std::make_pair(lo.point, hi.point);
      return out;
    }
  }
  out.singleton = true;
  return out;
}

}  // namespace uemb
