#pragma once

// Brute-force reference computations used only by the tests. None of these
// call the simplex code; they enumerate supports and solve square systems.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "uemb/vector.hpp"

namespace uemb::oracle {

/// Calls fn(subset) for every subset of {0..n-1} with size <= max_size.
inline void for_each_subset(std::size_t n, std::size_t max_size,
                            const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    fn(cur);
    if (cur.size() == max_size) return;
    for (std::size_t i = start; i < n; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

/// Unique solution y of  sum_j y_j cols[j] = rhs  when the columns are
/// linearly independent and the system is consistent.
template <class T>
std::optional<Vec<T>> solve_columns(const std::vector<Vec<T>>& cols, const Vec<T>& rhs) {
  const std::size_t m = rhs.size();
  const std::size_t s = cols.size();
  if (s == 0) {
    if (is_zero_vector(rhs)) return Vec<T>{};
    return std::nullopt;
  }
  // Augmented row-echelon form of [cols | rhs].
  Matrix<T> a(m, Vec<T>(s + 1, T(0)));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < s; ++j) a[i][j] = cols[j][i];
    a[i][s] = rhs[i];
  }
  std::size_t r = 0;
  std::vector<std::size_t> pivcol;
  for (std::size_t c = 0; c < s; ++c) {
    std::size_t p = r;
    while (p < m && is_zero(a[p][c])) ++p;
    if (p == m) return std::nullopt;  // dependent columns
    std::swap(a[p], a[r]);
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || is_zero(a[i][c])) continue;
      const T f = a[i][c] / a[r][c];
      for (std::size_t k = c; k <= s; ++k) a[i][k] -= f * a[r][k];
    }
    pivcol.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < m; ++i)
    if (!is_zero(a[i][s])) return std::nullopt;  // inconsistent
  Vec<T> y(s);
  for (std::size_t i = 0; i < s; ++i) y[i] = a[i][s] / a[i][i];
  return y;
}

/// Vertices of {x >= 0 : A x = b} (basic feasible solutions), deduplicated.
template <class T>
std::vector<Vec<T>> feasible_vertices(const Matrix<T>& a, const Vec<T>& b) {
  const std::size_t n = a.empty() ? 0 : a.front().size();
  std::vector<Vec<T>> out;
  for_each_subset(n, a.size(), [&](const std::vector<std::size_t>& cols) {
    std::vector<Vec<T>> c;
    for (auto j : cols) {
      Vec<T> col;
      for (const auto& row : a) col.push_back(row[j]);
      c.push_back(col);
    }
    const auto y = solve_columns(c, b);
    if (!y) return;
    Vec<T> x(n, T(0));
    for (std::size_t i = 0; i < cols.size(); ++i) {
      if (sign((*y)[i]) <= 0) return;  // support must be exactly `cols`
      x[cols[i]] = (*y)[i];
    }
    if (find_point(out, x) == npos) out.push_back(x);
  });
  return out;
}

/// Vertices of the optimal face of  min c x, A x = b, x >= 0  (bounded problems).
template <class T>
std::vector<Vec<T>> optimal_vertices(const Vec<T>& c, const Matrix<T>& a, const Vec<T>& b) {
  const auto verts = feasible_vertices(a, b);
  if (verts.empty()) return {};
  T best = dot(c, verts.front());
  for (const auto& v : verts) best = std::min<T>(best, dot(c, v));
  std::vector<Vec<T>> out;
  for (const auto& v : verts)
    if (same(dot(c, v), best)) out.push_back(v);
  return out;
}

/// Vertices of B_X = {x : <x, e> <= 1 for all e}: intersections of d
/// hyperplanes that satisfy every inequality.
template <class T>
std::vector<Vec<T>> primal_ball_vertices(const std::vector<Vec<T>>& dual_extremes) {
  const std::size_t d = dual_extremes.front().size();
  std::vector<Vec<T>> out;
  for_each_subset(dual_extremes.size(), d, [&](const std::vector<std::size_t>& pick) {
    if (pick.size() != d) return;
    Matrix<T> m;
    for (auto k : pick) m.push_back(dual_extremes[k]);
    const auto x = solve_square(m, Vec<T>(d, T(1)));
    if (x.empty()) return;
    for (const auto& e : dual_extremes)
      if (sign(T(dot(x, e) - T(1))) > 0) return;
    if (find_point(out, x) == npos) out.push_back(x);
  });
  return out;
}

/// ||x*|| as the maximum of <x, x*> over the vertices of B_X.
template <class T>
T dual_norm(const std::vector<Vec<T>>& dual_extremes, const Vec<T>& xstar) {
  const auto verts = primal_ball_vertices(dual_extremes);
  T best = dot(verts.front(), xstar);
  for (const auto& v : verts) best = std::max<T>(best, dot(v, xstar));
  return best;
}

/// Vertices of the Hahn-Banach set {mu : sum mu_k rows_k = x*, sum |mu_k| = ||x*||},
/// enumerated over signed supports of size <= dim + 1.
template <class T>
std::vector<Vec<T>> hb_vertices(const std::vector<Vec<T>>& rows, const Vec<T>& xstar,
                                 const T& norm) {
  const std::size_t k = rows.size();
  const std::size_t d = xstar.size();
  Vec<T> rhs(xstar);
  rhs.push_back(norm);
  std::vector<Vec<T>> out;
  for_each_subset(k, d + 1, [&](const std::vector<std::size_t>& supp) {
    for (std::size_t mask = 0; mask < (std::size_t{1} << supp.size()); ++mask) {
      std::vector<Vec<T>> cols;
      for (std::size_t i = 0; i < supp.size(); ++i) {
        const T s = (mask >> i) & 1 ? T(-1) : T(1);
        Vec<T> c = scaled(rows[supp[i]], s);
        c.push_back(T(1));
        cols.push_back(c);
      }
      const auto y = solve_columns(cols, rhs);
      if (!y) continue;
      Vec<T> mu(k, T(0));
      bool ok = true;
      for (std::size_t i = 0; i < supp.size(); ++i) {
        if (sign((*y)[i]) <= 0) {
          ok = false;
          break;
        }
        mu[supp[i]] = (mask >> i) & 1 ? T(-(*y)[i]) : (*y)[i];
      }
      if (ok && find_point(out, mu) == npos) out.push_back(mu);
    }
  });
  return out;
}

/// Carathéodory test: p is in conv(others) iff it is a convex combination of
/// some affinely independent subset of at most d+1 of them.
template <class T>
bool in_hull_caratheodory(const Vec<T>& p, const std::vector<Vec<T>>& others) {
  const std::size_t d = p.size();
  bool found = false;
  Vec<T> rhs(p);
  rhs.push_back(T(1));
  for_each_subset(others.size(), d + 1, [&](const std::vector<std::size_t>& pick) {
    if (found || pick.empty()) return;
    std::vector<Vec<T>> cols;
    for (auto j : pick) {
      Vec<T> c(others[j]);
      c.push_back(T(1));
      cols.push_back(c);
    }
    const auto y = solve_columns(cols, rhs);
    if (!y) return;
    for (const auto& w : *y)
      if (sign(w) < 0) return;
    found = true;
  });
  return found;
}

}  // namespace uemb::oracle
