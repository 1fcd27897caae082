#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <vector>

#include "uemb/lp.hpp"
#include "uemb/vector.hpp"

namespace uemb {

namespace detail {

template <class T>
void require_common_dim(const std::vector<Vec<T>>& points, const char* what) {
  if (points.empty()) throw InputError(std::string(what) + ": empty point list");
  const std::size_t d = points.front().size();
  if (d == 0) throw InputError(std::string(what) + ": zero-dimensional points");
  for (const auto& p : points)
    if (p.size() != d)
      throw InputError(std::string(what) + ": dimension mismatch (" + std::to_string(p.size()) +
                       " vs " + std::to_string(d) + ")");
}

/// Is p a convex combination of `others`? Decided by LP feasibility.
template <class T>
bool in_convex_hull(const Vec<T>& p, const std::vector<Vec<T>>& others) {
  if (others.empty()) return false;
  const std::size_t d = p.size();
  LPProblem<T> lp;
  lp.objective.assign(others.size(), T(0));
  lp.eq_matrix.assign(d + 1, Vec<T>(others.size(), T(0)));
  for (std::size_t k = 0; k < others.size(); ++k) {
    for (std::size_t i = 0; i < d; ++i) lp.eq_matrix[i][k] = others[k][i];
    lp.eq_matrix[d][k] = 1;
  }
  lp.eq_rhs = p;
  lp.eq_rhs.push_back(T(1));
  return solve_lp(lp).optimal();
}

}  // namespace detail

/// Extreme points of conv(points), deduplicated and sorted lexicographically.
template <class T>
std::vector<Vec<T>> reduce_to_vertices(const std::vector<Vec<T>>& points) {
  detail::require_common_dim(points, "reduce_to_vertices");
  std::vector<Vec<T>> unique;
  for (const auto& p : points)
    if (find_point(unique, p) == npos) unique.push_back(p);
  std::sort(unique.begin(), unique.end(), lex_less<T>);

  std::vector<Vec<T>> kept;
  for (std::size_t i = 0; i < unique.size(); ++i) {
    std::vector<Vec<T>> others;
    others.reserve(unique.size() - 1);
    for (std::size_t j = 0; j < unique.size(); ++j)
      if (j != i) others.push_back(unique[j]);
    if (!detail::in_convex_hull(unique[i], others)) kept.push_back(unique[i]);
  }
  return kept;
}

/// True iff the differences from the first point are linearly independent.
template <class T>
bool is_affinely_independent(const std::vector<Vec<T>>& points) {
  detail::require_common_dim(points, "is_affinely_independent");
  Matrix<T> diffs;
  for (std::size_t i = 1; i < points.size(); ++i) diffs.push_back(points[i] - points[0]);
  if (diffs.size() > points.front().size()) return false;
  return rank(diffs) == diffs.size();
}

/// Affine dimension of a nonempty point set.
template <class T>
std::size_t affine_dimension(const std::vector<Vec<T>>& points) {
  detail::require_common_dim(points, "affine_dimension");
  Matrix<T> diffs;
  for (std::size_t i = 1; i < points.size(); ++i) diffs.push_back(points[i] - points[0]);
  return rank(diffs);
}

/// A proper face of a polytope with 0 in its interior: {v : <z, v> = 1}, with
/// max_v <z, v> = 1.
template <class T>
struct FaceDescriptor {
  Vec<T> support;                   ///< primal vector z
  std::vector<std::size_t> indices; ///< vertices on the face, ascending
  std::size_t affine_dim = 0;
};

/// True iff 0 lies in the interior of conv(points), assuming the hull is full-dimensional.
///
/// Solved as: maximise t subject to sum lambda_v v = 0, sum lambda_v = 1, lambda_v >= t.
template <class T>
bool origin_is_interior(const std::vector<Vec<T>>& points) {
  const std::size_t d = points.front().size();
  const std::size_t n = points.size();
  LPProblem<T> lp;
  // variables: lambda (n), t (free), slack (n)
  const std::size_t vars = 2 * n + 1;
  lp.objective.assign(vars, T(0));
  lp.objective[n] = 1;
  lp.sense = Sense::maximize;
  lp.bounds.assign(vars, Bound<T>::nonnegative());
  lp.bounds[n] = Bound<T>::free();
  lp.bounds[n].upper = T(1);
  for (std::size_t i = 0; i < d; ++i) {
    Vec<T> row(vars, T(0));
    for (std::size_t k = 0; k < n; ++k) row[k] = points[k][i];
    lp.eq_matrix.push_back(row);
    lp.eq_rhs.push_back(T(0));
  }
  Vec<T> sum(vars, T(0));
  for (std::size_t k = 0; k < n; ++k) sum[k] = 1;
  lp.eq_matrix.push_back(sum);
  lp.eq_rhs.push_back(T(1));
  for (std::size_t k = 0; k < n; ++k) {
    Vec<T> row(vars, T(0));
    row[k] = 1;
    row[n] = -1;
    row[n + 1 + k] = -1;
    lp.eq_matrix.push_back(row);
    lp.eq_rhs.push_back(T(0));
  }
  const auto sol = solve_lp(lp);
  return sol.optimal() && sign(sol.value) > 0;
}

/// Every proper nonempty face of conv(vertices).
///
/// Facets come from d-subsets of linearly independent vertices whose
/// hyperplane <z, .> = 1 supports the polytope. Lower faces are closed under
/// intersection; each lower face is supported by the average of the facet
/// normals containing it, which makes its index set maximal. Output is sorted
/// by decreasing dimension, then by index set.
template <class T>
std::vector<FaceDescriptor<T>> enumerate_faces(const std::vector<Vec<T>>& vertices) {
  detail::require_common_dim(vertices, "enumerate_faces");
  const std::size_t d = vertices.front().size();
  if (rank(Matrix<T>(vertices)) < d || affine_dimension(vertices) < d)
    throw DegenerateInputError("enumerate_faces: polytope is not full-dimensional");
  if (!origin_is_interior(vertices))
    throw NotAUnitBallError("enumerate_faces: 0 is not an interior point of the hull");

  const std::size_t n = vertices.size();
  std::map<std::vector<std::size_t>, Vec<T>> facets;

  std::vector<std::size_t> pick(d);
  // Enumerates d-subsets in lexicographic order.
  auto visit = [&](auto&& self, std::size_t start, std::size_t depth) -> void {
    if (depth == d) {
      Matrix<T> m;
      for (auto k : pick) m.push_back(vertices[k]);
      auto z = solve_square(m, Vec<T>(d, T(1)));
      if (z.empty()) return;
      std::vector<std::size_t> on;
      for (std::size_t k = 0; k < n; ++k) {
        const int s = sign(T(dot(z, vertices[k]) - T(1)));
        if (s > 0) return;
        if (s == 0) on.push_back(k);
      }
      if (on.front() != pick.front() || facets.count(on)) return;
      Matrix<T> onpts;
      for (auto k : on) onpts.push_back(vertices[k]);
      if (affine_dimension(onpts) + 1 != d) return;
      facets.emplace(std::move(on), std::move(z));
      return;
    }
    for (std::size_t k = start; k + (d - depth) <= n; ++k) {
      pick[depth] = k;
      self(self, k + 1, depth + 1);
    }
  };
  visit(visit, 0, 0);

  std::set<std::vector<std::size_t>> all;
  for (const auto& [idx, z] : facets) all.insert(idx);
  std::vector<std::vector<std::size_t>> frontier(all.begin(), all.end());
  while (!frontier.empty()) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& a : frontier)
      for (const auto& [f, z] : facets) {
        std::vector<std::size_t> meet;
        std::set_intersection(a.begin(), a.end(), f.begin(), f.end(), std::back_inserter(meet));
        if (!meet.empty() && all.insert(meet).second) next.push_back(std::move(meet));
      }
    frontier = std::move(next);
  }

  std::vector<FaceDescriptor<T>> out;
  for (const auto& idx : all) {
    FaceDescriptor<T> face;
    face.indices = idx;
    Vec<T> z(d, T(0));
    std::size_t count = 0;
    for (const auto& [f, normal] : facets) {
      if (!std::includes(f.begin(), f.end(), idx.begin(), idx.end())) continue;
      z = z + normal;
      ++count;
    }
    face.support = scaled(z, T(T(1) / T(static_cast<long>(count))));
    Matrix<T> pts;
    for (auto k : idx) pts.push_back(vertices[k]);
    face.affine_dim = affine_dimension(pts);
    out.push_back(std::move(face));
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.affine_dim != b.affine_dim) return a.affine_dim > b.affine_dim;
    return a.indices < b.indices;
  });
  return out;
}

}  // namespace uemb
