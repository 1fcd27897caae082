#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "uemb/hull.hpp"
#include "uemb/lp.hpp"
#include "uemb/vector.hpp"

namespace uemb {

/// A face F(x) = {x* in S_{X*} : <x, x*> = 1} of the dual unit ball, stored by
/// its supporting unit vector and the dual extreme points lying on it.
template <class T>
using Face = FaceDescriptor<T>;

template <class T>
class PolyhedralSpace;

template <class T>
PolyhedralSpace<T> make_space(const std::vector<Vec<T>>& points, std::string name,
                              bool allow_symmetrize = false);

/// Finite-dimensional normed space whose dual unit ball is the polytope
/// conv(dual_extremes). The norm is ||x|| = max_e |<x, e>|.
///
/// Instances are canonical: the extreme set is antipodally symmetric, minimal
/// (every point is a vertex), lexicographically sorted, and spans the space.
template <class T>
class PolyhedralSpace {
 public:
  using scalar_type = T;

  const std::string& name() const { return name_; }
  std::size_t dim() const { return dim_; }
  const std::vector<Vec<T>>& dual_extremes() const { return extremes_; }
  const Vec<T>& extreme(std::size_t i) const { return extremes_.at(i); }
  std::size_t num_extremes() const { return extremes_.size(); }

  /// Index of -e_i.
  std::size_t antipode(std::size_t i) const { return antipode_.at(i); }

  /// All proper faces of the dual ball, facets first.
  const std::vector<Face<T>>& faces() const { return faces_; }

  std::vector<Face<T>> facets() const {
    std::vector<Face<T>> out;
    for (const auto& f : faces_)
      if (f.affine_dim + 1 == dim_) out.push_back(f);
    return out;
  }

  std::vector<Vec<T>> points(const std::vector<std::size_t>& idx) const {
    std::vector<Vec<T>> out;
    for (auto i : idx) out.push_back(extremes_.at(i));
    return out;
  }

  template <class U>
  friend PolyhedralSpace<U> make_space(const std::vector<Vec<U>>&, std::string, bool);

 private:
  PolyhedralSpace() = default;

  std::string name_;
  std::size_t dim_ = 0;
  std::vector<Vec<T>> extremes_;
  std::vector<std::size_t> antipode_;
  std::vector<Face<T>> faces_;
};

/// Builds a canonical polyhedral space from dual points.
///
/// Asymmetric input is rejected unless `allow_symmetrize`, in which case the
/// missing antipodes are added. Non-extreme points are dropped.
template <class T>
PolyhedralSpace<T> make_space(const std::vector<Vec<T>>& points, std::string name,
                              bool allow_symmetrize) {
  detail::require_common_dim(points, "make_space");
  std::vector<Vec<T>> pts;
  for (const auto& p : points) {
    if (is_zero_vector(p)) continue;
    if (find_point(pts, p) == npos) pts.push_back(p);
  }
  if (pts.empty()) throw NotANormError("make_space: all points are zero");
  const std::size_t n0 = pts.size();
  for (std::size_t i = 0; i < n0; ++i) {
    const Vec<T> neg = -pts[i];
    if (find_point(pts, neg) != npos) continue;
    if (!allow_symmetrize)
      throw ValidationError("make_space: point " + format_vector(pts[i]) +
                            " has no antipode (set allow_symmetrize to add it)");
    pts.push_back(neg);
  }
  const std::size_t d = pts.front().size();
  if (rank(Matrix<T>(pts)) < d)
    throw NotANormError("make_space: dual points span a proper subspace; not a norm");

  PolyhedralSpace<T> s;
  s.name_ = std::move(name);
  s.dim_ = d;
  s.extremes_ = reduce_to_vertices(pts);
  for (std::size_t i = 0; i < s.extremes_.size(); ++i) {
    const auto j = find_point(s.extremes_, Vec<T>(-s.extremes_[i]));
    if (j == npos) throw InternalConsistencyError("make_space: vertex set lost symmetry");
    s.antipode_.push_back(j);
  }
  s.faces_ = enumerate_faces(s.extremes_);
  return s;
}

/// ell_infinity^n: dual extremes +-e_i. This is C(K) for a K with n points.
template <class T>
PolyhedralSpace<T> make_linf_space(std::size_t n) {
  std::vector<Vec<T>> pts;
  for (std::size_t i = 0; i < n; ++i) {
    Vec<T> e(n, T(0));
    e[i] = 1;
    pts.push_back(e);
    pts.push_back(-e);
  }
  return make_space(pts, "linf" + std::to_string(n));
}

/// ell_1^n: dual extremes are all sign vectors.
template <class T>
PolyhedralSpace<T> make_l1_space(std::size_t n) {
  std::vector<Vec<T>> pts;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Vec<T> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = (mask >> i) & 1 ? T(1) : T(-1);
    pts.push_back(v);
  }
  return make_space(pts, "l1_" + std::to_string(n));
}

/// The Euclidean plane. Every unit functional is extreme, so the extreme
/// part of the dual sphere is the whole circle.
struct SmoothSpace2D {
  std::string name = "euclidean2d";
  static constexpr std::size_t dim = 2;

  static double norm(const Vec<double>& x) {
    if (x.size() != 2) throw InputError("euclidean2d: dimension mismatch");
    return std::hypot(x[0], x[1]);
  }
};

using AnySpace = std::variant<PolyhedralSpace<Rat>, PolyhedralSpace<double>, SmoothSpace2D>;

template <class T>
T norm(const PolyhedralSpace<T>& space, const Vec<T>& x) {
  if (x.size() != space.dim())
    throw InputError("norm: dimension mismatch (" + std::to_string(x.size()) + " vs " +
                     std::to_string(space.dim()) + ")");
  T best = 0;
  for (const auto& e : space.dual_extremes()) {
    const T v = abs_value(dot(x, e));
    if (v > best) best = v;
  }
  return best;
}

/// Dual norm ||x*|| = max{<x, x*> : ||x|| <= 1}, solved over the primal ball.
template <class T>
T dual_norm(const PolyhedralSpace<T>& space, const Vec<T>& xstar) {
  if (xstar.size() != space.dim()) throw InputError("dual_norm: dimension mismatch");
  const std::size_t d = space.dim();
  const std::size_t m = space.num_extremes();
  LPProblem<T> lp;
  lp.sense = Sense::maximize;
  lp.objective.assign(d + m, T(0));
  for (std::size_t i = 0; i < d; ++i) lp.objective[i] = xstar[i];
  lp.bounds.assign(d + m, Bound<T>::nonnegative());
  for (std::size_t i = 0; i < d; ++i) lp.bounds[i] = Bound<T>::free();
  for (std::size_t k = 0; k < m; ++k) {
    Vec<T> row(d + m, T(0));
    for (std::size_t i = 0; i < d; ++i) row[i] = space.extreme(k)[i];
    row[d + k] = 1;
    lp.eq_matrix.push_back(std::move(row));
    lp.eq_rhs.push_back(T(1));
  }
  const auto sol = solve_lp(lp);
  if (!sol.optimal()) throw InternalConsistencyError("dual_norm: primal ball LP not optimal");
  return sol.value;
}

/// The face F(x) of the dual ball determined by a unit vector x.
template <class T>
Face<T> face_of(const PolyhedralSpace<T>& space, const Vec<T>& x) {
  const T nx = norm(space, x);
  if (!same(nx, T(1)))
    throw PreconditionError("face_of: ||x|| = " + format_scalar(nx) + ", expected 1");
  Face<T> f;
  f.support = x;
  for (std::size_t k = 0; k < space.num_extremes(); ++k)
    if (same(dot(x, space.extreme(k)), T(1))) f.indices.push_back(k);
  f.affine_dim = affine_dimension(space.points(f.indices));
  return f;
}

/// n such that x is a point of n-almost Gateaux smoothness; 0 means smooth at x.
template <class T>
std::size_t almost_gateaux_order(const PolyhedralSpace<T>& space, const Vec<T>& x) {
  return face_of(space, x).affine_dim;
}

template <class T>
struct SmoothnessVerdict {
  bool smooth = false;
  /// A unit vector whose face has positive dimension.
  std::optional<Vec<T>> witness;
};

template <class T>
SmoothnessVerdict<T> is_gateaux_smooth(const PolyhedralSpace<T>& space) {
  SmoothnessVerdict<T> v;
  if (space.dim() == 1) {
    v.smooth = true;
    return v;
  }
  // Supporting vector of a facet; the lexicographically largest for stability.
  for (const auto& f : space.facets())
    if (!v.witness || lex_less(*v.witness, f.support)) v.witness = f.support;
  return v;
}

inline SmoothnessVerdict<double> is_gateaux_smooth(const SmoothSpace2D&) { return {true, {}}; }

template <class T>
struct SimplexoidVerdict {
  bool simplexoid = true;
  std::optional<Face<T>> offending;
};

/// A polytope is a simplexoid iff every facet is a simplex (faces of a
/// simplex are simplices, so lower faces need no separate check). Closedness
/// of extreme sets, the Bauer part, is automatic for finite sets.
template <class T>
SimplexoidVerdict<T> is_simplexoid(const PolyhedralSpace<T>& space) {
  SimplexoidVerdict<T> v;
  for (const auto& f : space.facets()) {
    if (!is_affinely_independent(space.points(f.indices))) {
      v.simplexoid = false;
      v.offending = f;
      return v;
    }
  }
  return v;
}

/// Connectedness of Ext B_{X*} in the norm topology. A finite set with at
/// least two points is disconnected.
template <class T>
bool extreme_sphere_connected(const PolyhedralSpace<T>& space) {
  return space.num_extremes() < 2;
}

inline bool extreme_sphere_connected(const SmoothSpace2D&) { return true; }

}  // namespace uemb
