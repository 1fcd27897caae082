#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <type_traits>
#include <string>
#include <variant>
#include <vector>

#include "uemb/hull.hpp"
#include "uemb/space.hpp"

namespace uemb {

/// Outcome of the three conditions defining a (proper) U-suitable set.
struct USuitableChecks {
  bool cond_i = false;    ///< E and -E are disjoint
  bool cond_ii = false;   ///< E and -E together cover Ext B_{X*}
  bool cond_iii = false;  ///< E meets every face only in extreme points of that face
  std::size_t faces_checked = 0;

  bool suitable() const { return cond_i && cond_ii; }
  bool proper() const { return cond_i && cond_ii && cond_iii; }
};

/// A selection E of dual extreme points, by index into the space's extreme set.
template <class T>
struct USuitableSet {
  std::vector<std::size_t> indices;
  std::optional<Vec<T>> selector;
  USuitableChecks checks;
};

/// Checks conditions (i)-(iii) for an arbitrary index set.
///
/// Condition (iii) is evaluated on every proper face F: the points of E on F
/// must coincide with the points of E among the vertices of F. Because E only
/// contains extreme points of the ball, and an extreme point of the ball lying
/// in a face is extreme in that face, (iii) always holds here; it is still
/// computed rather than assumed.
template <class T>
USuitableChecks verify_u_suitable(const PolyhedralSpace<T>& space,
                                  const std::vector<std::size_t>& indices) {
  const std::size_t m = space.num_extremes();
  std::vector<bool> in(m, false);
  for (auto k : indices) {
    if (k >= m)
      throw InputError("verify_u_suitable: index " + std::to_string(k) + " out of range (" +
                       std::to_string(m) + " extremes)");
    in[k] = true;
  }
  USuitableChecks c;
  c.cond_i = true;
  c.cond_ii = true;
  for (std::size_t k = 0; k < m; ++k) {
    if (in[k] && in[space.antipode(k)]) c.cond_i = false;
    if (!in[k] && !in[space.antipode(k)]) c.cond_ii = false;
  }

  c.cond_iii = true;
  for (const auto& face : space.faces()) {
    std::vector<std::size_t> on_face;
    for (std::size_t k = 0; k < m; ++k)
      if (in[k] && same(dot(face.support, space.extreme(k)), T(1))) on_face.push_back(k);
    std::vector<std::size_t> on_ext;
    for (const auto& v : reduce_to_vertices(space.points(face.indices))) {
      const auto k = find_point(space.dual_extremes(), v);
      if (k != npos && in[k]) on_ext.push_back(k);
    }
    std::sort(on_ext.begin(), on_ext.end());
    if (on_face != on_ext) c.cond_iii = false;
    ++c.faces_checked;
  }
  return c;
}

/// A vector z with <z, e> != 0 for every dual extreme e.
///
/// Tries z_k = (1, t, t^2, ..., t^{d-1}) with t = 1/(k+1), k = 0, 1, 2, ...
/// Each <z_k, e> is a nonzero polynomial in t of degree below d, so only
/// finitely many k can fail.
template <class T>
Vec<T> find_selector(const PolyhedralSpace<T>& space) {
  const std::size_t d = space.dim();
  for (std::int64_t k = 0;; ++k) {
    const T t = scalar_traits<T>::from_ratio(1, k + 1);
    Vec<T> z(d);
    T power = 1;
    for (std::size_t i = 0; i < d; ++i) {
      z[i] = power;
      power *= t;
    }
    const auto& ext = space.dual_extremes();
    if (std::none_of(ext.begin(), ext.end(), [&](const Vec<T>& e) { return is_zero(dot(z, e)); }))
      return z;
  }
}

/// E := {e in Ext : <z, e> > 0}, with z from find_selector when not given.
template <class T>
USuitableSet<T> build_u_suitable(const PolyhedralSpace<T>& space,
                                 std::optional<std::type_identity_t<Vec<T>>> selector = std::nullopt) {
  Vec<T> z = selector ? *selector : find_selector(space);
  if (z.size() != space.dim()) throw InputError("build_u_suitable: selector dimension mismatch");
  USuitableSet<T> out;
  for (std::size_t k = 0; k < space.num_extremes(); ++k) {
    const int s = sign(dot(z, space.extreme(k)));
    if (s == 0)
      throw SelectorError("build_u_suitable: selector " + format_vector(z) + " annihilates " +
                          format_vector(space.extreme(k)));
    if (s > 0) out.indices.push_back(k);
  }
  out.selector = std::move(z);
  out.checks = verify_u_suitable(space, out.indices);
  return out;
}

struct ObstructionReport {
  std::string space;
  std::string obstruction;
  std::string explanation;
  bool u_embeddable = true;
};

/// The Euclidean plane admits no U-suitable set: its extreme dual sphere is
/// the whole circle, which is connected, while (i) and (ii) would split it
/// into two disjoint nonempty closed pieces E and -E.
inline ObstructionReport prove_no_u_suitable(const SmoothSpace2D& space) {
  ObstructionReport r;
  r.space = space.name;
  r.obstruction = "connected extreme sphere";
  r.explanation =
      "Ext B_{X*} is the whole unit circle, a connected set; no closed E satisfies "
      "E and -E disjoint with union the circle. The norm is Gateaux smooth, so the space "
      "is not U-embeddable into any C(K).";
  r.u_embeddable = false;
  return r;
}

inline ObstructionReport prove_no_u_suitable(const AnySpace& space) {
  if (const auto* smooth = std::get_if<SmoothSpace2D>(&space)) return prove_no_u_suitable(*smooth);
  throw InputError("prove_no_u_suitable: expects the smooth Euclidean plane, got a polyhedral space");
}

}  // namespace uemb
