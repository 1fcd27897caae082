#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "uemb/lp.hpp"
#include "uemb/space.hpp"
#include "uemb/usuit.hpp"

namespace uemb {

enum class EmbeddingKind { canonical_uE, general };

inline const char* to_string(EmbeddingKind k) {
  return k == EmbeddingKind::canonical_uE ? "canonical-uE" : "general";
}

/// A discrete signed measure on the index points of an embedding.
template <class T>
using SignedWeights = Vec<T>;

template <class T>
T total_variation(const SignedWeights<T>& mu) {
  T acc = 0;
  for (const auto& w : mu) acc += abs_value(w);
  return acc;
}

template <class T>
std::size_t support_size(const SignedWeights<T>& mu) {
  return static_cast<std::size_t>(
      std::count_if(mu.begin(), mu.end(), [](const T& w) { return !is_zero(w); }));
}

/// Linear isometry u : X -> C(K) for a finite K, u(x)(k) = <x, row_k>.
///
/// The adjoint sends a measure mu on K to sum_k mu_k row_k, so row k is the
/// functional F_T(k) attached to the index point k.
template <class T>
class FiniteEmbedding {
 public:
  FiniteEmbedding(PolyhedralSpace<T> space, std::vector<Vec<T>> rows, EmbeddingKind kind)
      : space_(std::move(space)), rows_(std::move(rows)), kind_(kind) {}

  const PolyhedralSpace<T>& space() const { return space_; }
  const std::vector<Vec<T>>& index_points() const { return rows_; }
  const Vec<T>& row(std::size_t k) const { return rows_.at(k); }
  std::size_t size() const { return rows_.size(); }
  EmbeddingKind kind() const { return kind_; }

  /// u(x) as a function on K.
  Vec<T> apply(const Vec<T>& x) const {
    Vec<T> out;
    out.reserve(rows_.size());
    for (const auto& r : rows_) out.push_back(dot(x, r));
    return out;
  }

 private:
  PolyhedralSpace<T> space_;
  std::vector<Vec<T>> rows_;
  EmbeddingKind kind_;
};

template <class T>
T sup_norm(const Vec<T>& values) {
  T best = 0;
  for (const auto& v : values)
    if (abs_value(v) > best) best = abs_value(v);
  return best;
}

namespace detail {

inline std::int64_t draw(std::mt19937_64& rng, std::int64_t radius) {
  return static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(2 * radius + 1)) - radius;
}

}  // namespace detail

/// Random unit vector of X: integer coordinates in [-9, 9], scaled by the norm.
template <class T>
Vec<T> random_unit_vector(const PolyhedralSpace<T>& space, std::mt19937_64& rng) {
  for (;;) {
    Vec<T> x(space.dim());
    for (auto& c : x) c = scalar_traits<T>::from_int(detail::draw(rng, 9));
    const T n = norm(space, x);
    if (sign(n) == 0) continue;
    return scaled(x, T(T(1) / n));
  }
}

/// Random unit functional: an integer combination of dual extremes (weights in
/// [-4, 4]) divided by its dual norm.
template <class T>
Vec<T> random_unit_functional(const PolyhedralSpace<T>& space, std::mt19937_64& rng) {
  for (;;) {
    Vec<T> f(space.dim(), T(0));
    for (const auto& e : space.dual_extremes())
      f = f + scaled(e, scalar_traits<T>::from_int(detail::draw(rng, 4)));
    if (is_zero_vector(f)) continue;
    return scaled(f, T(T(1) / dual_norm(space, f)));
  }
}

/// Checks ||u(x)||_inf = ||x|| for one vector.
template <class T>
bool preserves_norm(const FiniteEmbedding<T>& emb, const Vec<T>& x) {
  return same(sup_norm(emb.apply(x)), norm(emb.space(), x));
}

/// Embedding given by arbitrary index points in B_{X*}. Isometric iff every
/// row has dual norm at most 1 and the rows together with their negatives
/// contain Ext B_{X*}.
template <class T>
FiniteEmbedding<T> make_embedding(const PolyhedralSpace<T>& space, std::vector<Vec<T>> rows,
                                  EmbeddingKind kind = EmbeddingKind::general) {
  if (rows.empty()) throw InputError("make_embedding: no index points");
  for (const auto& r : rows) {
    if (r.size() != space.dim()) throw InputError("make_embedding: index point dimension mismatch");
    if (sign(T(dual_norm(space, r) - T(1))) > 0)
      throw NotAnIsometryError("make_embedding: index point " + format_vector(r) +
                               " lies outside the dual unit ball");
  }
  for (const auto& e : space.dual_extremes()) {
    if (find_point(rows, e) == npos && find_point(rows, Vec<T>(-e)) == npos)
      throw NotAnIsometryError("make_embedding: extreme functional " + format_vector(e) +
                               " is not represented by +-index points");
  }
  return FiniteEmbedding<T>(space, std::move(rows), kind);
}

/// Indexing by all of Ext B_{X*}, E together with -E.
template <class T>
FiniteEmbedding<T> canonical_embedding(const PolyhedralSpace<T>& space) {
  return make_embedding(space, space.dual_extremes(), EmbeddingKind::general);
}

/// u_E : X -> C(E).
///
/// Isometry is checked on every vertex of B_X (the facet normals of the dual
/// ball) and on `isometry_samples` random unit vectors.
template <class T>
FiniteEmbedding<T> build_uE(const PolyhedralSpace<T>& space, const USuitableSet<T>& e,
                            std::size_t isometry_samples = 1000, std::uint64_t seed = 0) {
  const auto checks = verify_u_suitable(space, e.indices);
  if (!checks.cond_ii)
    throw NotAnIsometryError("build_uE: E and -E do not cover Ext B_{X*}");
  if (!checks.cond_i) throw PreconditionError("build_uE: E contains an antipodal pair");
  FiniteEmbedding<T> emb(space, space.points(e.indices), EmbeddingKind::canonical_uE);

  for (const auto& f : space.facets())
    if (!preserves_norm(emb, f.support))
      throw InternalConsistencyError("build_uE: isometry fails at vertex " +
                                     format_vector(f.support));
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < isometry_samples; ++i) {
    const auto x = random_unit_vector(space, rng);
    if (!preserves_norm(emb, x))
      throw InternalConsistencyError("build_uE: isometry fails at " + format_vector(x));
  }
  return emb;
}

/// mu |-> sum_k mu_k row_k.
template <class T>
Vec<T> adjoint_apply(const FiniteEmbedding<T>& emb, const SignedWeights<T>& mu) {
  if (mu.size() != emb.size())
    throw InputError("adjoint_apply: weight vector has " + std::to_string(mu.size()) +
                     " entries, embedding has " + std::to_string(emb.size()) + " index points");
  Vec<T> out(emb.space().dim(), T(0));
  for (std::size_t k = 0; k < mu.size(); ++k)
    if (!is_zero(mu[k])) out = out + scaled(emb.row(k), mu[k]);
  return out;
}

/// The Hahn-Banach extensions of one functional through an embedding.
template <class T>
struct ExtensionPolytope {
  Vec<T> functional;
  T norm_value = 0;    ///< ||x*|| computed over B_X
  T lp_min_value = 0;  ///< min total variation of a preimage under the adjoint
  bool unique = true;
  SignedWeights<T> point;
  /// Two distinct extensions when `unique` is false.
  std::optional<std::pair<SignedWeights<T>, SignedWeights<T>>> witnesses;
};

namespace detail {

/// min sum(mu+ + mu-) s.t. sum_k (mu+_k - mu-_k) row_k = x*, mu+- >= 0.
template <class T>
LPProblem<T> min_variation_lp(const FiniteEmbedding<T>& emb, const Vec<T>& xstar) {
  const std::size_t kk = emb.size();
  const std::size_t d = emb.space().dim();
  LPProblem<T> lp;
  lp.objective.assign(2 * kk, T(1));
  lp.eq_matrix.assign(d, Vec<T>(2 * kk, T(0)));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < kk; ++k) {
      lp.eq_matrix[i][k] = emb.row(k)[i];
      lp.eq_matrix[i][kk + k] = -emb.row(k)[i];
    }
  lp.eq_rhs = xstar;
  return lp;
}

template <class T>
SignedWeights<T> join_split(const Vec<T>& split) {
  const std::size_t kk = split.size() / 2;
  SignedWeights<T> mu(kk);
  for (std::size_t k = 0; k < kk; ++k) mu[k] = split[k] - split[kk + k];
  return mu;
}

}  // namespace detail

/// Computes HB(x*) through the embedding and decides whether it is a point.
///
/// The minimal total variation must equal the dual norm computed over the
/// primal ball; a mismatch raises InternalConsistencyError. x* = 0 has the
/// single extension 0.
template <class T>
ExtensionPolytope<T> hb_extensions(const FiniteEmbedding<T>& emb, const Vec<T>& xstar) {
  if (xstar.size() != emb.space().dim()) throw InputError("hb_extensions: dimension mismatch");
  ExtensionPolytope<T> out;
  out.functional = xstar;
  if (is_zero_vector(xstar)) {
    out.point.assign(emb.size(), T(0));
    return out;
  }
  out.norm_value = dual_norm(emb.space(), xstar);
  const auto lp = detail::min_variation_lp(emb, xstar);
  const auto base = solve_lp(lp);
  if (!base.optimal())
    throw InternalConsistencyError("hb_extensions: adjoint is not onto (" +
                                   std::string(to_string(base.status)) + ")");
  out.lp_min_value = base.value;
  if (!same(out.lp_min_value, out.norm_value))
    throw InternalConsistencyError("hb_extensions: min total variation " +
                                   format_scalar(out.lp_min_value) + " != dual norm " +
                                   format_scalar(out.norm_value) + " for " +
                                   format_vector(xstar));
  const auto face = optimal_face_is_singleton(lp);
  out.point = detail::join_split(face.point);
  out.unique = face.singleton;
  if (face.witnesses)
    out.witnesses = std::make_pair(detail::join_split(face.witnesses->first),
                                   detail::join_split(face.witnesses->second));
  return out;
}

/// Is mu a norm-preserving extension of x*?
template <class T>
bool is_hb_extension(const FiniteEmbedding<T>& emb, const Vec<T>& xstar,
                     const SignedWeights<T>& mu) {
  return same_point(adjoint_apply(emb, mu), xstar) &&
         same(total_variation(mu), dual_norm(emb.space(), xstar));
}

/// Support size of the basic optimal extension of a unit functional; never
/// exceeds dim X because a basic solution has at most dim X basic columns.
template <class T>
std::size_t phelps_support(const FiniteEmbedding<T>& emb, const Vec<T>& xstar) {
  const auto ext = hb_extensions(emb, xstar);
  if (!same(ext.norm_value, T(1)))
    throw PreconditionError("phelps_support: ||x*|| = " + format_scalar(ext.norm_value) +
                            ", expected 1");
  const std::size_t s = support_size(ext.point);
  if (s > emb.space().dim())
    throw InternalConsistencyError("phelps_support: support " + std::to_string(s) +
                                   " exceeds dimension " + std::to_string(emb.space().dim()));
  return s;
}

template <class T>
struct UCore {
  std::vector<std::size_t> indices;       ///< index points carrying extreme functionals
  std::vector<std::size_t> ext_plus;      ///< those extreme functionals, as extreme indices
  bool partition = false;                 ///< Ext = Ext+ disjoint-union -Ext+
  std::vector<std::size_t> off_core;      ///< remaining index points
  std::optional<T> off_core_max_norm;     ///< largest dual norm off the core
};

/// F_T^{-1}(Ext B_{X*}).
template <class T>
UCore<T> u_core(const FiniteEmbedding<T>& emb) {
  const auto& space = emb.space();
  UCore<T> c;
  std::vector<bool> plus(space.num_extremes(), false);
  for (std::size_t k = 0; k < emb.size(); ++k) {
    const auto e = find_point(space.dual_extremes(), emb.row(k));
    if (e == npos) {
      c.off_core.push_back(k);
      const T n = dual_norm(space, emb.row(k));
      if (!c.off_core_max_norm || n > *c.off_core_max_norm) c.off_core_max_norm = n;
      continue;
    }
    c.indices.push_back(k);
    plus[e] = true;
  }
  for (std::size_t e = 0; e < plus.size(); ++e)
    if (plus[e]) c.ext_plus.push_back(e);
  c.partition = true;
  for (std::size_t e = 0; e < plus.size(); ++e)
    if (plus[e] == plus[space.antipode(e)]) c.partition = false;
  return c;
}

/// The finite operator C(K) -> C(S) whose row s is the measure F(s) on K.
template <class T>
FiniteEmbedding<T> make_ck_embedding(std::size_t k_count,
                                     const std::vector<std::vector<std::pair<std::size_t, T>>>& atoms) {
  std::vector<Vec<T>> rows;
  for (const auto& list : atoms) {
    Vec<T> r(k_count, T(0));
    for (const auto& [k, w] : list) {
      if (k >= k_count) throw InputError("make_ck_embedding: atom index out of range");
      r[k] += w;
    }
    rows.push_back(std::move(r));
  }
  return make_embedding(make_linf_space<T>(k_count), std::move(rows));
}

/// Composition operator f |-> f o h from C(K) to C(S).
template <class T>
FiniteEmbedding<T> composition_operator(std::size_t k_count, const std::vector<std::size_t>& h) {
  std::vector<std::vector<std::pair<std::size_t, T>>> atoms;
  for (auto k : h) atoms.push_back({{k, T(1)}});
  return make_ck_embedding<T>(k_count, atoms);
}

/// outer o inner, where outer embeds C(K_inner) = ell_inf^{|K_inner|}.
template <class T>
FiniteEmbedding<T> compose(const FiniteEmbedding<T>& inner, const FiniteEmbedding<T>& outer) {
  if (outer.space().dim() != inner.size())
    throw InputError("compose: outer acts on C(K) with |K| = " +
                     std::to_string(outer.space().dim()) + ", inner has " +
                     std::to_string(inner.size()) + " index points");
  std::vector<Vec<T>> rows;
  for (const auto& r : outer.index_points()) rows.push_back(adjoint_apply(inner, r));
  return make_embedding(inner.space(), std::move(rows));
}

template <class T>
struct SamplingFailure {
  Vec<T> functional;
  SignedWeights<T> witness1;
  SignedWeights<T> witness2;
};

/// Two-track verdict on property U for an embedding.
template <class T>
struct UCertificate {
  std::string space;
  std::vector<std::size_t> e_indices;  ///< index points as extreme indices (core only)
  bool simplexoid = false;
  std::optional<Face<T>> offending_face;
  bool proper_u_suitable = false;
  bool theorem_certified = false;
  std::size_t checked = 0;
  std::vector<SamplingFailure<T>> failures;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  /// "certificate" on the exact path, "evidence" on the float path.
  std::string level;
  /// False when the two tracks contradict each other.
  bool consistent = true;

  bool certified_u() const { return theorem_certified && failures.empty(); }
};

/// Theorem track: the dual ball is a simplexoid and the index points form a
/// proper U-suitable set. Sampling track: uniqueness of the extension of every
/// dual extreme, of one relative-interior point of every face, and of
/// `samples` seeded random unit functionals.
template <class T>
UCertificate<T> verify_u_embedding(const FiniteEmbedding<T>& emb, std::size_t samples = 1000,
                                   std::uint64_t seed = 0) {
  const auto& space = emb.space();
  UCertificate<T> cert;
  cert.space = space.name();
  cert.seed = seed;
  cert.samples = samples;
  cert.level = scalar_traits<T>::exact ? "certificate" : "evidence";

  const auto sx = is_simplexoid(space);
  cert.simplexoid = sx.simplexoid;
  cert.offending_face = sx.offending;

  const auto core = u_core(emb);
  bool rows_are_selection = core.off_core.empty() && core.indices.size() == core.ext_plus.size();
  cert.e_indices = core.ext_plus;
  if (rows_are_selection) {
    const auto checks = verify_u_suitable(space, core.ext_plus);
    cert.proper_u_suitable = checks.proper();
  }
  cert.theorem_certified = cert.simplexoid && cert.proper_u_suitable;

  std::vector<Vec<T>> probes = space.dual_extremes();
  for (const auto& f : space.faces()) {
    Vec<T> c(space.dim(), T(0));
    for (auto k : f.indices) c = c + space.extreme(k);
    probes.push_back(scaled(c, T(T(1) / T(static_cast<long>(f.indices.size())))));
  }
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < samples; ++i) probes.push_back(random_unit_functional(space, rng));

  for (const auto& p : probes) {
    const auto ext = hb_extensions(emb, p);
    ++cert.checked;
    if (!ext.unique)
      cert.failures.push_back({p, ext.witnesses->first, ext.witnesses->second});
  }
  if (cert.theorem_certified && !cert.failures.empty()) cert.consistent = false;
  if (!cert.simplexoid && cert.failures.empty()) cert.consistent = false;
  return cert;
}

}  // namespace uemb
