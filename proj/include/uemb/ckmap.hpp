#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "uemb/errors.hpp"
#include "uemb/scalar.hpp"

namespace uemb {

/// Atom tolerance of the discretized C(K) -> C(S) checks.
inline constexpr double kAtomTolerance = 1e-9;

/// A compact space realised as a finite set: either a sorted grid of [0,1]
/// (adjacent grid points are neighbours) or a discrete set without adjacency.
struct GridCompact {
  std::vector<std::string> labels;
  std::optional<std::vector<double>> coords;

  std::size_t size() const { return labels.size(); }
  bool is_grid() const { return coords.has_value(); }

  /// Uniform grid i/n of [0,1], n = round(1/step), with each knot replacing
  /// its nearest grid point so that the knots are represented exactly.
  static GridCompact interval(double step, const std::vector<double>& knots = {}) {
    if (!(step > 0) || step > 1) throw ValidationError("grid step must lie in (0, 1]");
    const auto n = static_cast<std::size_t>(std::llround(1.0 / step));
    std::vector<double> xs(n + 1);
    for (std::size_t i = 0; i <= n; ++i) xs[i] = static_cast<double>(i) / static_cast<double>(n);
    for (double k : knots) {
      if (k < 0 || k > 1) throw ValidationError("grid knot outside [0,1]");
      const auto i = static_cast<std::size_t>(std::llround(k * static_cast<double>(n)));
      xs[i] = k;
    }
    for (std::size_t i = 1; i < xs.size(); ++i)
      if (!(xs[i - 1] < xs[i]))
        throw ValidationError("grid too coarse: two knots snap to one grid point");
    GridCompact g;
    for (double x : xs) g.labels.push_back(format_double(x));
    g.coords = std::move(xs);
    return g;
  }

  static GridCompact discrete(std::vector<std::string> labels) {
    GridCompact g;
    g.labels = std::move(labels);
    g.validate();
    return g;
  }

  static GridCompact discrete(std::size_t n, const std::string& prefix = "") {
    std::vector<std::string> labels;
    for (std::size_t i = 1; i <= n; ++i) labels.push_back(prefix + std::to_string(i));
    return discrete(std::move(labels));
  }

  void validate() const {
    std::vector<std::string> sorted(labels);
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw ValidationError("compact: duplicate label");
    if (coords) {
      if (coords->size() != labels.size()) throw ValidationError("compact: coords/labels size");
      for (std::size_t i = 1; i < coords->size(); ++i)
        if (!((*coords)[i - 1] < (*coords)[i]))
          throw ValidationError("compact: grid coordinates not strictly ascending");
    }
  }

  /// Index of the grid point nearest t.
  std::size_t nearest(double t) const {
    const auto& xs = *coords;
    const auto it = std::lower_bound(xs.begin(), xs.end(), t);
    if (it == xs.begin()) return 0;
    if (it == xs.end()) return xs.size() - 1;
    const auto i = static_cast<std::size_t>(it - xs.begin());
    return (t - xs[i - 1] <= xs[i] - t) ? i - 1 : i;
  }

  bool adjacent(std::size_t a, std::size_t b) const {
    return is_grid() && (a + 1 == b || b + 1 == a);
  }
};

/// One atom w * delta_k of a discrete measure on K.
struct Atom {
  std::size_t k;
  double weight;
};

/// A map F : S -> M(K) with finitely supported values, F(s) = sum w delta_k.
///
/// `continuity_bound` is the largest total-variation jump between grid
/// neighbours; it stands in for weak*-continuity on the grid.
struct MeasureField {
  GridCompact domain;
  GridCompact codomain;
  std::vector<std::vector<Atom>> atoms;
  double tolerance = kAtomTolerance;
  double continuity_bound = 0;
  std::vector<std::string> log;

  double norm_at(std::size_t s) const {
    double acc = 0;
    for (const auto& a : atoms.at(s)) acc += std::fabs(a.weight);
    return acc;
  }

  /// Weights merged per k, zero weights dropped.
  std::map<std::size_t, double> merged(std::size_t s) const {
    std::map<std::size_t, double> m;
    for (const auto& a : atoms.at(s)) m[a.k] += a.weight;
    for (auto it = m.begin(); it != m.end();) it = (it->second == 0.0) ? m.erase(it) : std::next(it);
    return m;
  }

  /// Checks shapes and ||F(s)|| <= 1 + tolerance, then records the continuity bound.
  void finalize() {
    domain.validate();
    codomain.validate();
    if (atoms.size() != domain.size())
      throw ValidationError("field: " + std::to_string(atoms.size()) + " atom lists for " +
                            std::to_string(domain.size()) + " domain points");
    for (std::size_t s = 0; s < atoms.size(); ++s) {
      for (const auto& a : atoms[s]) {
        if (a.k >= codomain.size()) throw ValidationError("field: atom index out of range");
        if (!std::isfinite(a.weight)) throw ValidationError("field: non-finite weight");
      }
      if (norm_at(s) > 1 + tolerance)
        throw ValidationError("field: ||F(" + domain.labels[s] + ")|| = " +
                              format_double(norm_at(s)) + " exceeds 1");
    }
    continuity_bound = 0;
    if (domain.is_grid()) {
      for (std::size_t s = 1; s < atoms.size(); ++s) {
        auto diff = merged(s);
        for (const auto& [k, w] : merged(s - 1)) diff[k] -= w;
        double tv = 0;
        for (const auto& [k, w] : diff) tv += std::fabs(w);
        continuity_bound = std::max(continuity_bound, tv);
      }
    }
  }
};

/// F(s) = delta_{h(s)}: the field of the composition operator f |-> f o h.
inline MeasureField composition_field(const GridCompact& s_space, const GridCompact& k_space,
                                      const std::vector<std::size_t>& h) {
  if (h.size() != s_space.size()) throw ValidationError("composition_field: h must be total on S");
  MeasureField f;
  f.domain = s_space;
  f.codomain = k_space;
  for (auto k : h) f.atoms.push_back({{k, 1.0}});
  f.finalize();
  return f;
}

/// F(s) = (1 - f(s)) / (1 + f(s)) delta_{r(s)} for a retraction r : S -> K
/// and 0 <= f <= 1 with zero set exactly K.
///
/// `k_points` lists the points of K as indices into S; r maps every S index to
/// a position in `k_points`.
inline MeasureField retraction_field(const GridCompact& s_space,
                                     const std::vector<std::size_t>& k_points,
                                     const std::vector<std::size_t>& r,
                                     const std::vector<double>& f) {
  if (r.size() != s_space.size() || f.size() != s_space.size())
    throw ValidationError("retraction_field: r and f must be defined on all of S");
  std::vector<bool> in_k(s_space.size(), false);
  for (std::size_t i = 0; i < k_points.size(); ++i) {
    const auto s = k_points[i];
    if (s >= s_space.size()) throw ValidationError("retraction_field: K point outside S");
    in_k[s] = true;
    if (r[s] != i)
      throw ValidationError("retraction_field: r is not the identity on K at " +
                            s_space.labels[s]);
  }
  MeasureField field;
  field.domain = s_space;
  for (auto s : k_points) field.codomain.labels.push_back(s_space.labels[s]);
  for (std::size_t s = 0; s < s_space.size(); ++s) {
    if (r[s] >= k_points.size()) throw ValidationError("retraction_field: r leaves K");
    if (f[s] < 0 || f[s] > 1) throw ValidationError("retraction_field: f outside [0,1]");
    if ((f[s] == 0) != in_k[s])
      throw ValidationError("retraction_field: zero set of f differs from K at " +
                            s_space.labels[s]);
    const double w = (1 - f[s]) / (1 + f[s]);
    if (w != 0) field.atoms.push_back({{r[s], w}});
    else field.atoms.emplace_back();
  }
  field.finalize();
  return field;
}

/// Grid [0,1], K = {0}, r = 0, f(s) = s.
inline MeasureField retraction_demo(double step = 0.01) {
  const auto s = GridCompact::interval(step);
  std::vector<double> f(*s.coords);
  return retraction_field(s, {0}, std::vector<std::size_t>(s.size(), 0), f);
}

/// The embedding of c = C(K_N) into C[0,1] along quadratic Bezier arcs.
///
/// K_N = {1, ..., N, inf}. On [1/(n+1), 1/n] with n < N and parameter u,
/// F(t) = (1-u)^2 delta_{n+1} + u^2 delta_n, the arc with control points
/// delta_{n+1}, 0, delta_n. The tail [0, 1/N] is one arc from delta_inf at 0 to
/// delta_N at 1/N. The knots 1/n are grid points.
inline MeasureField bezier_field(std::size_t n_max, double step) {
  if (n_max < 2) throw ValidationError("bezier_field: N must be at least 2");
  std::vector<double> knots;
  for (std::size_t n = 1; n <= n_max; ++n) knots.push_back(1.0 / static_cast<double>(n));
  MeasureField f;
  f.domain = GridCompact::interval(step, knots);
  for (std::size_t n = 1; n <= n_max; ++n) f.codomain.labels.push_back(std::to_string(n));
  f.codomain.labels.push_back("inf");
  const std::size_t inf = n_max;
  const double tail = 1.0 / static_cast<double>(n_max);

  auto arc = [](double u, std::size_t from, std::size_t to) {
    std::vector<Atom> out;
    const double a = (1 - u) * (1 - u);
    const double b = u * u;
    if (a != 0) out.push_back({from, a});
    if (b != 0) out.push_back({to, b});
    return out;
  };
  for (double t : *f.domain.coords) {
    if (t <= tail) {
      f.atoms.push_back(arc(t / tail, inf, n_max - 1));
      continue;
    }
    auto n = static_cast<std::size_t>(std::floor(1.0 / t));
    n = std::max<std::size_t>(n, 1);
    while (n > 1 && t > 1.0 / static_cast<double>(n)) --n;
    while (t < 1.0 / static_cast<double>(n + 1)) ++n;
    const double lo = 1.0 / static_cast<double>(n + 1);
    const double hi = 1.0 / static_cast<double>(n);
    const double u = (t - lo) / (hi - lo);
    // label n has index n-1
    f.atoms.push_back(arc(u, n, n - 1));
  }
  f.log.push_back("tail segments n >= " + std::to_string(n_max) +
                  " collapsed into one arc from delta_inf to delta_" + std::to_string(n_max));
  f.finalize();
  return f;
}

/// The U-embedding of ell_inf^N = C({p_1..p_N}) into C[0,1] built from
/// shrinking neighbourhoods of the points p_i.
///
/// G_n^i = (p_i - r_n, p_i + r_n) with r_n = base_radius * 2^{-(n-1)}, g_n a
/// tent equal to 1 at p_i, and F(t) = sum_{n <= n_max} 2^{-n} g_n(t) delta_i on
/// U^i. The truncated sum peaks at 1 - 2^{-n_max}; the field is rescaled so the
/// peak is exactly 1, and the rescaling is logged.
inline MeasureField gdelta_field(double step, const std::vector<double>& targets,
                                 double base_radius, int n_max) {
  if (targets.empty()) throw ValidationError("gdelta_field: no targets");
  if (n_max < 1 || n_max > 60) throw ValidationError("gdelta_field: n_max outside [1, 60]");
  if (!(base_radius > 0)) throw ValidationError("gdelta_field: radius must be positive");
  for (std::size_t i = 0; i < targets.size(); ++i)
    for (std::size_t j = i + 1; j < targets.size(); ++j) {
      if (targets[i] == targets[j]) throw ValidationError("gdelta_field: targets not distinct");
      if (std::fabs(targets[i] - targets[j]) < 2 * base_radius)
        throw ValidationError("gdelta_field: neighbourhoods U^i overlap");
    }
  MeasureField f;
  f.domain = GridCompact::interval(step, targets);
  f.codomain = GridCompact::discrete(targets.size(), "p");
  const double raw_peak = 1.0 - std::ldexp(1.0, -n_max);
  const double scale = 1.0 / raw_peak;
  for (double t : *f.domain.coords) {
    std::vector<Atom> list;
    for (std::size_t i = 0; i < targets.size(); ++i) {
      const double dist = std::fabs(t - targets[i]);
      double w = 0;
      for (int n = 1; n <= n_max; ++n) {
        const double radius = base_radius * std::ldexp(1.0, -(n - 1));
        if (dist >= radius) break;
        w += std::ldexp(1.0, -n) * (1 - dist / radius);
      }
      if (w > 0) list.push_back({i, dist == 0 ? 1.0 : w * scale});
    }
    f.atoms.push_back(std::move(list));
  }
  f.log.push_back("raw peak ||F(p_i)|| = 1 - 2^-" + std::to_string(n_max) + " = " +
                  format_double(raw_peak) + "; field renormalized by " + format_double(scale));
  f.finalize();
  return f;
}

/// Outcome of the characterization check for an operator C(K) -> C(S).
struct CksVerdict {
  std::vector<std::size_t> s0;         ///< points s with F(s) = +-delta_k
  std::vector<std::size_t> h;          ///< h[k] = the s in s0 over k (when bijective)
  std::vector<int> epsilon;            ///< sign of F(h(k)), per k
  bool bijective = false;
  bool epsilon_locally_constant = false;
  double max_off_norm = 0;             ///< max ||F(s)|| over s outside s0
  std::optional<std::size_t> argmax_off;
  double margin = 1;                   ///< 1 - max_off_norm
  bool pass = false;
  bool inconclusive = false;
  std::vector<std::string> reasons;
};

/// Matches F(s) against +-delta_k within the field tolerance.
inline std::optional<std::pair<std::size_t, int>> as_signed_dirac(const MeasureField& f,
                                                                  std::size_t s) {
  const auto m = f.merged(s);
  for (const auto& [k, w] : m) {
    if (std::fabs(std::fabs(w) - 1) > f.tolerance) continue;
    double rest = 0;
    for (const auto& [j, v] : m)
      if (j != k) rest += std::fabs(v);
    if (rest <= f.tolerance) return std::make_pair(k, w > 0 ? 1 : -1);
  }
  return std::nullopt;
}

/// Checks: s0 -> K bijective, sign locally constant on s0, and
/// ||F(s)|| < 1 off s0 with margin above the tolerance.
inline CksVerdict verify_cks(const MeasureField& f) {
  CksVerdict v;
  const std::size_t nk = f.codomain.size();
  std::vector<std::vector<std::size_t>> pre(nk);
  std::vector<int> eps_of_s(f.domain.size(), 0);
  double max_off = 0;
  for (std::size_t s = 0; s < f.domain.size(); ++s) {
    if (const auto d = as_signed_dirac(f, s)) {
      v.s0.push_back(s);
      pre[d->first].push_back(s);
      eps_of_s[s] = d->second;
    } else {
      const double n = f.norm_at(s);
      if (!v.argmax_off || n > max_off) {
        max_off = n;
        v.argmax_off = s;
      }
    }
  }
  v.max_off_norm = max_off;
  v.margin = 1 - max_off;

  v.bijective = true;
  for (std::size_t k = 0; k < nk; ++k) {
    if (pre[k].empty()) {
      v.bijective = false;
      v.reasons.push_back("h not surjective: no s with F(s) = +-delta_" + f.codomain.labels[k]);
    } else if (pre[k].size() > 1) {
      v.bijective = false;
      v.reasons.push_back("h not injective: s=" + f.domain.labels[pre[k][0]] + ", s=" +
                          f.domain.labels[pre[k][1]] + " collide at k=" + f.codomain.labels[k]);
    }
  }
  if (v.bijective) {
    for (std::size_t k = 0; k < nk; ++k) {
      v.h.push_back(pre[k][0]);
      v.epsilon.push_back(eps_of_s[pre[k][0]]);
    }
  }

  v.epsilon_locally_constant = true;
  for (std::size_t i = 1; i < v.s0.size(); ++i) {
    const auto a = v.s0[i - 1];
    const auto b = v.s0[i];
    if (f.domain.adjacent(a, b) && eps_of_s[a] != eps_of_s[b]) {
      v.epsilon_locally_constant = false;
      v.reasons.push_back("epsilon changes sign between grid neighbours " + f.domain.labels[a] +
                          " and " + f.domain.labels[b]);
    }
  }

  if (v.margin < -f.tolerance) {
    v.reasons.push_back("||F(" + f.domain.labels[*v.argmax_off] + ")|| = " +
                        format_double(max_off) + " exceeds 1");
  } else if (v.margin <= f.tolerance) {
    v.reasons.push_back("margin " + format_double(v.margin) +
                        " below tolerance: inconclusive at this resolution");
  }
  const bool structural = v.bijective && v.epsilon_locally_constant;
  v.pass = structural && v.margin > f.tolerance;
  v.inconclusive = structural && !v.pass && v.margin >= -f.tolerance;
  return v;
}

struct ZeroSet {
  std::vector<std::size_t> points;
  std::string note;
};

/// Z = F^{-1}(0); the range of T_F lies in the ideal of functions vanishing on Z.
inline ZeroSet minimal_ideal_zeroset(const MeasureField& f) {
  ZeroSet z;
  for (std::size_t s = 0; s < f.domain.size(); ++s)
    if (f.norm_at(s) <= f.tolerance) z.points.push_back(s);
  z.note = "T(C(K)) is contained in I_Z = {g in C(S) : g = 0 on Z}";
  return z;
}

/// (T_F x)(s) = sum_k w_k x(k).
inline std::vector<double> apply_field(const MeasureField& f, const std::vector<double>& x) {
  if (x.size() != f.codomain.size())
    throw InputError("apply_field: function has " + std::to_string(x.size()) +
                     " values, K has " + std::to_string(f.codomain.size()) + " points");
  std::vector<double> out;
  out.reserve(f.domain.size());
  for (const auto& list : f.atoms) {
    double acc = 0;
    for (const auto& a : list) acc += a.weight * x[a.k];
    out.push_back(acc);
  }
  return out;
}

inline double sup_abs(const std::vector<double>& v) {
  double m = 0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

/// 1 - ||F(s)||; its zero set is s0 for a passing field.
inline std::vector<double> defect_function(const MeasureField& f) {
  std::vector<double> out;
  for (std::size_t s = 0; s < f.domain.size(); ++s) out.push_back(1 - f.norm_at(s));
  return out;
}

}  // namespace uemb
