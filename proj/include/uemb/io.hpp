#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "uemb/ckmap.hpp"
#include "uemb/embed.hpp"
#include "uemb/space.hpp"
#include "uemb/usuit.hpp"

namespace uemb {

using Json = nlohmann::ordered_json;

/// Rationals as "p/q" strings, doubles as JSON numbers.
inline Json scalar_json(const Rat& x) { return format_rat(x); }
inline Json scalar_json(double x) { return x; }

template <class T>
Json vector_json(const Vec<T>& v) {
  Json a = Json::array();
  for (const auto& c : v) a.push_back(scalar_json(c));
  return a;
}

template <class T>
Json points_json(const std::vector<Vec<T>>& pts) {
  Json a = Json::array();
  for (const auto& p : pts) a.push_back(vector_json(p));
  return a;
}

inline Rat rat_from_json(const Json& j) {
  if (j.is_string()) return parse_rat(j.get<std::string>());
  if (j.is_number_integer()) return Rat(j.get<std::int64_t>());
  if (j.is_number_unsigned()) return Rat(BigInt(j.get<std::uint64_t>()));
  throw InputError("expected a rational given as a \"p/q\" string or an integer, got " + j.dump());
}

inline double double_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s.find('/') != std::string::npos) return static_cast<double>(parse_rat(s));
    try {
      return std::stod(s);
    } catch (const std::exception&) {
      throw InputError("malformed number '" + s + "'");
    }
  }
  throw InputError("expected a number, got " + j.dump());
}

template <class T>
T scalar_from_json(const Json& j) {
  if constexpr (std::is_same_v<T, Rat>) return rat_from_json(j);
  else return double_from_json(j);
}

template <class T>
Vec<T> vector_from_json(const Json& j) {
  if (!j.is_array()) throw InputError("expected an array of coordinates, got " + j.dump());
  Vec<T> v;
  for (const auto& c : j) v.push_back(scalar_from_json<T>(c));
  return v;
}

/// Parses JSON text; syntax errors carry the line and column.
inline Json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // Convert the byte offset into a line/column pair.
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw InputError(source + ":" + std::to_string(line) + ":" + std::to_string(col) +
                     ": JSON syntax error: " + e.what());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Space definition:
/// { "name", "dim", "representation": "polyhedral"|"euclidean2d",
///   "dual_extreme_points": [["p/q", ...], ...], "allow_symmetrize": bool,
///   "arithmetic": "exact"|"float64" (optional, default exact) }
inline AnySpace space_from_json(const Json& j) {
  try {
    if (!j.is_object()) throw InputError("space definition must be a JSON object");
    const auto name = j.value("name", std::string("unnamed"));
    const auto repr = j.value("representation", std::string("polyhedral"));
    if (repr == "euclidean2d") {
      if (j.contains("dim") && j.at("dim").get<int>() != 2)
        throw ValidationError("euclidean2d requires dim 2");
      return SmoothSpace2D{name};
    }
    if (repr != "polyhedral") throw ValidationError("unknown representation '" + repr + "'");
    const bool sym = j.value("allow_symmetrize", false);
    const auto arith = j.value("arithmetic", std::string("exact"));
    const auto& pts = j.at("dual_extreme_points");
    auto check_dim = [&](std::size_t d) {
      if (j.contains("dim") && j.at("dim").get<std::size_t>() != d)
        throw ValidationError("declared dim " + j.at("dim").dump() +
                              " differs from point dimension " + std::to_string(d));
    };
    if (arith == "float64") {
      std::vector<Vec<double>> v;
      for (const auto& p : pts) v.push_back(vector_from_json<double>(p));
      if (v.empty()) throw InputError("dual_extreme_points is empty");
      check_dim(v.front().size());
      return make_space(v, name, sym);
    }
    if (arith != "exact") throw ValidationError("unknown arithmetic '" + arith + "'");
    std::vector<RatVector> v;
    for (const auto& p : pts) v.push_back(vector_from_json<Rat>(p));
    if (v.empty()) throw InputError("dual_extreme_points is empty");
    check_dim(v.front().size());
    return make_space(v, name, sym);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("space definition: ") + e.what());
  }
}

inline AnySpace load_space(const std::string& path) {
  return space_from_json(parse_json_text(read_file(path), path));
}

template <class T>
Json space_json(const PolyhedralSpace<T>& s) {
  Json j;
  j["name"] = s.name();
  j["dim"] = s.dim();
  j["representation"] = "polyhedral";
  j["arithmetic"] = scalar_traits<T>::name;
  j["dual_extreme_points"] = points_json(s.dual_extremes());
  j["allow_symmetrize"] = false;
  return j;
}

template <class T>
Json face_json(const Face<T>& f, const PolyhedralSpace<T>& s) {
  Json j;
  j["support"] = vector_json(f.support);
  j["extreme_indices"] = f.indices;
  j["extreme_points"] = points_json(s.points(f.indices));
  j["affine_dim"] = f.affine_dim;
  return j;
}

inline Json checks_json(const USuitableChecks& c) {
  Json j;
  j["cond_i"] = c.cond_i;
  j["cond_ii"] = c.cond_ii;
  j["cond_iii"] = c.cond_iii;
  j["proper"] = c.proper();
  return j;
}

/// { "E": [indices], "z": vector, "cond_i", "cond_ii", "cond_iii", "proper" }
template <class T>
Json usuitable_json(const USuitableSet<T>& e) {
  Json j;
  j["E"] = e.indices;
  j["z"] = e.selector ? vector_json(*e.selector) : Json(nullptr);
  j["cond_i"] = e.checks.cond_i;
  j["cond_ii"] = e.checks.cond_ii;
  j["cond_iii"] = e.checks.cond_iii;
  j["proper"] = e.checks.proper();
  return j;
}

template <class T>
Json certificate_json(const UCertificate<T>& c, const FiniteEmbedding<T>& emb) {
  Json j;
  j["space"] = c.space;
  j["E"] = c.e_indices;
  j["index_points"] = points_json(emb.index_points());
  j["simplexoid"] = c.simplexoid;
  if (c.offending_face) j["offending_face"] = face_json(*c.offending_face, emb.space());
  j["proper_u_suitable"] = c.proper_u_suitable;
  j["certified_U"] = c.certified_u();
  j["level"] = c.level;
  j["consistent"] = c.consistent;
  Json fails = Json::array();
  for (const auto& f : c.failures) {
    Json fj;
    fj["functional"] = vector_json(f.functional);
    fj["witness1"] = vector_json(f.witness1);
    fj["witness2"] = vector_json(f.witness2);
    fails.push_back(fj);
  }
  j["sampling"] = {{"checked", c.checked}, {"random", c.samples}, {"failures", fails}};
  j["seed"] = c.seed;
  return j;
}

template <class T>
Json extension_json(const ExtensionPolytope<T>& e, const FiniteEmbedding<T>& emb) {
  Json j;
  j["functional"] = vector_json(e.functional);
  j["norm"] = scalar_json(e.norm_value);
  j["lp_min_value"] = scalar_json(e.lp_min_value);
  j["unique"] = e.unique;
  j["mu"] = vector_json(e.point);
  Json support = Json::array();
  for (std::size_t k = 0; k < e.point.size(); ++k) {
    if (is_zero(e.point[k])) continue;
    support.push_back({{"index", k},
                       {"index_point", vector_json(emb.row(k))},
                       {"weight", scalar_json(e.point[k])}});
  }
  j["support"] = support;
  j["support_size"] = support_size(e.point);
  if (e.witnesses) {
    j["witness1"] = vector_json(e.witnesses->first);
    j["witness2"] = vector_json(e.witnesses->second);
  }
  return j;
}

// ---- measure fields ----

inline Json compact_json(const GridCompact& g) {
  Json j;
  j["labels"] = g.labels;
  if (g.coords) j["coords"] = *g.coords;
  return j;
}

/// Either {"labels": [...], "coords": [...]} or {"interval": step, "knots": [...]}.
inline GridCompact compact_from_json(const Json& j) {
  if (j.contains("interval")) {
    std::vector<double> knots;
    if (j.contains("knots"))
      for (const auto& k : j.at("knots")) knots.push_back(double_from_json(k));
    return GridCompact::interval(double_from_json(j.at("interval")), knots);
  }
  GridCompact g;
  g.labels = j.at("labels").get<std::vector<std::string>>();
  if (j.contains("coords")) {
    std::vector<double> xs;
    for (const auto& c : j.at("coords")) xs.push_back(double_from_json(c));
    g.coords = std::move(xs);
  }
  g.validate();
  return g;
}

/// { "S": grid, "K": grid, "atoms": [[[k, w], ...], ...], "tolerance": tau }
inline Json field_json(const MeasureField& f) {
  Json j;
  j["S"] = compact_json(f.domain);
  j["K"] = compact_json(f.codomain);
  Json atoms = Json::array();
  for (const auto& list : f.atoms) {
    Json l = Json::array();
    for (const auto& a : list) l.push_back(Json::array({a.k, a.weight}));
    atoms.push_back(l);
  }
  j["atoms"] = atoms;
  j["tolerance"] = f.tolerance;
  return j;
}

inline MeasureField field_from_json(const Json& j) {
  try {
    MeasureField f;
    f.domain = compact_from_json(j.at("S"));
    f.codomain = compact_from_json(j.at("K"));
    for (const auto& list : j.at("atoms")) {
      std::vector<Atom> atoms;
      for (const auto& a : list) {
        if (!a.is_array() || a.size() != 2) throw InputError("atom must be [k_index, weight]");
        atoms.push_back({a.at(0).get<std::size_t>(), double_from_json(a.at(1))});
      }
      f.atoms.push_back(std::move(atoms));
    }
    f.tolerance = j.value("tolerance", kAtomTolerance);
    f.finalize();
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("field definition: ") + e.what());
  }
}

inline Json verdict_json(const CksVerdict& v, const MeasureField& f) {
  Json j;
  Json s0 = Json::array();
  for (auto s : v.s0) s0.push_back(f.domain.labels[s]);
  j["s0"] = s0;
  if (v.bijective) {
    Json h = Json::object();
    for (std::size_t k = 0; k < v.h.size(); ++k) h[f.codomain.labels[k]] = f.domain.labels[v.h[k]];
    j["h"] = h;
    Json eps = Json::object();
    for (std::size_t k = 0; k < v.epsilon.size(); ++k) eps[f.codomain.labels[k]] = v.epsilon[k];
    j["epsilon"] = eps;
  } else {
    j["h"] = nullptr;
  }
  j["bijective"] = v.bijective;
  j["epsilon_locally_constant"] = v.epsilon_locally_constant;
  j["max_off_s0_norm"] = v.max_off_norm;
  j["argmax_off_s0"] = v.argmax_off ? Json(f.domain.labels[*v.argmax_off]) : Json(nullptr);
  j["margin"] = v.margin;
  j["pass"] = v.pass;
  j["inconclusive"] = v.inconclusive;
  j["reasons"] = v.reasons;
  j["continuity_bound"] = f.continuity_bound;
  j["tolerance"] = f.tolerance;
  return j;
}

}  // namespace uemb
