#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "uemb/ckmap.hpp"
#include "uemb/embed.hpp"
#include "uemb/io.hpp"
#include "uemb/space.hpp"
#include "uemb/usuit.hpp"

#ifndef UEMB_CORPUS_DIR
#define UEMB_CORPUS_DIR "data/corpus"
#endif

namespace uemb::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kGeometricObstruction = 2,
  kSmoothObstruction = 3,
  kInternal = 4,
};

struct RunConfig {
  std::uint64_t seed = 0;
  std::size_t samples = 1000;
  std::string format = "json";
  std::optional<std::string> out;
  double tolerance = kAtomTolerance;
  std::string corpus_dir = UEMB_CORPUS_DIR;
};

struct Report {
  Json json;
  std::string text;
  int exit_code = kOk;

  std::string render(const std::string& format) const {
    return format == "text" ? text : json.dump(2) + "\n";
  }
};

/// A path to a space file, or the name of a corpus entry.
inline AnySpace resolve_space(const std::string& arg, const RunConfig& cfg) {
  namespace fs = std::filesystem;
  if (fs::is_regular_file(arg)) return load_space(arg);
  const auto candidate = fs::path(cfg.corpus_dir) / (arg + ".json");
  if (fs::is_regular_file(candidate)) return load_space(candidate.string());
  throw InputError("no space file or corpus entry named '" + arg + "'");
}

inline std::vector<std::string> corpus_names(const RunConfig& cfg) {
  std::vector<std::string> names;
  for (const auto& e : std::filesystem::directory_iterator(cfg.corpus_dir))
    if (e.path().extension() == ".json") names.push_back(e.path().stem().string());
  std::sort(names.begin(), names.end());
  return names;
}

inline Report cmd_corpus_list(const RunConfig& cfg) {
  Report r;
  r.json["command"] = "corpus list";
  Json entries = Json::array();
  std::ostringstream text;
  for (const auto& name : corpus_names(cfg)) {
    const auto j = parse_json_text(
        read_file((std::filesystem::path(cfg.corpus_dir) / (name + ".json")).string()), name);
    Json e;
    e["name"] = name;
    e["representation"] = j.value("representation", std::string("polyhedral"));
    e["arithmetic"] = j.value("arithmetic", std::string("exact"));
    e["dim"] = j.value("dim", 0);
    entries.push_back(e);
    text << name << "  dim=" << e["dim"].get<int>() << "  " << e["representation"].get<std::string>()
         << " (" << e["arithmetic"].get<std::string>() << ")\n";
  }
  r.json["corpus"] = entries;
  r.text = text.str();
  return r;
}

namespace detail {

template <class T>
std::string facet_word(const Face<T>& f) {
  const auto n = f.indices.size();
  if (f.affine_dim == 2 && n == 4) return "square facet";
  return std::to_string(n) + "-vertex facet";
}

template <class T>
Report check_polyhedral(const PolyhedralSpace<T>& s) {
  Report r;
  std::ostringstream text;
  r.json["command"] = "check";
  r.json["space"] = s.name();
  r.json["representation"] = "polyhedral";
  r.json["arithmetic"] = scalar_traits<T>::name;
  r.json["dim"] = s.dim();
  r.json["dual_extreme_points"] = points_json(s.dual_extremes());

  const auto sx = is_simplexoid(s);
  r.json["simplexoid"] = sx.simplexoid;
  r.json["offending_face"] = sx.offending ? face_json(*sx.offending, s) : Json(nullptr);
  text << "space: " << s.name() << " (dim " << s.dim() << ", " << s.num_extremes()
       << " dual extreme points, " << scalar_traits<T>::name << ")\n";
  if (sx.simplexoid) {
    text << "simplexoid: YES\n";
  } else {
    text << "simplexoid: NO (" << facet_word(*sx.offending) << " "
         << format_vector(sx.offending->support) << ": ";
    for (std::size_t i = 0; i < sx.offending->indices.size(); ++i)
      text << (i ? " " : "") << format_vector(s.extreme(sx.offending->indices[i]));
    text << ")\n";
  }

  const auto sm = is_gateaux_smooth(s);
  r.json["gateaux_smooth"] = sm.smooth;
  r.json["smoothness_witness"] = sm.witness ? vector_json(*sm.witness) : Json(nullptr);
  text << "Gâteaux smooth: " << (sm.smooth ? "YES" : "NO");
  if (sm.witness) text << " (face at " << format_vector(*sm.witness) << " is not a point)";
  text << "\n";

  const bool conn = extreme_sphere_connected(s);
  r.json["extreme_sphere_connected"] = conn;
  text << "extreme dual sphere connected: " << (conn ? "YES" : "NO") << "\n";

  Json orders = Json::array();
  text << "almost-Gâteaux orders:\n";
  for (const auto& f : s.faces()) {
    const auto n = almost_gateaux_order(s, f.support);
    orders.push_back({{"x", vector_json(f.support)}, {"order", n}});
    text << "  x=" << format_vector(f.support) << "  n=" << n << "\n";
  }
  r.json["almost_gateaux_orders"] = orders;
  r.text = text.str();
  return r;
}

inline Report smooth_obstruction(const SmoothSpace2D& s, const char* command) {
  const auto ob = prove_no_u_suitable(s);
  Report r;
  r.json["command"] = command;
  r.json["space"] = s.name;
  r.json["representation"] = "euclidean2d";
  r.json["gateaux_smooth"] = true;
  r.json["extreme_sphere_connected"] = true;
  r.json["u_embeddable"] = false;
  r.json["obstruction"] = ob.obstruction;
  r.json["explanation"] = ob.explanation;
  std::ostringstream text;
  text << "space: " << s.name << " (Euclidean plane)\n"
       << "Gâteaux smooth: YES → not U-embeddable\n"
       << "extreme dual sphere connected: YES\n"
       << "obstruction: " << ob.obstruction << "\n";
  r.text = text.str();
  return r;
}

template <class T>
struct Pipeline {
  USuitableSet<T> e;
  FiniteEmbedding<T> emb;
};

template <class T>
Pipeline<T> run_pipeline(const PolyhedralSpace<T>& s, const RunConfig& cfg) {
  auto e = build_u_suitable(s);
  auto emb = build_uE(s, e, cfg.samples, cfg.seed);
  return {std::move(e), std::move(emb)};
}

template <class T>
Report embed_polyhedral(const PolyhedralSpace<T>& s, const RunConfig& cfg) {
  Report r;
  const auto p = run_pipeline(s, cfg);
  const auto cert = verify_u_embedding(p.emb, cfg.samples, cfg.seed);
  r.json["command"] = "embed";
  r.json["u_suitable"] = usuitable_json(p.e);
  r.json["certificate"] = certificate_json(cert, p.emb);

  std::ostringstream text;
  text << "space: " << s.name() << "\n"
       << "selector z = " << format_vector(*p.e.selector) << "\n"
       << "E (" << p.e.indices.size() << " points):";
  for (auto k : p.e.indices) text << " " << format_vector(s.extreme(k));
  text << "\nconditions: (i) " << p.e.checks.cond_i << "  (ii) " << p.e.checks.cond_ii
       << "  (iii) " << p.e.checks.cond_iii << "\n"
       << "simplexoid: " << (cert.simplexoid ? "YES" : "NO") << "\n"
       << "sampling: " << cert.failures.size() << " failures / " << cert.checked << " functionals\n";

  if (!cert.consistent) {
    r.exit_code = kInternal;
    text << "INTERNAL INCONSISTENCY: theorem and sampling tracks disagree\n";
  } else if (!cert.simplexoid) {
    r.exit_code = kGeometricObstruction;
    text << "verdict: NOT U-embeddable (dual ball is not a simplexoid: "
         << facet_word(*cert.offending_face) << " " << format_vector(cert.offending_face->support)
         << ")\n";
  } else if (cert.certified_u()) {
    text << "verdict: U-embedding (" << cert.level << ")\n";
  } else {
    r.exit_code = kInternal;
    text << "verdict: not certified\n";
  }
  r.text = text.str();
  return r;
}

template <class T>
Report extend_polyhedral(const PolyhedralSpace<T>& s, const std::vector<std::string>& functional,
                         const RunConfig& cfg) {
  if (functional.size() != s.dim())
    throw InputError("extend: functional has " + std::to_string(functional.size()) +
                     " coordinates, space has dimension " + std::to_string(s.dim()));
  Vec<T> xstar;
  for (const auto& c : functional) xstar.push_back(scalar_from_json<T>(Json(c)));
  Report r;
  r.json["command"] = "extend";
  r.json["space"] = s.name();
  if (!is_simplexoid(s).simplexoid) {
    r.exit_code = kGeometricObstruction;
    r.json["error"] = "dual ball is not a simplexoid; no U-embedding exists";
    r.text = "dual ball is not a simplexoid; no U-embedding exists\n";
    return r;
  }
  const auto p = run_pipeline(s, cfg);
  const auto ext = hb_extensions(p.emb, xstar);
  r.json["index_points"] = points_json(p.emb.index_points());
  r.json["extension"] = extension_json(ext, p.emb);
  const bool unit = same(ext.norm_value, T(1));
  std::optional<std::size_t> phelps;
  if (unit) phelps = phelps_support(p.emb, xstar);
  r.json["phelps_support"] = phelps ? Json(*phelps) : Json(nullptr);
  r.json["phelps_bound"] = s.dim();

  std::ostringstream text;
  text << "space: " << s.name() << "\nx* = " << format_vector(xstar)
       << "  ||x*|| = " << format_scalar(ext.norm_value) << "\n"
       << "extension " << (ext.unique ? "unique" : "NOT unique") << ", mu =";
  for (std::size_t k = 0; k < ext.point.size(); ++k)
    if (!is_zero(ext.point[k]))
      text << " " << format_scalar(ext.point[k]) << "·δ" << format_vector(p.emb.row(k));
  text << "\nsupport: " << support_size(ext.point);
  if (phelps) text << " (bound " << s.dim() << ")";
  text << "\n";
  r.text = text.str();
  if (!ext.unique) r.exit_code = kInternal;
  return r;
}

}  // namespace detail

inline Report cmd_check(const AnySpace& space) {
  return std::visit(
      [](const auto& s) -> Report {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, SmoothSpace2D>) return detail::smooth_obstruction(s, "check");
        else return detail::check_polyhedral(s);
      },
      space);
}

/// selector -> U-suitable set -> u_E -> two-track certificate.
inline Report cmd_embed(const AnySpace& space, const RunConfig& cfg) {
  return std::visit(
      [&](const auto& s) -> Report {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, SmoothSpace2D>) {
          auto r = detail::smooth_obstruction(s, "embed");
          r.exit_code = kSmoothObstruction;
          return r;
        } else {
          return detail::embed_polyhedral(s, cfg);
        }
      },
      space);
}

inline Report cmd_extend(const AnySpace& space, const std::vector<std::string>& functional,
                         const RunConfig& cfg) {
  return std::visit(
      [&](const auto& s) -> Report {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, SmoothSpace2D>) {
          auto r = detail::smooth_obstruction(s, "extend");
          r.exit_code = kSmoothObstruction;
          return r;
        } else {
          return detail::extend_polyhedral(s, functional, cfg);
        }
      },
      space);
}

/// Parameters of the built-in C(K) -> C(S) demonstrations.
struct CksOptions {
  std::size_t n = 10;
  std::optional<double> step;
  bool collide = false;
  int n_max = 20;
};

inline MeasureField build_demo(const std::string& demo, const CksOptions& opt) {
  if (demo == "retraction") return retraction_demo(opt.step.value_or(0.01));
  if (demo == "bezier") return bezier_field(opt.n, opt.step.value_or(1e-4));
  if (demo == "gdelta") return gdelta_field(opt.step.value_or(1e-3), {0.25, 0.75}, 0.2, opt.n_max);
  if (demo == "composition") {
    if (opt.collide)
      return composition_field(GridCompact::discrete(2), GridCompact::discrete(1), {0, 0});
    return composition_field(GridCompact::discrete(2), GridCompact::discrete(2), {0, 1});
  }
  throw InputError("unknown demo '" + demo + "' (expected retraction, bezier, composition, gdelta)");
}

inline Report cmd_cks(const std::string& demo_or_file, const CksOptions& opt,
                      const RunConfig& cfg) {
  const bool from_file = std::filesystem::is_regular_file(demo_or_file);
  MeasureField field = from_file
                           ? field_from_json(parse_json_text(read_file(demo_or_file), demo_or_file))
                           : build_demo(demo_or_file, opt);
  // Field files carry their own tolerance.
  if (!from_file) field.tolerance = cfg.tolerance;
  const auto v = verify_cks(field);
  const auto z = minimal_ideal_zeroset(field);

  Report r;
  r.json["command"] = "cks";
  r.json["field"] = demo_or_file;
  r.json["S_size"] = field.domain.size();
  r.json["K"] = field.codomain.labels;
  r.json["log"] = field.log;
  r.json["verdict"] = verdict_json(v, field);
  Json zl = Json::array();
  for (auto s : z.points) zl.push_back(field.domain.labels[s]);
  r.json["zero_set"] = {{"points", zl}, {"count", z.points.size()}, {"note", z.note}};

  std::ostringstream text;
  text << "field: " << demo_or_file << " (|S| = " << field.domain.size()
       << ", |K| = " << field.codomain.size() << ")\n";
  for (const auto& l : field.log) text << "log: " << l << "\n";
  text << "s0 size: " << v.s0.size() << "  bijective: " << (v.bijective ? "yes" : "no")
       << "  epsilon locally constant: " << (v.epsilon_locally_constant ? "yes" : "no") << "\n"
       << "max off-s0 norm: " << format_double(v.max_off_norm)
       << "  margin: " << format_double(v.margin) << "\n";
  for (const auto& reason : v.reasons) text << "reason: " << reason << "\n";
  text << "zero set Z: " << z.points.size() << " points\n"
       << "verdict: " << (v.pass ? "PASS" : (v.inconclusive ? "INCONCLUSIVE" : "FAIL")) << "\n";
  r.text = text.str();
  r.exit_code = v.pass ? kOk : kGeometricObstruction;
  return r;
}

}  // namespace uemb::cli
