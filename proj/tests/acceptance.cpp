// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.
//
// Usage: acceptance [path-to-uemb-binary]
// Without the binary path, AC8 compares in-process reports instead.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "uemb/commands.hpp"
#include "uemb/uemb.hpp"

using namespace uemb;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;  // keep the first failure
    ok = ok && cond;
  }
};

int failures = 0;

void run(const std::string& id, const std::string& title, double time_limit,
         const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out.ok = false;
    out.detail = std::string("exception: ") + e.what();
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (time_limit > 0 && secs >= time_limit) {
    out.require(false, "took " + format_double(secs) + " s, limit " + format_double(time_limit) + " s");
  }
  std::ostringstream line;
  line << (out.ok ? "[PASS] " : "[FAIL] ") << id << " " << title << " (" << std::fixed;
  line.precision(3);
  line << secs << " s)";
  if (!out.detail.empty()) line << ": " << out.detail;
  std::cout << line.str() << std::endl;
  if (!out.ok) ++failures;
}

PolyhedralSpace<Rat> exact(const std::string& name) {
  return std::get<PolyhedralSpace<Rat>>(load_space(std::string(UEMB_CORPUS_DIR) + "/" + name + ".json"));
}

const std::vector<std::string> kExactCorpus{"linf2", "l1_2", "linf3", "hexagon", "l1_3"};

FiniteEmbedding<Rat> selector_embedding(const PolyhedralSpace<Rat>& s, std::size_t iso = 1000) {
  return build_uE(s, build_u_suitable(s), iso);
}

template <class T>
std::vector<Vec<T>> probes(const PolyhedralSpace<T>& s, std::size_t random, std::uint64_t seed) {
  std::vector<Vec<T>> out = s.dual_extremes();
  for (const auto& f : s.faces()) {
    Vec<T> c(s.dim(), T(0));
    for (auto k : f.indices) c = c + s.extreme(k);
    out.push_back(scaled(c, T(T(1) / T(static_cast<long>(f.indices.size())))));
  }
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < random; ++i) out.push_back(random_unit_functional(s, rng));
  return out;
}

Outcome ac1() {
  Outcome o;
  for (const auto* name : {"linf2", "l1_2", "linf3", "hexagon"}) {
    const auto s = exact(name);
    const auto cert = verify_u_embedding(selector_embedding(s, 0), 0);
    o.require(cert.simplexoid, std::string(name) + ": not a simplexoid");
    o.require(cert.certified_u(), std::string(name) + ": not certified U");
    o.require(cert.level == "certificate", std::string(name) + ": not exact");
  }
  const auto cube = exact("l1_3");
  const auto sx = is_simplexoid(cube);
  o.require(!sx.simplexoid, "l1_3 reported as simplexoid");
  o.require(sx.offending && sx.offending->indices.size() == 4 && sx.offending->affine_dim == 2,
            "l1_3 offending face is not a square facet");
  const auto plane = load_space(std::string(UEMB_CORPUS_DIR) + "/euclidean2d.json");
  const auto& smooth = std::get<SmoothSpace2D>(plane);
  o.require(is_gateaux_smooth(smooth).smooth, "euclidean2d not smooth");
  const auto ob = prove_no_u_suitable(smooth);
  o.require(!ob.u_embeddable && ob.obstruction == "connected extreme sphere",
            "euclidean2d obstruction missing");
  const auto rep = cli::cmd_embed(plane, cli::RunConfig{});
  o.require(rep.exit_code == cli::kSmoothObstruction &&
                rep.text.find("Gâteaux smooth: YES") != std::string::npos,
            "euclidean2d embed report lacks the smoothness obstruction");
  return o;
}

Outcome ac2() {
  Outcome o;
  std::size_t checked = 0;
  for (const auto& name : kExactCorpus) {
    const auto s = exact(name);
    const auto emb = selector_embedding(s);
    if (s.dim() > 3 || emb.size() > 8) continue;
    for (const auto& f : probes(s, 1000, 0)) {
      const auto ext = hb_extensions(emb, f);
      const Rat n = oracle::dual_norm(s.dual_extremes(), f);
      o.require(ext.lp_min_value == n, name + ": lp_min != ||x*|| at " + format_vector(f));
      const auto verts = oracle::hb_vertices(emb.index_points(), f, n);
      o.require(ext.unique == (verts.size() == 1),
                name + ": singleton verdict differs from vertex enumeration at " + format_vector(f));
      if (ext.unique && verts.size() == 1)
        o.require(ext.point == verts.front(), name + ": extension differs from oracle vertex");
      ++checked;
    }
  }
  o.detail = o.ok ? std::to_string(checked) + " functionals" : o.detail;
  return o;
}

Outcome ac3() {
  Outcome o;
  for (const auto& name : kExactCorpus) {
    const auto s = exact(name);
    const auto canon = canonical_embedding(s);
    for (const auto& e : s.dual_extremes()) {
      const auto ext = hb_extensions(canon, e);
      o.require(!ext.unique, name + ": unique extension at " + format_vector(e));
      SignedWeights<Rat> plus(canon.size(), Rat(0)), minus(canon.size(), Rat(0));
      plus[find_point(canon.index_points(), e)] = 1;
      minus[find_point(canon.index_points(), Vec<Rat>(-e))] = -1;
      o.require(is_hb_extension(canon, e, plus) && is_hb_extension(canon, e, minus),
                name + ": delta witnesses are not extensions at " + format_vector(e));
      const auto verts = oracle::hb_vertices(canon.index_points(), e, Rat(1));
      o.require(verts.size() >= 2 && find_point(verts, plus) != npos && find_point(verts, minus) != npos,
                name + ": witnesses not recovered at " + format_vector(e));
      o.require(ext.witnesses && is_hb_extension(canon, e, ext.witnesses->first) &&
                    is_hb_extension(canon, e, ext.witnesses->second),
                name + ": LP witnesses invalid");
    }
  }
  return o;
}

/// Support law for one unique extension: mu+ on {<x,row>=1}, mu- on {<x,row>=-1}
/// for every norming vertex x of B_X.
bool support_law(const FiniteEmbedding<Rat>& emb, const Vec<Rat>& f, const SignedWeights<Rat>& mu,
                 const std::vector<RatVector>& ball) {
  bool any = false;
  for (const auto& x : ball) {
    if (dot(x, f) != 1) continue;
    any = true;
    for (std::size_t k = 0; k < emb.size(); ++k) {
      if (mu[k] > 0 && dot(x, emb.row(k)) != 1) return false;
      if (mu[k] < 0 && dot(x, emb.row(k)) != -1) return false;
    }
  }
  return any;
}

Outcome ac4() {
  Outcome o;
  for (const auto& name : kExactCorpus) {
    const auto s = exact(name);
    const auto emb = selector_embedding(s);
    std::mt19937_64 rng(4);
    for (int i = 0; i < 100; ++i) {
      const auto f = random_unit_functional(s, rng);
      const auto ext = hb_extensions(emb, f);
      o.require(support_size(ext.point) <= s.dim(), name + ": support exceeds dim at " + format_vector(f));
      if (is_simplexoid(s).simplexoid) o.require(phelps_support(emb, f) <= s.dim(), name);
    }
  }
  const auto theta = std::get<PolyhedralSpace<double>>(
      load_space(std::string(UEMB_CORPUS_DIR) + "/theta_n.json"));
  const auto temb = build_uE(theta, build_u_suitable(theta), 1000);
  std::mt19937_64 rng(4);
  for (int i = 0; i < 100; ++i)
    o.require(phelps_support(temb, random_unit_functional(theta, rng)) <= theta.dim(), "theta_n");
  return o;
}

Outcome ac5() {
  Outcome o;
  std::size_t verified = 0;
  for (const auto& name : kExactCorpus) {
    const auto s = exact(name);
    const auto emb = selector_embedding(s);
    const auto ball = oracle::primal_ball_vertices(s.dual_extremes());
    for (const auto& f : probes(s, 200, 5)) {
      const auto ext = hb_extensions(emb, f);
      if (!ext.unique) continue;
      ++verified;
      o.require(support_law(emb, f, ext.point, ball), name + ": support law fails at " + format_vector(f));
    }
  }
  o.detail = o.ok ? std::to_string(verified) + " unique extensions" : o.detail;
  return o;
}

/// (T x)(t) for the Bezier construction, recomputed from the segment formula.
double bezier_norm_at(double t, std::size_t n_max) {
  const double tail = 1.0 / static_cast<double>(n_max);
  double u;
  if (t <= tail) {
    u = t / tail;
  } else {
    std::size_t n = 1;
    while (t < 1.0 / static_cast<double>(n + 1)) ++n;
    const double lo = 1.0 / static_cast<double>(n + 1), hi = 1.0 / static_cast<double>(n);
    u = (t - lo) / (hi - lo);
  }
  return 1 - 2 * u * (1 - u);
}

Outcome ac6() {
  Outcome o;
  // (a)
  const double step = 0.01;
  const auto ret = retraction_demo(step);
  const auto va = verify_cks(ret);
  const double g_max = 1 - step;
  o.require(va.pass, "(a) retraction fails");
  o.require(va.margin >= (1 - g_max) / (1 + g_max) - 1e-9, "(a) retraction margin too small");

  // (b)
  const std::size_t n_max = 10;
  const auto bz = bezier_field(n_max, 1e-4);
  const auto vb = verify_cks(bz);
  o.require(vb.pass, "(b) bezier fails");
  const auto& xs = *bz.domain.coords;
  double predicted = 0;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const auto k = bz.domain.nearest(1.0 / static_cast<double>(n));
    if (k > 0) predicted = std::max(predicted, bezier_norm_at(xs[k - 1], n_max));
    if (k + 1 < xs.size()) predicted = std::max(predicted, bezier_norm_at(xs[k + 1], n_max));
  }
  predicted = std::max(predicted, bezier_norm_at(xs[1], n_max));  // next to 0 = delta_inf
  o.require(vb.max_off_norm <= predicted + 1e-12, "(b) off-s0 max " + format_double(vb.max_off_norm) +
                                                      " above predicted " + format_double(predicted));
  o.require(std::fabs(bz.norm_at(bz.domain.nearest(5.0 / 12.0)) - 0.5) <= 1e-6,
            "(b) value at u = 1/2 is not 1/2");

  // (c)
  const auto coll = composition_field(GridCompact::discrete(2), GridCompact::discrete(1), {0, 0});
  const auto vc = verify_cks(coll);
  bool witness = false;
  for (const auto& r : vc.reasons) witness = witness || r.find("s=1, s=2 collide") != std::string::npos;
  o.require(!vc.pass && witness, "(c) collision not reported");

  // (d)
  const auto gd = gdelta_field(1e-3, {0.25, 0.75}, 0.2, 20);
  const auto vd = verify_cks(gd);
  o.require(vd.pass && vd.s0.size() == 2, "(d) gdelta fails");
  o.require(!gd.log.empty() && gd.log[0].find("renormalized") != std::string::npos,
            "(d) renormalization not logged");
  if (o.ok)
    o.detail = "margins " + format_double(va.margin) + ", " + format_double(vb.margin) + ", " +
               format_double(vd.margin);
  return o;
}

Outcome ac7() {
  Outcome o;
  const auto theta = std::get<PolyhedralSpace<double>>(
      load_space(std::string(UEMB_CORPUS_DIR) + "/theta_n.json"));
  const auto emb = build_uE(theta, build_u_suitable(theta), 1000);
  const auto cert = verify_u_embedding(emb, 1000, 0);
  o.require(cert.level == "evidence", "theta_n not on the float path");
  o.require(cert.failures.empty(), std::to_string(cert.failures.size()) + " sampling failures");
  o.require(cert.certified_u(), "theta_n not certified");
  o.require(cert.samples == 1000, "wrong sample count");
  if (o.ok) o.detail = "0 failures / " + std::to_string(cert.checked) + " functionals";
  return o;
}

std::pair<int, std::string> capture(const std::string& cmd) {
  std::array<char, 4096> buf{};
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {-1, ""};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  return {pclose(p), out};
}

Outcome ac8(const std::string& binary) {
  Outcome o;
  const std::vector<std::string> commands{
      "check l1_3",           "embed hexagon --seed 3", "embed theta_n",   "embed l1_3",
      "extend hexagon 1 -1/2", "cks bezier",            "cks gdelta",      "corpus list"};
  if (!binary.empty()) {
    for (const auto& c : commands) {
      const auto a = capture(binary + " --format json " + c + " 2>/dev/null");
      const auto b = capture(binary + " --format json " + c + " 2>/dev/null");
      o.require(a.first != -1 && !a.second.empty(), "could not run: " + c);
      o.require(a == b, "output differs: " + c);
    }
    return o;
  }
  cli::RunConfig cfg;
  for (const auto* name : {"hexagon", "theta_n", "l1_3"}) {
    const auto a = cli::cmd_embed(cli::resolve_space(name, cfg), cfg).render("json");
    const auto b = cli::cmd_embed(cli::resolve_space(name, cfg), cfg).render("json");
    o.require(a == b, std::string("output differs: embed ") + name);
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string binary = argc > 1 ? argv[1] : "";
  run("AC1", "classification table", 1.0, ac1);
  run("AC2", "uniqueness oracle equivalence", 30.0, ac2);
  run("AC3", "canonical embedding witnesses", 0, ac3);
  run("AC4", "Phelps support bound", 0, ac4);
  run("AC5", "positive/negative support law", 0, ac5);
  run("AC6", "C(K)->C(S) verifier", 0, ac6);
  run("AC7", "theta_n evidence-level U", 0, ac7);
  run("AC8", "deterministic JSON", 0, [&] { return ac8(binary); });
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
