#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "uemb/commands.hpp"

namespace {

int emit(const uemb::cli::Report& report, const uemb::cli::RunConfig& cfg) {
  const auto body = report.render(cfg.format);
  if (cfg.out) {
    std::ofstream out(*cfg.out, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write '" << *cfg.out << "'\n";
      return uemb::cli::kUsage;
    }
    out << body;
  } else {
    std::cout << body;
  }
  return report.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace uemb::cli;
  CLI::App app{"uemb: U-embeddings of polyhedral spaces into C(K)"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  app.add_option("--seed", cfg.seed, "seed for sampled functionals")->capture_default_str();
  app.add_option("--samples", cfg.samples, "random functionals per certificate")
      ->capture_default_str();
  app.add_option("--format", cfg.format, "report format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  app.add_option("--out", cfg.out, "write the report to a file instead of stdout");
  app.add_option("--tolerance", cfg.tolerance, "atom tolerance for C(K)->C(S) checks")
      ->capture_default_str();
  app.add_option("--corpus-dir", cfg.corpus_dir, "directory of built-in space files")
      ->capture_default_str();

  std::string space_arg;
  auto* check = app.add_subcommand("check", "classify a space (simplexoid, smoothness, faces)");
  check->add_option("space", space_arg, "space file or corpus name")->required();

  auto* embed = app.add_subcommand("embed", "build u_E and certify property U");
  embed->add_option("space", space_arg, "space file or corpus name")->required();

  std::vector<std::string> functional;
  auto* extend = app.add_subcommand("extend", "unique Hahn-Banach extension of a functional");
  extend->add_option("space", space_arg, "space file or corpus name")->required();
  extend->add_option("functional", functional, "coordinates, e.g. 1 -1/2")->required();

  std::string field_arg;
  CksOptions cks_opt;
  double step = 0;
  auto* cks = app.add_subcommand("cks", "verify a C(K)->C(S) embedding (demo or field file)");
  cks->add_option("field", field_arg, "retraction | bezier | composition | gdelta | field.json")
      ->required();
  cks->add_option("--N", cks_opt.n, "Bezier truncation")->capture_default_str();
  cks->add_option("--step", step, "grid step");
  cks->add_flag("--collide", cks_opt.collide, "non-injective composition demo");
  cks->add_option("--nmax", cks_opt.n_max, "G-delta truncation")->capture_default_str();

  auto* corpus = app.add_subcommand("corpus", "built-in example spaces");
  auto* corpus_list = corpus->add_subcommand("list", "list corpus entries");
  corpus->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*check) return emit(cmd_check(resolve_space(space_arg, cfg)), cfg);
    if (*embed) return emit(cmd_embed(resolve_space(space_arg, cfg), cfg), cfg);
    if (*extend) return emit(cmd_extend(resolve_space(space_arg, cfg), functional, cfg), cfg);
    if (*cks) {
      if (step > 0) cks_opt.step = step;
      return emit(cmd_cks(field_arg, cks_opt, cfg), cfg);
    }
    if (*corpus_list) return emit(cmd_corpus_list(cfg), cfg);
  } catch (const uemb::InternalConsistencyError& e) {
    std::cerr << "internal consistency failure: " << e.what() << "\n";
    return kInternal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
