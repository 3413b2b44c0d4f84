#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "dqi/config.hpp"
#include "dqi/errors.hpp"
#include "dqi/suite.hpp"

int main(int argc, char** argv) {
  CLI::App app{"star body dual volume and intersection body inequality runner"};
  app.require_subcommand(1);

  std::string config_path, out_dir, format;
  uint64_t seed = 0;
  int outer = 0, inner = 0;

  auto* opt_config =
      app.add_option("--config", config_path, "suite config: a JSON path or builtin:<name>")
          ->required();
  auto* opt_out = app.add_option("--out", out_dir, "output directory (default from config)");
  auto* opt_format =
      app.add_option("--format", format, "report format")->check(CLI::IsMember({"csv", "json"}));
  auto* opt_seed = app.add_option("--seed", seed, "seed override");
  auto* opt_outer = app.add_option("--outer-res", outer, "outer sphere resolution override");
  auto* opt_inner = app.add_option("--inner-res", inner, "subsphere resolution override");
  (void)opt_config;

  CLI::App* cmd_verify =
      app.add_subcommand("verify", "run the configured inequality checks")->fallthrough();
  CLI::App* cmd_converge =
      app.add_subcommand("converge", "evaluate the target along the resolution ladder")
          ->fallthrough();
  CLI::App* cmd_search =
      app.add_subcommand("search", "extremal search over a parameterized body family")
          ->fallthrough();
  (void)cmd_search;

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  dqi::ConfigOverrides ov;
  if (opt_seed->count()) ov.seed = seed;
  if (opt_outer->count()) ov.outer_res = outer;
  if (opt_inner->count()) ov.inner_res = inner;
  if (opt_out->count()) ov.out_dir = out_dir;
  if (opt_format->count()) ov.format = format;

  try {
    const dqi::SuiteConfig cfg = dqi::load_suite_config(config_path, ov);
    if (cmd_verify->parsed()) return dqi::run_verify(cfg, std::cout);
    if (cmd_converge->parsed()) return dqi::run_converge(cfg, std::cout);
    return dqi::run_search(cfg, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
