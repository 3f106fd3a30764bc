#include <iostream>

#include <CLI11.hpp>

#include "hypdyn/cli.hpp"

int main(int argc, char** argv) {
  using namespace hypdyn::cli;

  CLI::App app{"hypdyn: iterated function systems on hyperbolic surfaces"};
  app.require_subcommand(1);

  GlobalOptions global;
  double tol_diam = 0.0;
  double tol_step = 0.0;
  double tol_gap = 0.0;
  app.add_option("--seed", global.seed, "RNG seed for randomized scenarios")->capture_default_str();
  app.add_option("--out", global.out, "output directory")->capture_default_str();
  auto* o_diam = app.add_option("--tol-diam", tol_diam, "detector image-diameter tolerance");
  auto* o_step = app.add_option("--tol-step", tol_step, "detector step tolerance");
  auto* o_gap = app.add_option("--tol-gap", tol_gap, "detector cluster-gap tolerance");
  app.add_flag("--plot", global.plot, "also write an SVG plot (orbit)");

  auto* dist = app.add_subcommand("dist", "Poincare distance between two points");
  std::string surface = "disk";
  double inner_radius = 0.0;
  std::string z;
  std::string w;
  dist->add_option("--surface", surface, "disk, half-plane, punctured-disk or annulus")->capture_default_str();
  dist->add_option("--inner-radius", inner_radius, "r of the annulus A(r,1)");
  dist->add_option("z", z, "first point, e.g. 0.3+0.2i")->required();
  dist->add_option("w", w, "second point")->required();

  auto* orbit = app.add_subcommand("orbit", "run an experiment config and write a CSV trace");
  std::string config;
  orbit->add_option("config", config, "path to a JSON experiment config")->required();

  auto* validate = app.add_subcommand("validate", "run a scenario (or all) and write JSON reports");
  std::string scenario;
  int J = 4;
  validate->add_option("scenario", scenario, "scenario id or 'all'")->required();
  validate->add_option("--J", J, "target count of the oscillating construction")->capture_default_str();

  // Global flags are accepted after the subcommand too.
  for (auto* sub : {dist, orbit, validate}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_code::kUsage;
  }
  if (*o_diam) global.tol_diam = tol_diam;
  if (*o_step) global.tol_step = tol_step;
  if (*o_gap) global.tol_gap = tol_gap;

  if (*dist) return cmd_dist(surface, inner_radius, z, w, std::cout, std::cerr);
  if (*orbit) return cmd_orbit(config, global, std::cout, std::cerr);
  return cmd_validate(scenario, J, global, std::cout, std::cerr);
}
