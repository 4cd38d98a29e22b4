#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "qsu2/cli.hpp"

namespace {

struct RawArgs {
  std::string k_text;
  std::string boundary_text;
};

void parse_int_list(const std::string& text, std::vector<std::int64_t>& out) {
  out = qsu2::parse_k_range(text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical laboratory for quantum SU(2) mapping class group representations"};
  app.require_subcommand(1);

  qsu2::RunConfig config;
  RawArgs raw;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", config.out_path, "Output file (default: $QSU2_OUT_DIR or stdout)");
    sub->add_option("--seed", config.seed, "RNG seed (default 0)");
  };

  auto* six_j = app.add_subcommand("six-j", "F-matrix for a boundary 4-tuple");
  six_j->add_option("--r", config.r, "Root parameter r = k+2");
  six_j->add_option("--k", raw.k_text, "Level k");
  six_j->add_option("--boundary", raw.boundary_text, "Four labels, e.g. 1,1,1,1")->required();
  six_j->add_option("--format", config.format, "json");
  add_common(six_j);

  auto* torus = app.add_subcommand("torus-rep", "Torus representation, relations and residuals");
  torus->add_option("--k", raw.k_text, "Level k")->required();
  add_common(torus);

  auto* sphere = app.add_subcommand("sphere-rep", "Almost-invariant vector report for M_{0,4}");
  sphere->add_option("--r", config.r, "Root parameter r = k+2");
  sphere->add_option("--k", raw.k_text, "Level k");
  sphere->add_option("--f-exponent", config.f_exponent, "Boundary label exponent in (0, 1/2)");
  add_common(sphere);

  auto* sweep = app.add_subcommand("gap-sweep", "Spectral-gap sweep over levels");
  sweep->add_option("--family", config.family, "torus | m04_tensor")->required();
  sweep->add_option("--k", raw.k_text, "Level range, e.g. 1..20 or 998,9998")->required();
  sweep->add_option("--f-exponent", config.f_exponent, "m04_tensor boundary exponent");
  sweep->add_option("--format", config.format, "csv | json");
  add_common(sweep);

  auto* converge = app.add_subcommand("converge", "Metaplectic convergence report");
  converge->add_option("--f", config.function_name, "hermite1 | gaussian | indicator(a,b)");
  converge->add_option("--k", raw.k_text, "Level list, e.g. 256,1024,4096")->required();
  converge->add_option("--x-max", config.quad_x_max, "Quadrature window half-width");
  converge->add_option("--quad-step", config.quad_step, "Quadrature step");
  add_common(converge);

  auto* factor = app.add_subcommand("factor-check", "Congruence-level probe at an odd prime");
  factor->add_option("--prime", config.prime, "Odd prime p")->required();
  factor->add_option("--trials", config.trials, "Word pairs per candidate");
  factor->add_option("--max-len", config.max_word_length, "Maximum word length");
  factor->add_option("--tol", config.tol, "Projective distance tolerance");
  add_common(factor);

  auto* gauss = app.add_subcommand("gaussian", "Lattice Gaussian residuals under S and T");
  gauss->add_option("--r", config.r, "Root parameter r = k+2");
  gauss->add_option("--k", raw.k_text, "Level k");
  gauss->add_option("--width", config.width, "Gaussian width (1 = self-dual)");
  add_common(gauss);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  config.command = app.get_subcommands().front()->get_name();
  if (config.command == "factor-check" && factor->count("--tol") == 0) config.tol = 1e-8;

  try {
    if (!raw.k_text.empty()) parse_int_list(raw.k_text, config.k_values);
    if (!raw.boundary_text.empty()) parse_int_list(raw.boundary_text, config.boundary);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }

  return qsu2::run(config, std::cerr);
}
