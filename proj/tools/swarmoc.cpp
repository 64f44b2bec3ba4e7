#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "swarmoc/commands.hpp"
#include "swarmoc/errors.hpp"

namespace {

struct CommonFlags {
  std::string config_path;
  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<int> order;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "flat key = value config file")->required();
  cmd->add_option("--out", flags.out_dir, "output directory (overrides config)");
  cmd->add_option("--seed", flags.seed, "initial-data seed (overrides config)");
  cmd->add_option("--order", flags.order, "model order (overrides config)")
      ->check(CLI::IsMember({1, 2}));
}

swarmoc::RunConfig resolve(const CommonFlags& flags) {
  swarmoc::RunConfig cfg = swarmoc::load_config(flags.config_path);
  if (flags.out_dir) cfg.out_dir = *flags.out_dir;
  if (flags.seed) cfg.seed = *flags.seed;
  if (flags.order) cfg.order = *flags.order;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"optimal control of first/second-order consensus dynamics on the unit sphere"};
  app.require_subcommand(1);

  CommonFlags sim_flags, opt_flags, cmp_flags, grad_flags;
  bool flip_sign = false;

  CLI::App* sim = app.add_subcommand("simulate", "integrate the control-free model");
  add_common(sim, sim_flags);
  CLI::App* opt = app.add_subcommand("optimize", "solve the optimal control problem");
  add_common(opt, opt_flags);
  CLI::App* cmp = app.add_subcommand("compare",
                                     "controlled vs control-free runs from shared initial data");
  add_common(cmp, cmp_flags);
  CLI::App* grad = app.add_subcommand("gradcheck",
                                      "adjoint gradient vs central-difference oracle");
  add_common(grad, grad_flags);
  grad->add_flag("--flip-sign", flip_sign,
                 "negate the adjoint gradient before comparing (failure-path hook)")
      ->group("");  // hidden

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) return swarmoc::run_simulate(resolve(sim_flags));
    if (opt->parsed()) return swarmoc::run_optimize(resolve(opt_flags));
    if (cmp->parsed()) return swarmoc::run_compare(resolve(cmp_flags));
    if (grad->parsed()) return swarmoc::run_gradcheck(resolve(grad_flags), flip_sign);
  } catch (const swarmoc::ConfigError& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return 1;
  }
  return 1;
}
