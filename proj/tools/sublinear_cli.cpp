#include <iostream>

#include "CLI11.hpp"
#include "runner/execute.hpp"

int main(int argc, char** argv) {
  using namespace sublinear::runner;

  CLI::App app{"Monotone-iteration solver for weakly coupled sublinear elliptic systems"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;

  struct Sub {
    const char* name;
    const char* help;
    Command command;
  };
  const Sub subs[] = {
      {"solve", "Certify a subsolution and run the monotone iteration", Command::solve},
      {"check-conditions", "Sample the structural hypotheses (a)-(d)", Command::check_conditions},
      {"exhaust", "Solve on nested truncations of a strip", Command::exhaust},
      {"poisson-test", "Solve one linear Dirichlet problem and check the sup bound",
       Command::poisson_test},
  };
  for (const auto& s : subs) {
    auto* sub = app.add_subcommand(s.name, s.help);
    sub->add_option("--config", config_path, "Run configuration (YAML)")->required();
    sub->add_option("--out", out_dir, "Output directory (overrides output.directory)");
    sub->add_option("--seed", seed, "Seed for the condition samplers");
  }

  CLI11_PARSE(app, argc, argv);

  ExecuteOptions options;
  for (const auto& s : subs) {
    if (app.got_subcommand(s.name)) {
      options.command = s.command;
      const auto* sub = app.get_subcommand(s.name);
      if (sub->count("--out")) options.out_dir = out_dir;
      if (sub->count("--seed")) options.seed = seed;
    }
  }

  const ExecuteResult result = execute(std::filesystem::path(config_path), options);
  if (!result.message.empty()) std::cerr << "sublinear: " << result.message << '\n';
  for (const auto& f : result.files) std::cout << f.string() << '\n';
  return result.exit_code;
}
