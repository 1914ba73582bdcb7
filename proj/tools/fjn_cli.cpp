// Command-line front end: analytic evaluation, Monte Carlo cycle-time
// estimation and self-verification of fork-join networks.

#include <CLI11.hpp>

#include <iostream>

#include "fjn/cli.hpp"
#include "fjn/error.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Max-plus evaluation of acyclic fork-join networks"};
  app.require_subcommand(0, 1);
  CLI::App* run_cmd = app.add_subcommand("run", "evaluate a network (default)");

  fjn::cli::RunConfig config;
  std::string mode = "analytic";
  std::string format = "json";
  for (CLI::App* target : {static_cast<CLI::App*>(&app), run_cmd}) {
    target->add_option("--network", config.network,
                       "network JSON file or the built-in name 'paper-fig3'");
    target->add_option("--mode", mode, "analytic | simulate | verify")
        ->check(CLI::IsMember({"analytic", "simulate", "verify"}));
    target->add_option("--steps", config.steps, "cycles K per replication")
        ->check(CLI::PositiveNumber);
    target->add_option("--replications", config.replications, "independent replications")
        ->check(CLI::PositiveNumber);
    target->add_option("--seed", config.seed, "64-bit seed for every random draw");
    target->add_flag("--max-traffic", config.max_traffic,
                     "pin the arrival node to zero service time");
    target->add_option("--output", config.output, "output file (default: stdout)");
    target->add_option("--format", format, "json | csv")
        ->check(CLI::IsMember({"json", "csv"}));
  }

  CLI11_PARSE(app, argc, argv);

  try {
    config.mode = fjn::cli::parse_mode(mode);
    config.format = fjn::cli::parse_format(format);
  } catch (const fjn::InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return fjn::cli::kUsageError;
  }
  return fjn::cli::run(config, std::cout, std::cerr);
}
