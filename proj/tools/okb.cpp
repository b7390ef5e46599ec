#include <CLI11.hpp>

#include "okb/cli.hpp"

int main(int argc, char** argv) {
  okb::cli::RunConfig config;
  CLI::App app{"Okounkov bodies of toric and surface divisors"};
  app.add_option("command", config.command, "command to run")
      ->required()
      ->check(CLI::IsMember(okb::cli::commands()));
  app.add_option("--in", config.inputs, "input file(s)")->required();
  app.add_option("--divisor", config.divisor, "divisor file");
  app.add_option("--flag", config.flag, "flag or orbit-cone file");
  app.add_option("--out", config.out, "output file (directory with several inputs)");
  app.add_option("--svg", config.svg, "SVG output (directory with several inputs)");
  app.add_option("--kind", config.kind, "body kind for toric-body")
      ->check(CLI::IsMember({"valuative", "limiting"}));
  app.add_option("--jobs", config.jobs, "worker threads")->check(CLI::PositiveNumber);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  return okb::cli::run(config);
}
