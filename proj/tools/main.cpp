#include <iostream>

#include "CLI11.hpp"
#include "cli.hpp"

int main(int argc, char** argv) {
  using namespace acsv::cli;
  CLI::App app{"Minimal critical points and diagonal asymptotics of rational generating functions"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string mode = "general";
  std::string format = "text";
  bool comb = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--num", cfg.numer, "numerator polynomial")->default_str("1");
    sub->add_option("--den", cfg.denom, "denominator polynomial")->required();
    sub->add_option("--direction", cfg.direction, "comma separated positive integers, default all ones");
    sub->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}))->default_str("text");
    sub->add_option("--digits", cfg.digits, "significant digits in formatted output")->default_str("2");
  };
  auto add_solver = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "random seed")->default_str("0");
    sub->add_option("--tol", cfg.tol, "path tracking endpoint tolerance")->default_str("1e-10");
    sub->add_option("--max-refine-bits", cfg.max_refine_bits, "precision cap for refinement")->default_str("4096");
    sub->add_option("--start-system", cfg.start_system, "total-degree or polyhedral")
        ->check(CLI::IsMember({"total-degree", "polyhedral"}))
        ->default_str("total-degree");
  };

  CLI::App* solve = app.add_subcommand("solve", "find minimal critical points and the leading asymptotic term");
  add_common(solve);
  add_solver(solve);
  solve->add_flag("--comb", comb, "the function is known to be combinatorial");
  solve->add_option("--mode", mode, "comb, general or approx-crit")
      ->check(CLI::IsMember({"comb", "general", "approx-crit"}))
      ->default_str("general");

  CLI::App* oracle = app.add_subcommand("oracle", "exact diagonal coefficients by series expansion");
  add_common(oracle);
  oracle->add_option("--terms", cfg.terms, "number of diagonal terms")->default_str("10");

  CLI::App* critical = app.add_subcommand("critical", "certified critical points and solution counts");
  add_common(critical);
  add_solver(critical);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    cfg.mode = comb ? Mode::comb : parse_mode(mode);
    cfg.format = format == "json" ? OutputFormat::json : OutputFormat::text;
    CommandResult out;
    if (solve->parsed())
      out = cmd_solve(cfg);
    else if (oracle->parsed())
      out = cmd_oracle(cfg);
    else
      out = cmd_critical(cfg);
    if (cfg.format == OutputFormat::json)
      std::cout << out.document.dump(2) << "\n";
    else
      std::cout << out.text;
    return out.exit_code;
  } catch (const ConfigError& e) {
    std::cerr << "acsv: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "acsv: " << e.what() << "\n";
    return 1;
  }
}
