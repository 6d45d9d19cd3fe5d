#pragma once

#include <optional>
#include <string>

#include "json.hpp"

namespace acsv::cli {

enum class Mode { comb, general, approx_crit };
enum class OutputFormat { text, json };

struct RunConfig {
  std::string numer = "1";
  std::string denom;
  std::optional<std::string> direction;  // comma separated, default all ones
  Mode mode = Mode::general;
  unsigned long seed = 0;
  double tol = 1e-10;
  long max_refine_bits = 4096;
  std::string start_system = "total-degree";
  OutputFormat format = OutputFormat::text;
  int digits = 2;
  int terms = 10;
};

/// Input or configuration problem; the tool exits with status 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommandResult {
  nlohmann::ordered_json document;
  std::string text;
  int exit_code = 0;
};

CommandResult cmd_solve(const RunConfig& cfg);
CommandResult cmd_oracle(const RunConfig& cfg);
CommandResult cmd_critical(const RunConfig& cfg);

Mode parse_mode(const std::string& s);
std::string to_string(Mode m);

/// Shortest decimal that reads back as v.
std::string shortest_double(double v);

}  // namespace acsv::cli
