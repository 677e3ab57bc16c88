#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sublinear/conditions.hpp"
#include "sublinear/expression.hpp"
#include "sublinear/iteration.hpp"
#include "sublinear/system_spec.hpp"

namespace sublinear::runner {

enum class Command { solve, check_conditions, exhaust, poisson_test };

std::string_view to_string(Command c);
Command command_from_string(std::string_view name);

/// Parse failure with source position (line is 1-based, 0 if unknown).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& source, int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

struct DomainConfig {
  enum class Type { rectangle, masked, strip, interval };
  Type type = Type::rectangle;
  Interval x{0.0, 1.0};
  Interval y{0.0, 1.0};
  double spacing = 1.0 / 64.0;
  std::optional<Expression> indicator;  ///< masked: interior where expr > 0
  double halfwidth = 0.5;               ///< strip
  double length = 8.0;                  ///< strip

  GridPtr build() const;
};

struct OutputConfig {
  std::filesystem::path directory = "out";
  bool csv = true;
  bool binary = false;
  std::filesystem::path report = "report.json";
};

/// Parsed run specification. Unknown keys are rejected.
struct RunConfig {
  std::optional<Command> command;
  DomainConfig domain;

  bool has_system = false;
  NonlinearSystem system;
  std::vector<Expression> lambdas;
  PositivityBall ball;

  double delta = 1.0;
  StoppingCriteria criteria;
  std::optional<LinearSolveSettings> linear;
  SamplingOptions sampling;
  std::vector<double> exhaustion_lengths;
  std::optional<Expression> poisson_rhs;
  OutputConfig output;

  std::string source_name;
  std::string source_text;

  SystemDefinition definition() const;
};

/// Parses YAML text. Every referenced constant is validated against its
/// module's invariants (a SpecError becomes a ConfigError naming it).
RunConfig parse_config(const std::string& text, const std::string& source_name = "<config>");
RunConfig load_config(const std::filesystem::path& path);

}  // namespace sublinear::runner
