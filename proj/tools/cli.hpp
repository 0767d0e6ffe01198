#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fracorder/errors.hpp"
#include "fracorder/fractional_order.hpp"
#include "fracorder/funcat.hpp"
#include "fracorder/norms.hpp"

namespace fracorder::cli {

enum class Subcommand { Derive, Error, Order, Ratio, Table1, Figures };

/// Parsed command line. Fields not used by the subcommand keep their
/// defaults.
struct RunConfig {
  Subcommand subcommand = Subcommand::Table1;
  std::string function_id;
  OperatorKind operator_kind = OperatorKind::Caputo;
  double alpha_or_beta = 0.5;  // alpha for derive, beta for error
  std::optional<Interval> interval;
  NormKind p = NormKind::L1;
  std::vector<double> betas;
  double t = 0.0;
  std::vector<double> alphas{0.5, 0.75, 0.9, 0.99};
  std::size_t points = 500;
  int m = 3;
  double T = 1.0;
  std::optional<double> beta;  // ratio at finite beta
  std::size_t n_nodes = 4096;
  double tol = 1e-8;
  std::size_t n_grid = 20001;
  std::optional<std::string> output_path;
  std::optional<unsigned> threads;
};

/// Usage error: a flag or its value is invalid. Maps to exit status 2.
class ArgumentError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Parses argv (argv[0] is the program name). Returns std::nullopt after
/// printing help to `out`. Throws ArgumentError.
std::optional<RunConfig> parse_command_line(int argc, const char* const* argv, std::ostream& out);

/// Writes the CSV for `config` to `out`. Throws DomainError or
/// NumericalError from the library.
void run(const RunConfig& config, std::ostream& out);

/// Full program: parse, run, report. Returns the exit status
/// (0 success, 2 argument or domain error, 3 numerical error).
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Shortest round-trip text; integral values keep a trailing ".0".
std::string format_value(double value);

/// Exactly `digits` significant digits, fixed notation when possible.
std::string format_significant(double value, int digits);

/// "geometric:start,end,per_decade" or a comma-separated list.
std::vector<double> parse_beta_list(const std::string& text);

}  // namespace fracorder::cli
