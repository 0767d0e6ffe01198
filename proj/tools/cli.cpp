#include "cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "fracorder/analysis.hpp"
#include "fracorder/errors.hpp"
#include "fracorder/operators.hpp"

namespace fracorder::cli {
namespace {

std::string shortest(double value) {
  char buffer[64];
  auto const result = std::to_chars(buffer, buffer + sizeof buffer, value);
  return {buffer, result.ptr};
}

double parse_real(std::string_view text, std::string_view flag) {
  double value = 0.0;
  auto const* const end = text.data() + text.size();
  auto const result = std::from_chars(text.data(), end, value);
  if (result.ec != std::errc{} || result.ptr != end) {
    throw ArgumentError(std::string(flag) + ": '" + std::string(text) + "' is not a number");
  }
  return value;
}

std::vector<double> parse_real_list(std::string_view text, std::string_view flag) {
  std::vector<double> values;
  while (true) {
    auto const comma = text.find(',');
    values.push_back(parse_real(text.substr(0, comma), flag));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return values;
}

Interval parse_interval(const std::string& text) {
  auto const values = parse_real_list(text, "--interval");
  if (values.size() != 2) throw ArgumentError("--interval: expected a,b");
  try {
    return Interval(values[0], values[1]);
  } catch (const DomainError& e) {
    throw ArgumentError(std::string("--interval: ") + e.what());
  }
}

// Re-raises a library precondition failure as a usage error naming the flag.
template <class Fn>
auto with_flag(std::string_view flag, Fn&& fn) {
  try {
    return fn();
  } catch (const ArgumentError&) {
    throw;
  } catch (const DomainError& e) {
    throw ArgumentError(std::string(flag) + ": " + e.what());
  }
}

unsigned default_threads() {
  if (const char* env = std::getenv("FRACORDER_THREADS"); env != nullptr && *env != '\0') {
    double const value = parse_real(env, "FRACORDER_THREADS");
    if (!(value >= 1.0) || value != static_cast<unsigned>(value)) {
      throw ArgumentError("FRACORDER_THREADS: expected a positive integer");
    }
    return static_cast<unsigned>(value);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void write_report_header(std::ostream& out) { out << "kind,beta,p,a,b,value,n_eval_points\n"; }

void write_report(std::ostream& out, const ErrorReport& r) {
  out << to_string(r.kind) << ',' << shortest(r.beta) << ',' << to_string(r.p) << ','
      << shortest(r.interval.a()) << ',' << shortest(r.interval.b()) << ','
      << format_value(r.value) << ',' << r.n_eval_points << '\n';
}

ErrorOptions error_options(const RunConfig& config) {
  ErrorOptions options;
  options.tol = config.tol;
  options.n_grid = config.n_grid;
  options.scheme.n_nodes = config.n_nodes;
  return options;
}

const Interval& require_interval(const RunConfig& config) {
  if (!config.interval) throw ArgumentError("--interval is required");
  return *config.interval;
}

void run_derive(const RunConfig& config, std::ostream& out) {
  auto const f = with_flag("-f", [&] { return TestFunction::parse(config.function_id); });
  auto const order = with_flag("-a", [&] { return FractionalOrder(config.alpha_or_beta); });
  auto const& interval = require_interval(config);
  if (!(config.t > interval.a() && config.t <= interval.b())) {
    throw ArgumentError("-t: must lie in (a, b] of --interval");
  }
  QuadratureScheme scheme;
  scheme.n_nodes = config.n_nodes;
  double const value =
      fractional_derivative(config.operator_kind, f, order, interval.a(), config.t, scheme);
  out << "kind,alpha,t,value\n"
      << to_string(config.operator_kind) << ',' << shortest(order.alpha()) << ','
      << shortest(config.t) << ',' << format_value(value) << '\n';
}

void run_error(const RunConfig& config, std::ostream& out) {
  auto const f = with_flag("-f", [&] { return TestFunction::parse(config.function_id); });
  with_flag("--beta", [&] { return FractionalOrder::from_beta(config.alpha_or_beta); });
  auto const report = error_norm(f, config.operator_kind, config.p, config.alpha_or_beta,
                                 require_interval(config), error_options(config));
  write_report_header(out);
  write_report(out, report);
}

void run_order(const RunConfig& config, std::ostream& out) {
  auto const f = with_flag("-f", [&] { return TestFunction::parse(config.function_id); });
  if (config.betas.empty()) throw ArgumentError("--betas is required");
  with_flag("--betas", [&] {
    for (double beta : config.betas) FractionalOrder::from_beta(beta);
    for (std::size_t i = 1; i < config.betas.size(); ++i) {
      if (!(config.betas[i] < config.betas[i - 1])) {
        throw DomainError("betas must be strictly decreasing");
      }
    }
    return 0;
  });
  unsigned const threads = config.threads ? *config.threads : default_threads();
  auto const reports = error_sweep(f, config.operator_kind, config.p, config.betas,
                                   require_interval(config), error_options(config), threads);
  write_report_header(out);
  for (auto const& r : reports) write_report(out, r);
  out.flush();
  auto const fit = fit_order(reports);
  out << "r_hat,log_c_hat,residual\n"
      << format_value(fit.r_hat) << ',' << format_value(fit.log_c_hat) << ','
      << format_value(fit.residual) << '\n';
}

void run_ratio(const RunConfig& config, std::ostream& out) {
  auto const result = with_flag("--T", [&] {
    return config.beta ? ratio_cf_over_c_l1(config.m, config.T, *config.beta)
                       : ratio_limit(config.m, config.T);
  });
  out << "m,T,beta,value\n"
      << result.m << ',' << shortest(result.T) << ','
      << (result.beta ? shortest(*result.beta) : std::string()) << ','
      << format_value(result.value) << '\n';
}

void run_table1(std::ostream& out) {
  out << "m,ratio_T1,ratio_Tm1\n";
  for (auto const& row : table1()) {
    out << row.m << ',' << format_significant(row.ratio_t1, 10) << ','
        << format_significant(row.ratio_tm1, 10) << '\n';
  }
}

void run_figures(const RunConfig& config, std::ostream& out) {
  auto const f = with_flag("-f", [&] { return TestFunction::parse(config.function_id); });
  auto const& interval = require_interval(config);
  std::vector<FractionalOrder> orders;
  for (double alpha : config.alphas) {
    orders.push_back(with_flag("--alphas", [&] { return FractionalOrder(alpha); }));
  }
  if (config.points < 1) throw ArgumentError("--points: must be at least 1");
  QuadratureScheme scheme;
  scheme.n_nodes = config.n_nodes;
  double const a = interval.a();
  double const step = interval.length() / static_cast<double>(config.points);
  out << "t,alpha,kind,value\n";
  for (std::size_t i = 1; i <= config.points; ++i) {
    double const t = i == config.points ? interval.b() : a + static_cast<double>(i) * step;
    double const fprime = derivative_limit(f, t, Side::Right);
    for (auto const& order : orders) {
      std::string const prefix = shortest(t) + ',' + shortest(order.alpha()) + ',';
      double const c = caputo(f, order, a, t, scheme);
      double const rl = riemann_liouville(f, order, a, t, scheme);
      double const cf = caputo_fabrizio(f, order, a, t, {scheme.n_nodes,
                                        QuadratureScheme::Kind::ExactExponential});
      out << prefix << "fprime," << format_value(fprime) << '\n'
          << prefix << "RL," << format_value(rl) << '\n'
          << prefix << "C," << format_value(c) << '\n'
          << prefix << "CF," << format_value(cf) << '\n';
    }
  }
}

}  // namespace

std::string format_value(double value) {
  std::string text = shortest(value);
  if (text.find_first_of(".eni") == std::string::npos) text += ".0";
  return text;
}

std::string format_significant(double value, int digits) {
  char buffer[64];
  auto const result =
      std::to_chars(buffer, buffer + sizeof buffer, value, std::chars_format::general, digits);
  std::string text(buffer, result.ptr);
  if (text.find_first_of("eni") != std::string::npos) return text;
  // %g drops trailing zeros; restore them so every value shows `digits` digits.
  int significant = 0;
  bool leading = true;
  for (char c : text) {
    if (c >= '0' && c <= '9') {
      if (c != '0') leading = false;
      if (!leading) ++significant;
    }
  }
  if (significant < digits) {
    if (text.find('.') == std::string::npos) text += '.';
    text.append(static_cast<std::size_t>(digits - significant), '0');
  }
  return text;
}

std::vector<double> parse_beta_list(const std::string& text) {
  constexpr std::string_view kGeometric = "geometric:";
  if (text.starts_with(kGeometric)) {
    auto const values = parse_real_list(std::string_view(text).substr(kGeometric.size()), "--betas");
    if (values.size() != 3 || values[2] != static_cast<int>(values[2])) {
      throw ArgumentError("--betas: expected geometric:start,end,per_decade");
    }
    return with_flag("--betas", [&] {
      return geometric_betas(values[0], values[1], static_cast<int>(values[2]));
    });
  }
  return parse_real_list(text, "--betas");
}

std::optional<RunConfig> parse_command_line(int argc, const char* const* argv, std::ostream& out) {
  CLI::App app{"Fractional derivative laboratory: operators, error norms and convergence orders"};
  app.require_subcommand(1);

  auto add_common = [](CLI::App* sub) {
    sub->add_option("--out", "Write CSV to this file instead of stdout");
    sub->add_option("--nodes", "Quadrature nodes when no closed form exists (default 4096)");
  };
  auto add_error_flags = [&](CLI::App* sub) {
    sub->add_option("-f,--function", "Test function id")->required();
    sub->add_option("-k,--kind", "Operator: RL, C or CF")->required();
    sub->add_option("-p,--norm", "Norm: 1 or inf")->required();
    sub->add_option("--interval", "Interval a,b")->required();
    sub->add_option("--tol", "Absolute L1 tolerance (default 1e-8)");
    sub->add_option("--grid", "L-infinity grid points (default 20001)");
    add_common(sub);
  };

  auto* derive = app.add_subcommand("derive", "Evaluate one fractional derivative");
  derive->add_option("-f,--function", "Test function id")->required();
  derive->add_option("-k,--kind", "Operator: RL, C or CF")->required();
  derive->add_option("-a,--alpha", "Order alpha in (0,1)")->required();
  derive->add_option("--interval", "Interval a,b")->required();
  derive->add_option("-t", "Evaluation point in (a,b]")->required();
  add_common(derive);

  auto* error = app.add_subcommand("error", "Error norm at one beta");
  add_error_flags(error);
  error->add_option("--beta", "beta = 1 - alpha in (0,1)")->required();

  auto* order = app.add_subcommand("order", "Beta sweep and order-of-convergence fit");
  add_error_flags(order);
  order->add_option("--betas", "geometric:start,end,per_decade or a comma list")->required();
  order->add_option("--threads", "Worker threads (default FRACORDER_THREADS or all cores)");

  auto* ratio = app.add_subcommand("ratio", "CF-over-C L1 error ratio for t^m on (0,T)");
  ratio->add_option("--m", "Power m >= 2")->required();
  ratio->add_option("--T", "Interval end T in (0, m-1]")->required();
  ratio->add_option("--beta", "Finite beta; the beta -> 0 limit when omitted");
  add_common(ratio);

  auto* table = app.add_subcommand("table1", "Limit ratios for m = 3..6, T = 1 and T = m-1");
  add_common(table);

  auto* figures = app.add_subcommand("figures", "f' and RL, C, CF derivatives on a grid");
  figures->add_option("-f,--function", "Test function id")->required();
  figures->add_option("--interval", "Interval a,b")->required();
  figures->add_option("--alphas", "Comma-separated orders (default 0.5,0.75,0.9,0.99)");
  figures->add_option("--points", "Grid points in (a,b] (default 500)");
  add_common(figures);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw ArgumentError(e.what());
  }

  auto* const chosen = app.get_subcommands().front();
  auto const value_of = [chosen](const std::string& name) -> std::optional<std::string> {
    auto const* option = chosen->get_option_no_throw(name);
    if (option == nullptr || option->count() == 0) return std::nullopt;
    return option->as<std::string>();
  };
  auto const real_of = [&](const std::string& name, const std::string& flag) {
    auto const text = value_of(name);
    return text ? std::optional<double>(parse_real(*text, flag)) : std::nullopt;
  };
  auto const count_of = [&](const std::string& name, const std::string& flag,
                            std::size_t minimum) -> std::optional<std::size_t> {
    auto const value = real_of(name, flag);
    if (!value) return std::nullopt;
    if (!(*value >= static_cast<double>(minimum)) || *value != std::floor(*value) ||
        *value > 1e12) {
      throw ArgumentError(flag + ": expected an integer >= " + std::to_string(minimum));
    }
    return static_cast<std::size_t>(*value);
  };

  RunConfig config;
  std::string const name = chosen->get_name();
  if (name == "derive") config.subcommand = Subcommand::Derive;
  if (name == "error") config.subcommand = Subcommand::Error;
  if (name == "order") config.subcommand = Subcommand::Order;
  if (name == "ratio") config.subcommand = Subcommand::Ratio;
  if (name == "table1") config.subcommand = Subcommand::Table1;
  if (name == "figures") config.subcommand = Subcommand::Figures;

  if (auto v = value_of("--function")) config.function_id = *v;
  if (auto v = value_of("--kind")) {
    config.operator_kind = with_flag("-k", [&] { return parse_operator_kind(*v); });
  }
  if (auto v = value_of("--norm")) config.p = with_flag("-p", [&] { return parse_norm_kind(*v); });
  if (auto v = real_of("--alpha", "-a")) config.alpha_or_beta = *v;
  if (auto v = real_of("-t", "-t")) config.t = *v;
  if (auto v = value_of("--interval")) config.interval = parse_interval(*v);
  if (auto v = value_of("--betas")) config.betas = parse_beta_list(*v);
  if (auto v = value_of("--alphas")) config.alphas = parse_real_list(*v, "--alphas");
  if (auto v = count_of("--points", "--points", 1)) config.points = *v;
  if (auto v = count_of("--m", "--m", 2)) config.m = static_cast<int>(*v);
  if (auto v = real_of("--T", "--T")) config.T = *v;
  if (name == "ratio") {
    config.beta = real_of("--beta", "--beta");
  } else if (auto v = real_of("--beta", "--beta")) {
    config.alpha_or_beta = *v;
  }
  if (auto v = count_of("--nodes", "--nodes", 2)) config.n_nodes = *v;
  if (auto v = real_of("--tol", "--tol")) {
    if (!(*v > 0.0)) throw ArgumentError("--tol: must be positive");
    config.tol = *v;
  }
  if (auto v = count_of("--grid", "--grid", 2)) config.n_grid = *v;
  if (auto v = count_of("--threads", "--threads", 1)) config.threads = static_cast<unsigned>(*v);
  if (auto v = value_of("--out")) config.output_path = *v;
  return config;
}

void run(const RunConfig& config, std::ostream& out) {
  switch (config.subcommand) {
    case Subcommand::Derive:
      return run_derive(config, out);
    case Subcommand::Error:
      return run_error(config, out);
    case Subcommand::Order:
      return run_order(config, out);
    case Subcommand::Ratio:
      return run_ratio(config, out);
    case Subcommand::Table1:
      return run_table1(out);
    case Subcommand::Figures:
      return run_figures(config, out);
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  try {
    auto const config = parse_command_line(argc, argv, out);
    if (!config) return 0;
    if (config->output_path) {
      std::ofstream file(*config->output_path);
      if (!file) throw ArgumentError("--out: cannot open '" + *config->output_path + "'");
      run(*config, file);
      if (!file.flush()) throw ArgumentError("--out: write failed");
    } else {
      run(*config, out);
    }
    return 0;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace fracorder::cli
