#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

#include "ballspec/experiments.hpp"
#include "ballspec/types.hpp"

namespace {

const char* kFooter = R"(Output columns
  csv   long form, header "table,row,column,value". Each table cell is one line.
        Tables: coefficients (q, abs, q_quarter_scaled, q_scaled), errors (q, e_inf, e_2),
        asymmetry, pos_residuals, printed_pair_residuals, trajectory, stability,
        negative_control, self_convergence. q is the 0-based flat index; the scaled
        columns use q+1.
        Self-checks follow as check:<name>,0,value|threshold|passed,<v>.
  json  {example, passed, params, tables[{name, columns, rows}], checks[...]}.
Numbers are printed with 17 significant digits.

Environment
  BALLSPEC_QUAD_PAD   extra Gauss-Jacobi nodes over the exactness minimum (default 8).

Exit status: 0 all checks passed, 1 some check failed (names on stderr), 2 usage error.)";

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral expansions on the disc and ball"};
  app.footer(kFooter);
  ballspec::RunConfig cfg;
  std::string format = "csv";
  int N = 0, K = 0, M = 0;
  double alpha = 0.0, beta = 0.0;
  auto* oN = app.add_option("--N", N, "radial degree");
  auto* oK = app.add_option("--K", K, "angular truncation");
  auto* oM = app.add_option("--M", M, "error grid resolution");
  auto* oa = app.add_option("--alpha", alpha, "Jacobi alpha");
  auto* ob = app.add_option("--beta", beta, "Jacobi beta");
  app.add_option("--example", cfg.example, "ex1..ex5, ball3d, pde-demo")
      ->check(CLI::IsMember(ballspec::example_names()));
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", cfg.out, "output path, - for stdout");
  app.add_option("--seed", cfg.seed, "RNG seed (pde-demo)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  if (*oN) cfg.N = N;
  if (*oK) cfg.K = K;
  if (*oM) cfg.M = M;
  if (*oa) cfg.alpha = alpha;
  if (*ob) cfg.beta = beta;

  try {
    cfg.format = ballspec::parse_format(format);
    const auto report = ballspec::run_example(cfg);
    ballspec::emit_report(report, cfg.format, cfg.out);
    if (!report.passed()) {
      for (const auto& c : report.checks) {
        if (!c.passed) {
          std::cerr << "FAILED " << c.name << ": " << ballspec::format_double(c.value) << " " << c.relation << " "
                    << ballspec::format_double(c.threshold) << "\n";
        }
      }
      return 1;
    }
    return 0;
  } catch (const ballspec::ParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ballspec::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
