#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ballspec/basis.hpp"
#include "ballspec/report.hpp"

namespace ballspec {

struct RunConfig {
  std::string example = "ex5";  // ex1..ex5, ball3d, pde-demo
  std::optional<int> N;
  std::optional<int> K;
  std::optional<int> M;
  std::optional<double> alpha;
  std::optional<double> beta;
  Format format = Format::Csv;
  std::string out = "-";
  std::uint64_t seed = 12345;
};

const std::vector<std::string>& example_names();

/// Fills unset fields with the example's defaults (ex1-5: N=6, K=5, M=6; ball3d: N=5, K=3, M=6;
/// pde-demo: N=16, K=4).
RunConfig resolve_defaults(const RunConfig& cfg);

/// (1-r) e^r e^{i(theta + 1/2)}
Complex disc_test_function(double r, double theta);
/// (1-r) e^r e^{i(1/2 + theta_1 + 2 theta_2)}
Complex ball_test_function(double r, double theta1, double theta2);

/// Runs one example and returns its tables and self-checks. Throws ParameterError for an
/// unknown example name or invalid parameters.
ExampleReport run_example(const RunConfig& cfg);

}  // namespace ballspec
