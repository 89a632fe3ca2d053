#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace ballspec {

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct Check {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  std::string relation;  // "<=", ">=", "<", ">", "==", "in[lo,hi]" style text for display
  bool passed = false;
};

struct ExampleReport {
  std::string example;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<Table> tables;
  std::vector<Check> checks;

  bool passed() const;
  const Table* table(const std::string& name) const;
  const Check* check(const std::string& name) const;
};

enum class Format { Csv, Json };

Format parse_format(const std::string& s);

/// %.17g
std::string format_double(double v);

/// CSV (long form): header "table,row,column,value"; one line per table cell, then per check
/// the lines "check:<name>,0,value|threshold|passed,<v>". JSON: the full report object.
void emit_report(const ExampleReport& report, Format format, std::ostream& out);
/// Writes to path; "-" or empty writes to stdout. Throws std::runtime_error on I/O failure.
void emit_report(const ExampleReport& report, Format format, const std::string& path);

ExampleReport parse_report_json(const std::string& text);

std::string matrix_to_csv(const Eigen::MatrixXd& A);

}  // namespace ballspec
