#include "ballspec/report.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "ballspec/types.hpp"

namespace ballspec {

bool ExampleReport::passed() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

const Table* ExampleReport::table(const std::string& name) const {
  for (const auto& t : tables) {
    if (t.name == name) return &t;
  }
  return nullptr;
}

const Check* ExampleReport::check(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

Format parse_format(const std::string& s) {
  if (s == "csv") return Format::Csv;
  if (s == "json") return Format::Json;
  throw ParameterError("unknown format '" + s + "' (expected csv or json)");
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void emit_csv(const ExampleReport& r, std::ostream& out) {
  out << "table,row,column,value\n";
  for (const auto& t : r.tables) {
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      for (std::size_t j = 0; j < t.rows[i].size() && j < t.columns.size(); ++j) {
        out << t.name << ',' << i << ',' << t.columns[j] << ',' << format_double(t.rows[i][j]) << '\n';
      }
    }
  }
  for (const auto& c : r.checks) {
    out << "check:" << c.name << ",0,value," << format_double(c.value) << '\n';
    out << "check:" << c.name << ",0,threshold," << format_double(c.threshold) << '\n';
    out << "check:" << c.name << ",0,passed," << (c.passed ? 1 : 0) << '\n';
  }
}

nlohmann::json to_json(const ExampleReport& r) {
  nlohmann::json j;
  j["example"] = r.example;
  j["passed"] = r.passed();
  nlohmann::json params = nlohmann::json::array();
  for (const auto& [k, v] : r.params) params.push_back({{"name", k}, {"value", v}});
  j["params"] = params;
  nlohmann::json tables = nlohmann::json::array();
  for (const auto& t : r.tables) tables.push_back({{"name", t.name}, {"columns", t.columns}, {"rows", t.rows}});
  j["tables"] = tables;
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"name", c.name},
                      {"value", c.value},
                      {"threshold", c.threshold},
                      {"relation", c.relation},
                      {"passed", c.passed}});
  }
  j["checks"] = checks;
  return j;
}

}  // namespace

void emit_report(const ExampleReport& report, Format format, std::ostream& out) {
  if (format == Format::Csv) {
    emit_csv(report, out);
  } else {
    out << to_json(report).dump(2) << '\n';
  }
}

void emit_report(const ExampleReport& report, Format format, const std::string& path) {
  if (path.empty() || path == "-") {
    emit_report(report, format, std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + path);
  emit_report(report, format, f);
  f.flush();
  if (!f) throw std::runtime_error("write failed: " + path);
}

ExampleReport parse_report_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  ExampleReport r;
  r.example = j.at("example").get<std::string>();
  for (const auto& p : j.at("params")) r.params.emplace_back(p.at("name").get<std::string>(), p.at("value").get<std::string>());
  for (const auto& t : j.at("tables")) {
    Table tab;
    tab.name = t.at("name").get<std::string>();
    tab.columns = t.at("columns").get<std::vector<std::string>>();
    tab.rows = t.at("rows").get<std::vector<std::vector<double>>>();
    r.tables.push_back(std::move(tab));
  }
  for (const auto& c : j.at("checks")) {
    r.checks.push_back(Check{c.at("name").get<std::string>(), c.at("value").get<double>(),
                             c.at("threshold").get<double>(), c.at("relation").get<std::string>(),
                             c.at("passed").get<bool>()});
  }
  return r;
}

std::string matrix_to_csv(const Eigen::MatrixXd& A) {
  std::ostringstream os;
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      if (j) os << ',';
      os << format_double(A(i, j));
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace ballspec
