#include "zonemv/app/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "zonemv/app/io.hpp"

namespace zonemv::app {

using nlohmann::json;

json savings_json(const SavingsReport& report) {
  json doc;
  doc["naive_controlled_usd"] = report.naive_controlled;
  doc["overestimation_error_usd"] = report.overestimation_error;
  doc["corrected_form_a_usd"] = report.corrected_form_a;
  doc["corrected_form_b_usd"] = report.corrected_form_b;
  doc["oracle_true_usd"] = report.oracle_true;
  doc["relative_error"] = report.relative_error ? json(*report.relative_error) : json(nullptr);
  doc["per_zone"] = json::array();
  for (const auto& z : report.per_zone) {
    doc["per_zone"].push_back({{"zone", z.zone + 1},
                               {"baseline_cost_usd", z.baseline_cost},
                               {"experiment_cost_usd", z.experiment_cost},
                               {"savings_usd", z.savings}});
  }
  doc["boundary_term_usd"] = report.boundary_term;
  doc["boundary_condition_met"] = report.boundary_condition_met;
  return doc;
}

namespace {

std::string money(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", std::abs(v) < 0.005 ? 0.0 : v);
  return buf;
}

std::string cell(const std::string& s, std::size_t width) {
  return std::string(width > s.size() ? width - s.size() : 0, ' ') + s;
}

}  // namespace

std::string savings_table(const SavingsReport& report, const std::vector<int>& controlled) {
  constexpr std::size_t kLabel = 26;
  constexpr std::size_t kCol = 12;
  auto label = [](const std::string& s) { return s + std::string(kLabel - s.size(), ' '); };
  auto is_controlled = [&](int zone) {
    return std::find(controlled.begin(), controlled.end(), zone) != controlled.end();
  };

  std::ostringstream os;
  os << label("");
  for (const auto& z : report.per_zone) {
    os << cell("Zone " + std::to_string(z.zone + 1) + (is_controlled(z.zone) ? "*" : ""), kCol);
  }
  os << cell("Total", kCol) << '\n';

  double base_total = 0.0;
  double exp_total = 0.0;
  double savings_total = 0.0;
  os << label("Baseline cost ($)");
  for (const auto& z : report.per_zone) {
    os << cell(money(z.baseline_cost), kCol);
    base_total += z.baseline_cost;
  }
  os << cell(money(base_total), kCol) << '\n';
  os << label("Experiment cost ($)");
  for (const auto& z : report.per_zone) {
    os << cell(money(z.experiment_cost), kCol);
    exp_total += z.experiment_cost;
  }
  os << cell(money(exp_total), kCol) << '\n';
  os << label("Savings ($)");
  for (const auto& z : report.per_zone) {
    os << cell(money(z.savings), kCol);
    savings_total += z.savings;
  }
  os << cell(money(savings_total), kCol) << "\n\n";

  os << label("Perceived savings ($)") << money(report.naive_controlled) << '\n';
  os << label("Overestimation error ($)") << money(report.overestimation_error) << '\n';
  os << label("True savings ($)") << money(report.oracle_true) << '\n';
  os << label("Relative error");
  if (report.relative_error) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", *report.relative_error);
    os << buf << '\n';
  } else {
    os << "undefined (true savings are zero)\n";
  }
  os << "* controlled zone\n";
  return os.str();
}

json lp_diagnostics_json(const lp::LpSolution& solution) {
  json doc;
  doc["status"] = lp::to_string(solution.status);
  doc["objective_usd"] = solution.objective;
  doc["iterations"] = solution.iterations;
  doc["kkt"] = {{"primal", solution.kkt.primal},
                {"dual", solution.kkt.dual},
                {"complementarity", solution.kkt.complementarity}};
  return doc;
}

std::string geometry_grid_csv() {
  std::ostringstream os;
  os << "exterior_walls,beta,relative_error\n";
  for (int walls = 0; walls <= 4; ++walls) {
    for (double beta : {0.25, 0.5, 1.0, 2.0, 4.0}) {
      const double e = geometry_relative_error(GeometryCase::square_footprint(walls, beta));
      os << walls << ',' << format_number(beta) << ',' << (std::isinf(e) ? "inf" : format_number(e))
         << '\n';
    }
  }
  return os.str();
}

}  // namespace zonemv::app
