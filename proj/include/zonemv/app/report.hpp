#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "zonemv/estimator.hpp"
#include "zonemv/lp/simplex.hpp"

namespace zonemv::app {

/// savings_report.json layout. Zones are numbered from 1 and an undefined
/// relative error is written as null.
nlohmann::json savings_json(const SavingsReport& report);

/// Plain-text table: one column per zone plus a total, rows for baseline
/// cost, experiment cost, perceived and true savings.
std::string savings_table(const SavingsReport& report, const std::vector<int>& controlled);

nlohmann::json lp_diagnostics_json(const lp::LpSolution& solution);

/// CSV of the relative error over a grid of exterior-wall counts and
/// interior-to-exterior U-value ratios for a square-footprint zone.
std::string geometry_grid_csv();

}  // namespace zonemv::app
