#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vexle/scenario.hpp"

namespace vexle {

/// One output row: a named quantity of a scenario, either a plain value or
/// the two sides of an inequality with its constant/ratio/slack.
struct ReportRow {
    std::string scenario;
    std::string kind;
    std::string quantity;
    std::optional<double> value;
    std::optional<double> lhs;
    std::optional<double> rhs;
    std::optional<double> constant;
    std::optional<double> ratio;
    std::optional<double> slack;
    std::string verdict;
    std::string points;     // grid size, "nx x ny", or sequence length
    std::string truncation; // "x_min:x_max" when the grid was truncated
    double wall_ms = 0;     // 0 unless timings were requested
};

struct RunOptions {
    int parallelism = 1;
    bool timings = false;
    double default_tol = 1e-8;
};

/// Runs every scenario (failures become rows with an error verdict, except
/// that the input file itself must already have parsed). Rows are grouped by
/// scenario in input order and sorted by quantity within each scenario;
/// the output is independent of the parallelism level.
std::vector<ReportRow> run_scenarios(const std::vector<Scenario>& scenarios,
                                     const RunOptions& options = {});

std::string to_csv(const std::vector<ReportRow>& rows);
std::string to_kv(const std::vector<ReportRow>& rows);

/// 2 if any row errored, 1 if any verdict is violated or indeterminate,
/// else 0.
int exit_code(const std::vector<ReportRow>& rows);

/// Shortest round-trip decimal form (to_chars), "inf"/"-inf"/"nan" spelled
/// out. Shared by the CSV/kv writers and the expression printer.
std::string format_number(double v);

} // namespace vexle
