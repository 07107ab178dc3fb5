#include "doctest.h"

#include <algorithm>
#include <limits>
#include <string>
#include <vector>

#include "vexle/runner.hpp"

using namespace vexle;

namespace {

std::vector<ReportRow> run_text(const char* text, RunOptions opts = {}) {
    return run_scenarios(parse_scenario_file(text), opts);
}

std::size_t count_char(const std::string& s, char c) {
    return std::size_t(std::count(s.begin(), s.end(), c));
}

const char* kSmallBatch = R"scn([scenario mod]
kind = modular
domain = "0,1"
points = 256
p = "0.5"
omega = "1"
f = "2"
lambda = 2

[scenario nrm]
kind = quasi_norm
domain = "0,1"
points = 256
p = "0.5"
omega = "1"
f = "2"

[scenario region]
kind = example42
alpha = -4.5
beta = -3
p = 0.2
)scn";

} // namespace

TEST_CASE("a small batch produces ordered rows and exit code zero") {
    auto rows = run_text(kSmallBatch);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].scenario == "mod");
    CHECK(rows[0].quantity == "modular");
    CHECK(rows[0].verdict == "value-only");
    CHECK(rows[0].value.value() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(rows[0].points == "256");

    CHECK(rows[1].scenario == "nrm");
    CHECK(rows[1].quantity == "quasi_norm");
    CHECK(rows[1].value.value() == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(rows[2].quantity == "unit_residual");

    CHECK(rows[3].scenario == "region");
    CHECK(rows[3].quantity == "admissible");
    CHECK(rows[3].value.value() == 1.0);
    CHECK(rows[3].verdict == "value-only");

    CHECK(exit_code(rows) == 0);
}

TEST_CASE("failed hypotheses produce a violated verdict and exit code one") {
    const char* text = R"scn([scenario weak-evidence]
kind = example41
p = "0.4 + 0.2/x"
p_lo = 0.4
K = 100
threshold = 50
)scn";
    auto rows = run_text(text);
    REQUIRE(!rows.empty());
    bool flagged = false;
    for (const auto& r : rows)
        if (r.verdict == "violated" || r.verdict == "indeterminate") flagged = true;
    CHECK(flagged);
    CHECK(exit_code(rows) == 1);
}

TEST_CASE("evaluation failures become error rows and exit code two") {
    const char* text = R"scn([scenario boom]
kind = modular
domain = "0,1"
points = 64
p = "0.5"
omega = "1"
f = "log(x - 2)"

[scenario fine]
kind = example42
alpha = -4.5
beta = -3
p = 0.2
)scn";
    auto rows = run_text(text);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].scenario == "boom");
    CHECK(rows[0].verdict == "error");
    CHECK(rows[0].quantity.rfind("error: ", 0) == 0);
    CHECK(rows[1].scenario == "fine");
    CHECK(exit_code(rows) == 2);
}

TEST_CASE("csv output has a fixed header and quotes embedded commas") {
    const char* text = R"scn([scenario bad-tol]
kind = quasi_norm
domain = "0,1"
points = 64
p = "0.5"
omega = "1"
f = "1"
tol = 2
)scn";
    auto rows = run_text(text);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].verdict == "error");

    auto csv = to_csv(rows);
    auto header_end = csv.find('\n');
    std::string header = csv.substr(0, header_end);
    CHECK(header ==
          "scenario,kind,quantity,value,lhs,rhs,constant,ratio,verdict,slack,points,truncation,"
          "wall_time");
    CHECK(count_char(header, ',') == 12);
    // the error message contains a comma, so the field must be quoted
    CHECK(csv.find('"') != std::string::npos);

    auto batch = to_csv(run_text(kSmallBatch));
    // every data line has exactly 12 separators once quoted fields are absent
    std::size_t pos = batch.find('\n') + 1;
    while (pos < batch.size()) {
        auto end = batch.find('\n', pos);
        CHECK(count_char(batch.substr(pos, end - pos), ',') == 12);
        pos = end + 1;
    }
}

TEST_CASE("kv output spells row indices and keys") {
    auto rows = run_text(kSmallBatch);
    auto kv = to_kv(rows);
    CHECK(kv.find("row.0.scenario = mod") != std::string::npos);
    CHECK(kv.find("row.0.quantity = modular") != std::string::npos);
    CHECK(kv.find("row.3.quantity = admissible") != std::string::npos);
    CHECK(kv.find("wall_time") == std::string::npos); // timings off: key omitted
}

TEST_CASE("parallel execution is byte-identical to serial") {
    const char* text = R"scn([scenario a]
kind = quasi_norm
domain = "0,1"
points = 512
p = "0.3 + 0.3*x"
omega = "1 + x"
f = "2 - x"

[scenario b]
kind = reverse_minkowski
domain = "0,2"
points = 512
p = "0.5"
omega = "1"
f = "1 + x"
g = "2 - 0.5*x"

[scenario c]
kind = monotone_integral
domain = "0,1"
points = 1024
s = 0.5
f = "1 - x"
direction = decreasing

[scenario d]
kind = example42
alpha = -4.5
beta = -3
p = 0.2
)scn";
    auto scenarios = parse_scenario_file(text);
    RunOptions serial, parallel;
    serial.parallelism = 1;
    parallel.parallelism = 4;
    CHECK(to_csv(run_scenarios(scenarios, serial)) == to_csv(run_scenarios(scenarios, parallel)));
}

TEST_CASE("truncation column reflects explicit grid windows") {
    const char* text = R"scn([scenario trunc]
kind = modular
domain = "0,inf"
points = 128
grid = geometric
x_min = 0.001
x_max = 1000
p = "0.5"
omega = "x^(-2)"
f = "if(x < 1, 1, 0)"
)scn";
    auto rows = run_text(text);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].truncation == "0.001:1000");
}

TEST_CASE("number formatting round-trips") {
    CHECK(format_number(1.0) == "1");
    CHECK(format_number(0.5) == "0.5");
    CHECK(format_number(1e300) == "1e+300");
    CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
}
