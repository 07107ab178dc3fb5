#include "doctest.h"

#include <string>

#include "vexle/scenario.hpp"

using namespace vexle;

namespace {

std::string error_of(const char* text) {
    try {
        parse_scenario_file(text);
    } catch (const ScenarioError& e) {
        return e.what();
    }
    return {};
}

} // namespace

TEST_CASE("a minimal quasi-norm scenario parses") {
    const char* text = R"([scenario s1]
kind = quasi_norm
domain = "0,1"
grid = uniform
points = 1024
p = "0.25 + 0.5*x"
omega = "1"
f = "2"
)";
    auto list = parse_scenario_file(text);
    REQUIRE(list.size() == 1);
    CHECK(list[0].id == "s1");
    CHECK(list[0].kind == ScenarioKind::QuasiNorm);
    CHECK(list[0].raw("p") == "0.25 + 0.5*x");
    CHECK(list[0].count("points") == 1024);
    auto dom = list[0].number_list("domain");
    REQUIRE(dom.size() == 2);
    CHECK(dom[0] == 0.0);
    CHECK(dom[1] == 1.0);
}

TEST_CASE("comments and blank lines are stripped outside quotes") {
    const char* text = R"(# leading comment

[scenario with-comments]   # trailing comment
kind = modular
domain = "0,1"    # domains are quoted
points = 16
p = "0.5"
omega = "1"
f = "2 - x"   # expression comment
)";
    auto list = parse_scenario_file(text);
    REQUIRE(list.size() == 1);
    CHECK(list[0].raw("f") == "2 - x");
    CHECK(list[0].raw("domain") == "0,1");
}

TEST_CASE("a hash inside quotes reaches the value untouched") {
    // The '#' survives into the expression text, where the expression
    // validator rejects it: proof the comment stripper respects quotes.
    std::string err = error_of("[scenario s]\nkind = modular\ndomain = \"0,1\"\npoints = 16\n"
                               "p = \"0.5\"\nomega = \"1\"\nf = \"1 # x\"\n");
    CHECK(err.find('#') != std::string::npos);
}

TEST_CASE("several scenarios keep file order") {
    const char* text = R"([scenario b]
kind = example42
alpha = -4.5
beta = -3
p = 0.2

[scenario a]
kind = example42
alpha = -3
beta = -3
p = 0.2
)";
    auto list = parse_scenario_file(text);
    REQUIRE(list.size() == 2);
    CHECK(list[0].id == "b");
    CHECK(list[1].id == "a");
}

TEST_CASE("schema violations carry the scenario, kind and key") {
    std::string err = error_of("[scenario s]\nkind = modular\ndomain = \"0,1\"\npoints = 16\n"
                               "p = \"0.5\"\nomega = \"1\"\n");
    CHECK(err.find("scenario s") != std::string::npos);
    CHECK(err.find("modular") != std::string::npos);
    CHECK(err.find("missing key f") != std::string::npos);

    err = error_of("[scenario s]\nkind = modular\ndomain = \"0,1\"\npoints = 16\n"
                   "p = \"0.5\"\nomega = \"1\"\nf = \"1\"\nbogus = 3\n");
    CHECK(err.find("unknown key bogus") != std::string::npos);

    err = error_of("[scenario s]\nkind = modular\ndomain = \"0,1\"\npoints = -5\n"
                   "p = \"0.5\"\nomega = \"1\"\nf = \"1\"\n");
    CHECK(err.find("points") != std::string::npos);

    err = error_of("[scenario s]\nkind = modular\ndomain = \"0,1\"\npoints = 16\n"
                   "p = \"0.5 +\"\nomega = \"1\"\nf = \"1\"\n");
    CHECK(err.find("p") != std::string::npos);

    err = error_of("[scenario s]\nkind = nope\n");
    CHECK(err.find("nope") != std::string::npos);
}

TEST_CASE("structural errors") {
    CHECK(error_of("[scenario a]\nkind = example42\nalpha = -4.5\nbeta = -3\np = 0.2\n"
                   "[scenario a]\nkind = example42\nalpha = -4.5\nbeta = -3\np = 0.2\n")
              .find("duplicate") != std::string::npos);
    CHECK(error_of("kind = modular\n").find("outside") != std::string::npos);
    CHECK(error_of("[scenario s]\nkind = example42\nalpha = \"-4.5\nbeta = -3\np = 0.2\n")
              .find("quote") != std::string::npos);
    CHECK(error_of("[scenario s]\nkind = example42\nalpha = -4.5\nalpha = -4.5\nbeta = -3\n"
                   "p = 0.2\n")
              .find("duplicate key") != std::string::npos);
    CHECK(!error_of("[scenario bad id!]\nkind = example42\n").empty());
    CHECK(!error_of("[scenario s]\np = 0.2\n").empty()); // kind missing
}

TEST_CASE("domains must be finite ordered pairs except where the right end may be inf") {
    CHECK(error_of("[scenario s]\nkind = modular\ndomain = \"1,0\"\npoints = 16\n"
                   "p = \"0.5\"\nomega = \"1\"\nf = \"1\"\n")
              .find("domain") != std::string::npos);
    // unbounded right end is fine
    const char* ok = "[scenario s]\nkind = modular\ndomain = \"0,inf\"\npoints = 16\n"
                     "p = \"0.5\"\nomega = \"x^(-2)\"\nf = \"if(x < 1, 1, 0)\"\n";
    CHECK(parse_scenario_file(ok).size() == 1);
}

TEST_CASE("kind names round-trip") {
    for (auto kind : all_scenario_kinds()) {
        auto name = kind_name(kind);
        auto back = kind_from_name(name);
        REQUIRE(back.has_value());
        CHECK(*back == kind);
        CHECK(!explain_kind(kind).empty());
    }
    CHECK(!kind_from_name("frobnicate").has_value());
}
