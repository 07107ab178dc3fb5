#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vexle {

class ScenarioError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class ScenarioKind {
    Modular,
    QuasiNorm,
    ConjugateNorm,
    ReverseMinkowski,
    ReverseHolder,
    Embedding,
    MixedNorm,
    MonotoneIntegral,
    Nonconvexity,
    DualTriviality,
    SequenceInequality,
    Example41,
    HardyT6,
    HardyT7,
    HardyT8,
    Example42
};

std::string_view kind_name(ScenarioKind kind);
std::optional<ScenarioKind> kind_from_name(std::string_view name);
const std::vector<ScenarioKind>& all_scenario_kinds();

/// One parsed scenario: an id, a kind, and the validated key/value strings.
/// Keys are validated against the kind's schema at parse time (presence,
/// numeric syntax, expression syntax, tag vocabulary); semantic checks
/// (regimes, monotonicity, orderings) happen when the scenario runs.
struct Scenario {
    std::string id;
    ScenarioKind kind = ScenarioKind::Modular;
    std::map<std::string, std::string> values;

    bool has(const std::string& key) const { return values.count(key) > 0; }
    const std::string& raw(const std::string& key) const;
    double number(const std::string& key) const;
    double number_or(const std::string& key, double fallback) const;
    long count(const std::string& key) const;
    long count_or(const std::string& key, long fallback) const;
    std::vector<double> number_list(const std::string& key) const;
};

/// Line-based format: `[scenario <id>]` opens a scenario, `key = value`
/// lines populate it (values: bare numbers, bare tags, or double-quoted
/// strings for expressions, domains and number lists), `#` starts a comment.
std::vector<Scenario> parse_scenario_file(std::string_view text);

/// What a scenario kind computes and which keys it accepts, as plain text.
std::string explain_kind(ScenarioKind kind);

} // namespace vexle
