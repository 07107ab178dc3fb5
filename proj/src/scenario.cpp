#include "vexle/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <set>

#include "vexle/expr.hpp"

namespace vexle {

namespace {

struct KindName {
    ScenarioKind kind;
    const char* name;
};

constexpr KindName kKindNames[] = {
    {ScenarioKind::Modular, "modular"},
    {ScenarioKind::QuasiNorm, "quasi_norm"},
    {ScenarioKind::ConjugateNorm, "conjugate_norm"},
    {ScenarioKind::ReverseMinkowski, "reverse_minkowski"},
    {ScenarioKind::ReverseHolder, "reverse_holder"},
    {ScenarioKind::Embedding, "embedding"},
    {ScenarioKind::MixedNorm, "mixed_norm"},
    {ScenarioKind::MonotoneIntegral, "monotone_integral"},
    {ScenarioKind::Nonconvexity, "nonconvexity"},
    {ScenarioKind::DualTriviality, "dual_triviality"},
    {ScenarioKind::SequenceInequality, "sequence_inequality"},
    {ScenarioKind::Example41, "example41"},
    {ScenarioKind::HardyT6, "hardy_T6"},
    {ScenarioKind::HardyT7, "hardy_T7"},
    {ScenarioKind::HardyT8, "hardy_T8"},
    {ScenarioKind::Example42, "example42"},
};

enum class FieldType { Number, Count, ExprStr, Tag, NumberList, Domain, Scheme };

struct FieldSpec {
    const char* key;
    FieldType type;
    bool required;
    const char* tags = nullptr; // allowed words for Tag fields
};

// Grid block shared by the kinds that sample functions on one axis.
#define GRID_FIELDS                                    \
    {"domain", FieldType::Domain, true},               \
    {"points", FieldType::Count, true},                \
    {"grid", FieldType::Scheme, false},                \
    {"x_min", FieldType::Number, false},               \
    {"x_max", FieldType::Number, false},               \
    {"tol", FieldType::Number, false}

const std::vector<FieldSpec>& schema(ScenarioKind kind) {
    static const std::vector<FieldSpec> modular = {
        GRID_FIELDS,
        {"p", FieldType::ExprStr, true},
        {"omega", FieldType::ExprStr, true},
        {"f", FieldType::ExprStr, true},
        {"lambda", FieldType::Number, false},
    };
    static const std::vector<FieldSpec> norm = {
        GRID_FIELDS,
        {"p", FieldType::ExprStr, true},
        {"omega", FieldType::ExprStr, true},
        {"f", FieldType::ExprStr, true},
    };
    static const std::vector<FieldSpec> conj = {
        GRID_FIELDS,
        {"p", FieldType::ExprStr, true},
        {"omega", FieldType::ExprStr, true},
        {"g", FieldType::ExprStr, true},
    };
    static const std::vector<FieldSpec> pair = {
        GRID_FIELDS,
        {"p", FieldType::ExprStr, true},
        {"omega", FieldType::ExprStr, true},
        {"f", FieldType::ExprStr, true},
        {"g", FieldType::ExprStr, true},
    };
    static const std::vector<FieldSpec> embedding = {
        GRID_FIELDS,
        {"p", FieldType::ExprStr, true},
        {"q", FieldType::ExprStr, true},
        {"omega1", FieldType::ExprStr, true},
        {"omega2", FieldType::ExprStr, true},
        {"f", FieldType::ExprStr, true},
    };
    static const std::vector<FieldSpec> mixed = {
        {"domain", FieldType::Domain, true},
        {"domain_y", FieldType::Domain, true},
        {"points", FieldType::Count, true},
        {"points_y", FieldType::Count, true},
        {"tol", FieldType::Number, false},
        {"p", FieldType::ExprStr, true},
        {"q", FieldType::ExprStr, true},
        {"f", FieldType::ExprStr, true},
    };
    static const std::vector<FieldSpec> monotone = {
        GRID_FIELDS,
        {"s", FieldType::Number, true},
        {"f", FieldType::ExprStr, true},
        {"direction", FieldType::Tag, true, "decreasing,increasing"},
    };
    static const std::vector<FieldSpec> nonconvex = {
        {"domain", FieldType::Domain, true},
        {"points", FieldType::Count, true},
        {"p", FieldType::ExprStr, true},
        {"omega", FieldType::ExprStr, true},
        {"m", FieldType::Count, true},
        {"epsilon", FieldType::Number, true},
        {"radius", FieldType::Number, false},
        {"m_max", FieldType::Count, false},
    };
    static const std::vector<FieldSpec> dual = {
        GRID_FIELDS,
        {"p", FieldType::ExprStr, true},
        {"omega", FieldType::ExprStr, true},
        {"f", FieldType::ExprStr, true},
        {"steps", FieldType::Count, true},
    };
    static const std::vector<FieldSpec> sequence = {
        {"x", FieldType::NumberList, true},
        {"p", FieldType::NumberList, true},
        {"p_lo", FieldType::Number, false},
        {"mode", FieldType::Tag, false, "finite,limit"},
    };
    static const std::vector<FieldSpec> ex41 = {
        {"p", FieldType::ExprStr, true}, // exponent generator evaluated at x = n
        {"p_lo", FieldType::Number, true},
        {"K", FieldType::Count, false},
        {"checkpoints", FieldType::NumberList, false},
        {"threshold", FieldType::Number, false},
    };
    static const std::vector<FieldSpec> hardy = {
        GRID_FIELDS,
        {"p", FieldType::ExprStr, true},
        {"q", FieldType::ExprStr, true},
        {"omega1", FieldType::ExprStr, true},
        {"omega2", FieldType::ExprStr, true},
        {"f", FieldType::ExprStr, true},
        {"exponent_variant", FieldType::Tag, false, "proof,statement"},
    };
    static const std::vector<FieldSpec> ex42 = {
        {"alpha", FieldType::Number, true},
        {"beta", FieldType::Number, true},
        {"p", FieldType::Number, true},
    };

    switch (kind) {
        case ScenarioKind::Modular: return modular;
        case ScenarioKind::QuasiNorm: return norm;
        case ScenarioKind::ConjugateNorm: return conj;
        case ScenarioKind::ReverseMinkowski:
        case ScenarioKind::ReverseHolder: return pair;
        case ScenarioKind::Embedding: return embedding;
        case ScenarioKind::MixedNorm: return mixed;
        case ScenarioKind::MonotoneIntegral: return monotone;
        case ScenarioKind::Nonconvexity: return nonconvex;
        case ScenarioKind::DualTriviality: return dual;
        case ScenarioKind::SequenceInequality: return sequence;
        case ScenarioKind::Example41: return ex41;
        case ScenarioKind::HardyT6:
        case ScenarioKind::HardyT7:
        case ScenarioKind::HardyT8: return hardy;
        case ScenarioKind::Example42: return ex42;
    }
    throw ScenarioError("unreachable scenario kind");
}

#undef GRID_FIELDS

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool parse_number(std::string_view s, double& out) {
    s = trim(s);
    if (s == "inf" || s == "+inf") {
        out = std::numeric_limits<double>::infinity();
        return true;
    }
    if (s == "-inf") {
        out = -std::numeric_limits<double>::infinity();
        return true;
    }
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

bool parse_count(std::string_view s, long& out) {
    s = trim(s);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size() && out > 0;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

[[noreturn]] void fail(const Scenario& sc, const std::string& what) {
    throw ScenarioError("scenario " + sc.id + " (" + std::string(kind_name(sc.kind)) + "): " + what);
}

void validate_value(const Scenario& sc, const FieldSpec& spec, const std::string& value) {
    switch (spec.type) {
        case FieldType::Number: {
            double d;
            if (!parse_number(value, d))
                fail(sc, "key " + std::string(spec.key) + ": not a number: " + value);
            break;
        }
        case FieldType::Count: {
            long n;
            if (!parse_count(value, n))
                fail(sc, "key " + std::string(spec.key) + ": not a positive count: " + value);
            break;
        }
        case FieldType::ExprStr: {
            try {
                parse_expression(value);
            } catch (const ParseError& e) {
                fail(sc, "key " + std::string(spec.key) + ": " + e.what());
            }
            break;
        }
        case FieldType::Tag: {
            for (std::string_view tag : split(spec.tags, ','))
                if (tag == value) return;
            fail(sc, "key " + std::string(spec.key) + ": unknown tag " + value + " (expected one of " +
                         spec.tags + ")");
            break;
        }
        case FieldType::NumberList: {
            auto parts = split(value, ',');
            if (parts.empty() || parts.front().empty())
                fail(sc, "key " + std::string(spec.key) + ": empty list");
            for (auto part : parts) {
                double d;
                if (!parse_number(part, d))
                    fail(sc, "key " + std::string(spec.key) + ": not a number: " + std::string(part));
            }
            break;
        }
        case FieldType::Domain: {
            auto parts = split(value, ',');
            double a, b;
            if (parts.size() != 2 || !parse_number(parts[0], a) || !parse_number(parts[1], b))
                fail(sc, "key " + std::string(spec.key) + ": expected \"a,b\": " + value);
            if (!std::isfinite(a) || !(a < b))
                fail(sc, "key " + std::string(spec.key) + ": need finite a < b: " + value);
            break;
        }
        case FieldType::Scheme: {
            if (value != "uniform" && value != "geometric" && value != "two_sided")
                fail(sc, "key " + std::string(spec.key) + ": unknown grid scheme " + value);
            break;
        }
    }
}

void validate_scenario(const Scenario& sc) {
    const auto& fields = schema(sc.kind);
    for (const auto& [key, value] : sc.values) {
        if (key == "kind") continue;
        auto it = std::find_if(fields.begin(), fields.end(),
                               [&](const FieldSpec& f) { return key == f.key; });
        if (it == fields.end()) fail(sc, "unknown key " + key);
        validate_value(sc, *it, value);
    }
    for (const auto& field : fields)
        if (field.required && !sc.has(field.key))
            fail(sc, "missing key " + std::string(field.key));
}

} // namespace

std::string_view kind_name(ScenarioKind kind) {
    for (const auto& kn : kKindNames)
        if (kn.kind == kind) return kn.name;
    return "unknown";
}

std::optional<ScenarioKind> kind_from_name(std::string_view name) {
    for (const auto& kn : kKindNames)
        if (name == kn.name) return kn.kind;
    return std::nullopt;
}

const std::vector<ScenarioKind>& all_scenario_kinds() {
    static const std::vector<ScenarioKind> kinds = [] {
        std::vector<ScenarioKind> v;
        for (const auto& kn : kKindNames) v.push_back(kn.kind);
        return v;
    }();
    return kinds;
}

const std::string& Scenario::raw(const std::string& key) const {
    auto it = values.find(key);
    if (it == values.end())
        throw ScenarioError("scenario " + id + ": missing key " + key);
    return it->second;
}

double Scenario::number(const std::string& key) const {
    double d;
    if (!parse_number(raw(key), d))
        throw ScenarioError("scenario " + id + ": key " + key + " is not a number");
    return d;
}

double Scenario::number_or(const std::string& key, double fallback) const {
    return has(key) ? number(key) : fallback;
}

long Scenario::count(const std::string& key) const {
    long n;
    if (!parse_count(raw(key), n))
        throw ScenarioError("scenario " + id + ": key " + key + " is not a positive count");
    return n;
}

long Scenario::count_or(const std::string& key, long fallback) const {
    return has(key) ? count(key) : fallback;
}

std::vector<double> Scenario::number_list(const std::string& key) const {
    std::vector<double> out;
    for (auto part : split(raw(key), ',')) {
        double d;
        if (!parse_number(part, d))
            throw ScenarioError("scenario " + id + ": key " + key + " has a non-numeric entry");
        out.push_back(d);
    }
    return out;
}

std::vector<Scenario> parse_scenario_file(std::string_view text) {
    std::vector<Scenario> scenarios;
    std::set<std::string> seen_ids;
    bool open = false;
    Scenario current;

    auto finish = [&] {
        if (!open) return;
        auto kind_it = current.values.find("kind");
        if (kind_it == current.values.end())
            throw ScenarioError("scenario " + current.id + ": missing key kind");
        auto kind = kind_from_name(kind_it->second);
        if (!kind)
            throw ScenarioError("scenario " + current.id + ": unknown kind " + kind_it->second);
        current.kind = *kind;
        validate_scenario(current);
        scenarios.push_back(std::move(current));
        current = Scenario{};
        open = false;
    };

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? eol : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        // Strip comments outside quotes.
        bool quoted = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (line[i] == '"') quoted = !quoted;
            else if (line[i] == '#' && !quoted) {
                line = line.substr(0, i);
                break;
            }
        }
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (!line.starts_with("[scenario") || line.back() != ']')
                throw ScenarioError("line " + std::to_string(line_no) +
                                    ": expected [scenario <id>]");
            std::string_view id = trim(line.substr(9, line.size() - 10));
            if (id.empty() || id.find_first_not_of(
                                  "abcdefghijklmnopqrstuvwxyz"
                                  "ABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_.-") != std::string_view::npos)
                throw ScenarioError("line " + std::to_string(line_no) + ": bad scenario id");
            finish();
            if (!seen_ids.insert(std::string(id)).second)
                throw ScenarioError("line " + std::to_string(line_no) + ": duplicate scenario id " +
                                    std::string(id));
            current.id = std::string(id);
            open = true;
            continue;
        }

        std::size_t eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ScenarioError("line " + std::to_string(line_no) + ": expected key = value");
        if (!open)
            throw ScenarioError("line " + std::to_string(line_no) +
                                ": key outside of a [scenario] section");
        std::string key(trim(line.substr(0, eq)));
        std::string_view value = trim(line.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
            value = value.substr(1, value.size() - 2);
        else if (!value.empty() && (value.front() == '"' || value.back() == '"'))
            throw ScenarioError("line " + std::to_string(line_no) + ": unbalanced quotes");
        if (key.empty() || value.empty())
            throw ScenarioError("line " + std::to_string(line_no) + ": empty key or value");
        if (!current.values.emplace(key, std::string(value)).second)
            throw ScenarioError("line " + std::to_string(line_no) + ": duplicate key " + key);
    }
    finish();
    return scenarios;
}

std::string explain_kind(ScenarioKind kind) {
    std::string head = std::string(kind_name(kind)) + ": ";
    std::string keys = "\nkeys: ";
    for (const auto& field : schema(kind)) {
        keys += field.key;
        if (!field.required) keys += "?";
        keys += " ";
    }
    switch (kind) {
        case ScenarioKind::Modular:
            return head +
                   "modular integral of (|f| omega)^p(x) over the grid, optionally at scale "
                   "f/lambda." + keys;
        case ScenarioKind::QuasiNorm:
            return head +
                   "Luxemburg-type quasi-norm inf{lambda > 0 : modular(f/lambda) <= 1} for "
                   "0 < p(x) < 1, with the achieved unit-modular residual." + keys;
        case ScenarioKind::ConjugateNorm:
            return head +
                   "conjugate norm sup{mu > 0 : modular of (|g|/(omega mu))^{p'} <= 1} with "
                   "p' = p/(p-1) < 0 and the reciprocal weight." + keys;
        case ScenarioKind::ReverseMinkowski:
            return head + "checks || |f|+|g| || >= ||f|| + ||g|| in the sub-one regime." + keys;
        case ScenarioKind::ReverseHolder:
            return head +
                   "checks integral |fg| >= (1/p_hi + 1/p'_sup) ||f||_{p,omega} "
                   "||g||_{p',1/omega}." + keys;
        case ScenarioKind::Embedding:
            return head +
                   "checks ||f||_{p,omega1} <= C ||f||_{q,omega2} with the two-weight constant "
                   "C = (A+B+chi)^{1/p_lo} (||omega1/omega2||_{L_r(p<q)} + max_{p=q} "
                   "omega1/omega2), r = pq/(q-p)." + keys;
        case ScenarioKind::MixedNorm:
            return head +
                   "checks the iterated-norm swap ||..x then y..|| <= C ||..y then x..|| for "
                   "exponents >= 1 with p(x) <= q(y) on a rectangle, f given as f(x, t) with "
                   "t the second variable." + keys;
        case ScenarioKind::MonotoneIntegral:
            return head +
                   "checks (integral f)^s <= s integral f^s k for 0 < s < 1 and monotone f, "
                   "kernel k = (x-a)^{s-1} (decreasing) or (b-x)^{s-1} (increasing)." + keys;
        case ScenarioKind::Nonconvexity:
            return head +
                   "builds m disjoint bumps of equal modular epsilon; their average has "
                   "modular >= m^{1-p_hi} epsilon, escaping every modular ball as m grows "
                   "(the unit ball is not convex). Optional escape search for the smallest m "
                   "reaching a given radius." + keys;
        case ScenarioKind::DualTriviality:
            return head +
                   "halve the support at the modular midpoint and double f there; the modular "
                   "contracts by 2^{p_hi-1} < 1 per step, so every continuous functional is "
                   "forced to 0 (the conjugate space is trivial)." + keys;
        case ScenarioKind::SequenceInequality:
            return head +
                   "checks (sum x_n^{p_n/e})^e <= sum x_n^{p_n}[n^{p_n}-(n-1)^{p_n}] <= "
                   "sum x_n^{p_n} for nonincreasing exponents and nonincreasing x_n^{p_n}; "
                   "e = p_m (finite mode) or p_lo (limit mode)." + keys;
        case ScenarioKind::Example41:
            return head +
                   "counterexample with x_n supported on squares: the left partial sums "
                   "(harmonic) outgrow the middle ones, so the monotonicity hypothesis of the "
                   "sequence inequality is essential. p is the exponent generator evaluated "
                   "at x = n; requires p(1) < (p_lo+1)/2." + keys;
        case ScenarioKind::HardyT6:
            return head +
                   "averaging-operator bound ||Hf||_{q,omega2} <= p_lo^{1/p_lo} c_pq d_p F "
                   "||f||_{p,omega1} for nonincreasing f, F built from t^{1/p'} "
                   "||omega2/x||_{L_q(t,inf)} / omega1(t)." + keys;
        case ScenarioKind::HardyT7:
            return head +
                   "same bound for nondecreasing f with the kernel (x-t)^{1/p'} inside the "
                   "inner norm over (t, inf)." + keys;
        case ScenarioKind::HardyT8:
            return head +
                   "dual-operator bound ||H*f||_{q,omega2} <= ... for nonincreasing f with "
                   "kernel (t-x)^{1/p'} and inner norm over (0, t)." + keys;
        case ScenarioKind::Example42:
            return head +
                   "admissible power-weight region for the averaging-operator bound with "
                   "omega1 = x^alpha, omega2 = x^{beta+1} and the two-level exponent profile: "
                   "beta < -2, beta != -4, beta+2+1/p' < alpha < min(1/p', beta+4+1/p')." +
                   keys;
    }
    return head + keys;
}

} // namespace vexle
