#include "vexle/runner.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <thread>

#include "vexle/expr.hpp"
#include "vexle/hardy.hpp"
#include "vexle/inequalities.hpp"
#include "vexle/pathology.hpp"
#include "vexle/sequences.hpp"

namespace vexle {

std::string format_number(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

namespace {

Interval domain_of(const Scenario& sc, const std::string& key) {
    auto ab = sc.number_list(key);
    return Interval{ab[0], ab[1]};
}

GridScheme scheme_from(const std::string& tag) {
    if (tag == "uniform") return GridScheme::Uniform;
    if (tag == "geometric") return GridScheme::Geometric;
    return GridScheme::GeometricTwoSided;
}

GridPtr build_grid(const Scenario& sc, std::optional<GridScheme> preferred = std::nullopt) {
    Interval domain = domain_of(sc, "domain");
    GridScheme scheme;
    if (sc.has("grid")) scheme = scheme_from(sc.raw("grid"));
    else if (preferred) scheme = *preferred;
    else scheme = domain.unbounded() ? GridScheme::Geometric : GridScheme::Uniform;
    std::optional<Truncation> truncation;
    if (sc.has("x_min") || sc.has("x_max"))
        truncation = Truncation{sc.number_or("x_min", 0.0), sc.number_or("x_max", 0.0)};
    return Grid::build(domain, scheme, static_cast<int>(sc.count("points")), truncation);
}

std::string truncation_text(const Grid& g) {
    if (!g.left_truncated() && !g.right_truncated()) return {};
    return format_number(g.x_min()) + ":" + format_number(g.x_max());
}

struct RowBuilder {
    ReportRow base;
    std::vector<ReportRow> rows;

    RowBuilder(const Scenario& sc) {
        base.scenario = sc.id;
        base.kind = std::string(kind_name(sc.kind));
    }

    void use_grid(const Grid& g) {
        base.points = std::to_string(g.size());
        base.truncation = truncation_text(g);
    }

    void value(std::string quantity, double v) {
        ReportRow row = base;
        row.quantity = std::move(quantity);
        row.value = v;
        row.verdict = std::string(verdict_name(Verdict::ValueOnly));
        rows.push_back(std::move(row));
    }

    void ineq(std::string quantity, const InequalityReport& rep) {
        ReportRow row = base;
        row.quantity = std::move(quantity);
        row.lhs = rep.lhs;
        row.rhs = rep.rhs;
        row.constant = rep.constant;
        row.ratio = rep.ratio;
        row.slack = rep.slack;
        row.verdict = std::string(verdict_name(rep.verdict));
        rows.push_back(std::move(row));
    }

    void check(std::string quantity, double lhs, double rhs, double constant, double ratio,
               double slack, Verdict v) {
        ReportRow row = base;
        row.quantity = std::move(quantity);
        row.lhs = lhs;
        row.rhs = rhs;
        row.constant = constant;
        row.ratio = ratio;
        row.slack = slack;
        row.verdict = std::string(verdict_name(v));
        rows.push_back(std::move(row));
    }
};

std::vector<ReportRow> run_one(const Scenario& sc, const RunOptions& opt) {
    RowBuilder b(sc);
    double tol = sc.number_or("tol", opt.default_tol);

    switch (sc.kind) {
        case ScenarioKind::Modular: {
            auto grid = build_grid(sc);
            b.use_grid(*grid);
            auto p = ExponentField::sample(grid, *parse_expression(sc.raw("p")));
            auto w = WeightField::sample(grid, *parse_expression(sc.raw("omega")));
            auto f = GridFunction::sample(grid, *parse_expression(sc.raw("f")));
            double v = sc.has("lambda") ? modular_scaled(f, p, w, sc.number("lambda"))
                                        : modular(f, p, w);
            b.value("modular", v);
            break;
        }
        case ScenarioKind::QuasiNorm: {
            auto grid = build_grid(sc);
            b.use_grid(*grid);
            auto p = ExponentField::sample(grid, *parse_expression(sc.raw("p")));
            auto w = WeightField::sample(grid, *parse_expression(sc.raw("omega")));
            auto f = GridFunction::sample(grid, *parse_expression(sc.raw("f")));
            double qn = quasi_norm(f, p, w, tol);
            b.value("quasi_norm", qn);
            b.value("unit_residual",
                    qn > 0 ? std::fabs(modular_scaled(f, p, w, qn) - 1.0) : 0.0);
            break;
        }
        case ScenarioKind::ConjugateNorm: {
            auto grid = build_grid(sc);
            b.use_grid(*grid);
            auto p = ExponentField::sample(grid, *parse_expression(sc.raw("p")));
            auto w = WeightField::sample(grid, *parse_expression(sc.raw("omega")));
            auto g = GridFunction::sample(grid, *parse_expression(sc.raw("g")));
            double cn = conjugate_norm(g, p, w, tol);
            b.value("conjugate_norm", cn);
            b.value("unit_residual",
                    cn > 0 ? std::fabs(conjugate_modular(g, p, w, cn) - 1.0) : 0.0);
            break;
        }
        case ScenarioKind::ReverseMinkowski:
        case ScenarioKind::ReverseHolder: {
            auto grid = build_grid(sc);
            b.use_grid(*grid);
            auto p = ExponentField::sample(grid, *parse_expression(sc.raw("p")));
            auto w = WeightField::sample(grid, *parse_expression(sc.raw("omega")));
            auto f = GridFunction::sample(grid, *parse_expression(sc.raw("f")));
            auto g = GridFunction::sample(grid, *parse_expression(sc.raw("g")));
            b.ineq("check", sc.kind == ScenarioKind::ReverseMinkowski
                                ? check_reverse_minkowski(f, g, p, w, tol)
                                : check_reverse_holder(f, g, p, w, tol));
            break;
        }
        case ScenarioKind::Embedding: {
            auto grid = build_grid(sc);
            b.use_grid(*grid);
            auto p = ExponentField::sample(grid, *parse_expression(sc.raw("p")));
            auto q = ExponentField::sample(grid, *parse_expression(sc.raw("q")));
            auto w1 = WeightField::sample(grid, *parse_expression(sc.raw("omega1")));
            auto w2 = WeightField::sample(grid, *parse_expression(sc.raw("omega2")));
            auto f = GridFunction::sample(grid, *parse_expression(sc.raw("f")));
            auto parts = embedding_constant(p, q, w1, w2, tol);
            b.ineq("check", check_embedding(f, p, q, w1, w2, tol));
            b.value("chi_equal_set", parts.chi_equal_set);
            b.value("constant", parts.total());
            b.value("sup_gap_over_q", parts.sup_gap_over_q);
            b.value("sup_p_over_q", parts.sup_p_over_q);
            b.value("weight_norm_inf", parts.weight_norm_inf);
            b.value("weight_norm_r", parts.weight_norm_r);
            break;
        }
        case ScenarioKind::MixedNorm: {
            Interval dx = domain_of(sc, "domain");
            Interval dy = domain_of(sc, "domain_y");
            auto gx = Grid::build(dx, dx.unbounded() ? GridScheme::Geometric : GridScheme::Uniform,
                                  static_cast<int>(sc.count("points")));
            auto gy = Grid::build(dy, dy.unbounded() ? GridScheme::Geometric : GridScheme::Uniform,
                                  static_cast<int>(sc.count("points_y")));
            auto p = ExponentField::sample(gx, *parse_expression(sc.raw("p")),
                                           ExponentRegime::GeneralPositive);
            auto q = ExponentField::sample(gy, *parse_expression(sc.raw("q")),
                                           ExponentRegime::GeneralPositive);
            auto F = GridFunction2D::sample({gx, gy}, *parse_expression(sc.raw("f")));
            b.base.points = std::to_string(gx->size()) + "x" + std::to_string(gy->size());
            std::string tx = truncation_text(*gx), ty = truncation_text(*gy);
            if (!tx.empty()) b.base.truncation = "x=" + tx;
            if (!ty.empty())
                b.base.truncation += (tx.empty() ? "" : " ") + ("y=" + ty);
            b.ineq("check", check_mixed_norm(F, p, q, tol));
            break;
        }
        case ScenarioKind::MonotoneIntegral: {
            bool increasing = sc.raw("direction") == "increasing";
            auto grid = build_grid(sc, increasing ? GridScheme::GeometricTwoSided
                                                  : GridScheme::Geometric);
            b.use_grid(*grid);
            auto f = GridFunction::sample(grid, *parse_expression(sc.raw("f")));
            b.ineq("check", check_monotone_integral(f, sc.number("s"),
                                                    increasing ? MonotoneDirection::Increasing
                                                               : MonotoneDirection::Decreasing));
            break;
        }
        case ScenarioKind::Nonconvexity: {
            Interval domain = domain_of(sc, "domain");
            int points = static_cast<int>(sc.count("points"));
            int m = static_cast<int>(sc.count("m"));
            double eps = sc.number("epsilon");
            auto p_expr = parse_expression(sc.raw("p"));
            auto w_expr = parse_expression(sc.raw("omega"));
            auto probe = nonconvexity_probe(domain, points, *p_expr, *w_expr, m, eps);
            b.base.points = std::to_string(std::max(1, points / m) * m);
            b.value("average_modular", probe.average_modular);
            double slack = verdict_slack(probe.average_modular, probe.lower_bound, 1e-9);
            b.check("check", probe.average_modular, probe.lower_bound,
                    std::pow(static_cast<double>(m), 1.0 - probe.p_hi),
                    safe_ratio(probe.average_modular, probe.lower_bound), slack,
                    probe.average_modular + slack >= probe.lower_bound ? Verdict::Holds
                                                                       : Verdict::Violated);
            if (sc.has("radius"))
                b.value("escape_m",
                        nonconvexity_escape(domain, points, *p_expr, *w_expr, eps,
                                            sc.number("radius"),
                                            static_cast<int>(sc.count_or("m_max", 4096))));
            b.value("lower_bound", probe.lower_bound);
            double dev = 0;
            for (double pm : probe.piece_modulars)
                dev = std::max(dev, std::fabs(pm - eps) / eps);
            b.value("piece_deviation", dev);
            break;
        }
        case ScenarioKind::DualTriviality: {
            auto grid = build_grid(sc);
            b.use_grid(*grid);
            auto p = ExponentField::sample(grid, *parse_expression(sc.raw("p")));
            auto w = WeightField::sample(grid, *parse_expression(sc.raw("omega")));
            auto f = GridFunction::sample(grid, *parse_expression(sc.raw("f")));
            auto probe = dual_triviality_sequence(f, p, w, static_cast<int>(sc.count("steps")),
                                                  sc.number_or("tol", 1e-9));
            b.check("check", probe.max_step_ratio, 1.0, std::pow(2.0, probe.p_hi - 1.0),
                    safe_ratio(1.0, probe.max_step_ratio), 1e-6,
                    probe.contraction_ok ? Verdict::Holds : Verdict::Violated);
            b.value("final_bound", probe.bounds.back());
            b.value("final_modular", probe.modulars.back());
            b.value("max_step_ratio", probe.max_step_ratio);
            break;
        }
        case ScenarioKind::SequenceInequality: {
            auto x = sc.number_list("x");
            std::optional<double> p_lo;
            if (sc.has("p_lo")) p_lo = sc.number("p_lo");
            auto seq = ExponentSeq::make(sc.number_list("p"), p_lo);
            SequenceMode mode = sc.has("mode") && sc.raw("mode") == "finite"
                                    ? SequenceMode::FiniteM
                                    : SequenceMode::Limit;
            auto rep = check_sequence_inequality(x, seq, mode);
            b.base.points = std::to_string(x.size());
            b.check("check_left", rep.lhs, rep.mid, 1.0, safe_ratio(rep.mid, rep.lhs), rep.slack,
                    rep.left_holds ? Verdict::Holds : Verdict::Violated);
            b.check("check_right", rep.mid, rep.rhs, 1.0, safe_ratio(rep.rhs, rep.mid), rep.slack,
                    rep.right_holds ? Verdict::Holds : Verdict::Violated);
            break;
        }
        case ScenarioKind::Example41: {
            auto p_expr = parse_expression(sc.raw("p"));
            double p_lo = sc.number("p_lo");
            auto K = static_cast<std::uint64_t>(sc.count_or("K", 1000000));
            double threshold = sc.number_or("threshold", 2.0);
            std::vector<std::uint64_t> cps;
            if (sc.has("checkpoints")) {
                for (double v : sc.number_list("checkpoints"))
                    if (v >= 1 && v <= static_cast<double>(K))
                        cps.push_back(static_cast<std::uint64_t>(std::llround(v)));
            } else {
                for (std::uint64_t c : {100ull, 10000ull, 1000000ull})
                    if (c <= K) cps.push_back(c);
            }
            cps.push_back(K);
            auto k_max = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(K)));
            while ((k_max + 1) * (k_max + 1) <= K) ++k_max;
            while (k_max * k_max > K) --k_max;
            auto ev = example41_sequence(
                [&](std::uint64_t n) { return evaluate(*p_expr, static_cast<double>(n)); }, p_lo,
                k_max, cps, threshold);
            const auto& last = ev.checkpoints.back();
            Verdict v = Verdict::Violated;
            if (ev.evidence_K > 0) v = Verdict::Holds;
            else if (ev.checkpoints.size() >= 2 && last.ratio > ev.checkpoints.front().ratio &&
                     last.ratio > 1.0)
                v = Verdict::Indeterminate;
            b.base.points = std::to_string(K);
            b.check("check", last.ratio, threshold, threshold,
                    safe_ratio(last.ratio, threshold), 0.0, v);
            b.value("evidence_K", static_cast<double>(ev.evidence_K));
            b.value("final_lhs", last.lhs_partial);
            b.value("final_ratio", last.ratio);
            b.value("final_rhs", last.rhs_partial);
            break;
        }
        case ScenarioKind::HardyT6:
        case ScenarioKind::HardyT7:
        case ScenarioKind::HardyT8: {
            HardyVariant hv = sc.kind == ScenarioKind::HardyT6   ? HardyVariant::T6
                              : sc.kind == ScenarioKind::HardyT7 ? HardyVariant::T7
                                                                 : HardyVariant::T8;
            auto grid = build_grid(sc);
            b.use_grid(*grid);
            auto p = ExponentField::sample(grid, *parse_expression(sc.raw("p")));
            auto q = ExponentField::sample(grid, *parse_expression(sc.raw("q")));
            auto w1 = WeightField::sample(grid, *parse_expression(sc.raw("omega1")));
            auto w2 = WeightField::sample(grid, *parse_expression(sc.raw("omega2")));
            auto f = GridFunction::sample(grid, *parse_expression(sc.raw("f")));
            ExponentVariant ev = sc.has("exponent_variant") &&
                                         sc.raw("exponent_variant") == "statement"
                                     ? ExponentVariant::Statement
                                     : ExponentVariant::Proof;
            auto hr = check_hardy(hv, f, w1, w2, p, q, ev, tol);
            b.value("c_pq", hr.constants.c_pq);
            b.ineq("check", hr.report);
            b.value("d_p", hr.constants.d_p);
            b.value("f_norm", hr.f_norm);
            b.value("functional", hr.functional.value);
            b.value("tail_fraction", std::max(hr.lhs_tail_fraction, hr.f_tail_fraction));
            break;
        }
        case ScenarioKind::Example42: {
            bool ok = example42_admissible(sc.number("alpha"), sc.number("beta"), sc.number("p"));
            b.value("admissible", ok ? 1.0 : 0.0);
            break;
        }
    }

    std::sort(b.rows.begin(), b.rows.end(),
              [](const ReportRow& l, const ReportRow& r) { return l.quantity < r.quantity; });
    return b.rows;
}

std::vector<ReportRow> run_one_safe(const Scenario& sc, const RunOptions& opt) {
    auto start = std::chrono::steady_clock::now();
    std::vector<ReportRow> rows;
    try {
        rows = run_one(sc, opt);
    } catch (const std::exception& e) {
        ReportRow row;
        row.scenario = sc.id;
        row.kind = std::string(kind_name(sc.kind));
        row.quantity = std::string("error: ") + e.what();
        row.verdict = std::string(verdict_name(Verdict::Error));
        rows = {std::move(row)};
    }
    if (opt.timings) {
        double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                              start)
                        .count();
        for (auto& r : rows) r.wall_ms = ms;
    }
    return rows;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string opt_text(const std::optional<double>& v) {
    return v ? format_number(*v) : std::string{};
}

} // namespace

std::vector<ReportRow> run_scenarios(const std::vector<Scenario>& scenarios,
                                     const RunOptions& options) {
    std::vector<std::vector<ReportRow>> per(scenarios.size());
    int par = std::clamp(options.parallelism, 1, 64);
    if (par <= 1 || scenarios.size() <= 1) {
        for (std::size_t i = 0; i < scenarios.size(); ++i)
            per[i] = run_one_safe(scenarios[i], options);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t i = next++; i < scenarios.size(); i = next++)
                per[i] = run_one_safe(scenarios[i], options);
        };
        std::vector<std::thread> pool;
        for (int t = 0; t < par; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    std::vector<ReportRow> rows;
    for (auto& group : per)
        for (auto& row : group) rows.push_back(std::move(row));
    return rows;
}

std::string to_csv(const std::vector<ReportRow>& rows) {
    std::string out =
        "scenario,kind,quantity,value,lhs,rhs,constant,ratio,verdict,slack,points,truncation,"
        "wall_time\n";
    for (const auto& r : rows) {
        out += csv_field(r.scenario);
        out += ',';
        out += csv_field(r.kind);
        out += ',';
        out += csv_field(r.quantity);
        out += ',';
        out += opt_text(r.value);
        out += ',';
        out += opt_text(r.lhs);
        out += ',';
        out += opt_text(r.rhs);
        out += ',';
        out += opt_text(r.constant);
        out += ',';
        out += opt_text(r.ratio);
        out += ',';
        out += csv_field(r.verdict);
        out += ',';
        out += opt_text(r.slack);
        out += ',';
        out += csv_field(r.points);
        out += ',';
        out += csv_field(r.truncation);
        out += ',';
        out += format_number(r.wall_ms);
        out += '\n';
    }
    return out;
}

std::string to_kv(const std::vector<ReportRow>& rows) {
    std::string out;
    std::size_t i = 0;
    for (const auto& r : rows) {
        std::string prefix = "row." + std::to_string(i++) + ".";
        auto put = [&](const char* key, const std::string& v) {
            if (!v.empty()) out += prefix + key + " = " + v + "\n";
        };
        put("scenario", r.scenario);
        put("kind", r.kind);
        put("quantity", r.quantity);
        put("value", opt_text(r.value));
        put("lhs", opt_text(r.lhs));
        put("rhs", opt_text(r.rhs));
        put("constant", opt_text(r.constant));
        put("ratio", opt_text(r.ratio));
        put("verdict", r.verdict);
        put("slack", opt_text(r.slack));
        put("points", r.points);
        put("truncation", r.truncation);
        if (r.wall_ms > 0) put("wall_time", format_number(r.wall_ms));
        out += "\n";
    }
    return out;
}

int exit_code(const std::vector<ReportRow>& rows) {
    int code = 0;
    for (const auto& r : rows) {
        if (r.verdict == "error") return 2;
        if (r.verdict == "violated" || r.verdict == "indeterminate") code = std::max(code, 1);
    }
    return code;
}

} // namespace vexle
