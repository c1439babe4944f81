#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "divsum/asympt.hpp"
#include "divsum/farey.hpp"
#include "divsum/l1norm.hpp"
#include "divsum/verify.hpp"

namespace divsum {

// Run parameters shared by the CLI commands.
struct RunConfig {
    std::vector<i64> x_list;
    i64 q_max = 20;
    i64 Q_override = 0; // 0 means the default ceil(2 sqrt(x))
    double tol = 1e-3;
    int threads = 1;
    std::string output;        // empty = stdout
    std::string format = "csv";
    i64 sieve_budget = default_sieve_budget;
};

inline void validate(const RunConfig& cfg) {
    if (cfg.x_list.empty()) throw std::invalid_argument("config: x_list must be non-empty");
    for (std::size_t i = 0; i < cfg.x_list.size(); ++i) {
        if (cfg.x_list[i] < 1) throw std::invalid_argument("config: every x must be >= 1");
        if (cfg.x_list[i] > cfg.sieve_budget)
            throw std::invalid_argument("config: x " + std::to_string(cfg.x_list[i]) + " exceeds the sieve budget");
        if (i > 0 && cfg.x_list[i] <= cfg.x_list[i - 1])
            throw std::invalid_argument("config: x_list must be strictly ascending");
    }
    if (!(cfg.tol > 0.0 && cfg.tol <= 0.1)) throw std::invalid_argument("config: tol must lie in (0, 0.1]");
    if (cfg.threads < 1) throw std::invalid_argument("config: threads must be >= 1");
    if (cfg.format != "csv" && cfg.format != "json")
        throw std::invalid_argument("config: format must be csv or json");
    if (cfg.q_max < 1) throw std::invalid_argument("config: q_max must be >= 1");
    if (cfg.Q_override < 0) throw std::invalid_argument("config: Q override must be positive");
}

inline std::string fmt_num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// RFC-4180 quoting for free-text fields.
inline std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

// --- row records ------------------------------------------------------------

struct L1Row {
    i64 x = 0;
    double value = 0;
    double error_estimate = 0;
    i64 nodes = 0;
    double r_lower = 0;
    double r_upper = 0;
    bool converged = true;
};

inline L1Row make_l1_row(const QuadratureResult& q) {
    const BoundRatios b = bound_ratios(q);
    return {q.x, q.value, q.error_estimate, q.nodes, b.r_lower, b.r_upper, q.converged};
}

struct LowerRow {
    i64 x = 0;
    double functional = 0;
    double l1_value = 0;
    double combined_error = 0;
    bool holds = false;
};

// --- CSV writers --------------------------------------------------------------

inline void write_l1_csv(std::ostream& os, const std::vector<L1Row>& rows) {
    os << "x,value,error_estimate,nodes,r_lower,r_upper\n";
    for (const auto& r : rows)
        os << r.x << ',' << fmt_num(r.value) << ',' << fmt_num(r.error_estimate) << ',' << r.nodes << ','
           << fmt_num(r.r_lower) << ',' << fmt_num(r.r_upper) << '\n';
}

inline void write_records_csv(std::ostream& os, const std::vector<AsymptoticRecord>& recs) {
    os << "q,x,exact,main,abs_err,bound_scale\n";
    for (const auto& r : recs)
        os << r.q << ',' << r.x << ',' << fmt_num(r.exact) << ',' << fmt_num(r.main) << ','
           << fmt_num(r.abs_err) << ',' << fmt_num(r.bound_scale) << '\n';
}

inline void write_progression_csv(std::ostream& os, const std::vector<ProgressionResult>& rows) {
    os << "d,a,x,exact,main,abs_err\n";
    for (const auto& r : rows)
        os << r.d << ',' << r.a << ',' << r.x << ',' << fmt_num(r.exact) << ',' << fmt_num(r.main) << ','
           << fmt_num(r.abs_err) << '\n';
}

inline void write_lower_csv(std::ostream& os, const std::vector<LowerRow>& rows) {
    os << "x,functional,l1_value,combined_error,holds\n";
    for (const auto& r : rows)
        os << r.x << ',' << fmt_num(r.functional) << ',' << fmt_num(r.l1_value) << ','
           << fmt_num(r.combined_error) << ',' << (r.holds ? 1 : 0) << '\n';
}

inline void write_grid_csv(std::ostream& os, const GridEval& g) {
    os << "k,alpha,re,im,abs\n";
    for (i64 k = 0; k < g.N; ++k) {
        const auto& v = g.values[static_cast<std::size_t>(k)];
        os << k << ',' << fmt_num(static_cast<double>(k) / static_cast<double>(g.N)) << ',' << fmt_num(v.real())
           << ',' << fmt_num(v.imag()) << ',' << fmt_num(std::abs(v)) << '\n';
    }
}

inline void write_arcs_csv(std::ostream& os, const std::vector<Arc>& arcs) {
    os << "a,q,lo,hi\n";
    for (const auto& arc : arcs)
        os << arc.center.a << ',' << arc.center.q << ',' << fmt_num(arc.lo()) << ',' << fmt_num(arc.hi()) << '\n';
}

inline void write_verify_csv(std::ostream& os, const std::vector<VerifyCheck>& checks) {
    os << "name,pass,metric,threshold,detail\n";
    for (const auto& c : checks)
        os << c.name << ',' << (c.pass ? 1 : 0) << ',' << fmt_num(c.metric) << ',' << fmt_num(c.threshold) << ','
           << csv_quote(c.detail) << '\n';
}

// --- JSON mirrors -------------------------------------------------------------

inline nlohmann::json to_json(const L1Row& r) {
    return {{"x", r.x},       {"value", r.value},     {"error_estimate", r.error_estimate},
            {"nodes", r.nodes}, {"r_lower", r.r_lower}, {"r_upper", std::isfinite(r.r_upper) ? nlohmann::json(r.r_upper) : nlohmann::json("inf")}};
}

inline nlohmann::json to_json(const AsymptoticRecord& r) {
    return {{"q", r.q},       {"x", r.x},           {"exact", r.exact},
            {"main", r.main}, {"abs_err", r.abs_err}, {"bound_scale", r.bound_scale}};
}

inline nlohmann::json to_json(const ExponentFit& f, i64 q) {
    return {{"q", q}, {"slope", f.slope}, {"intercept", f.intercept}, {"r2", f.r2}, {"points", f.points}};
}

inline nlohmann::json to_json(const ProgressionResult& r) {
    return {{"d", r.d}, {"a", r.a}, {"x", r.x}, {"exact", r.exact}, {"main", r.main}, {"abs_err", r.abs_err}};
}

inline nlohmann::json to_json(const LowerRow& r) {
    return {{"x", r.x},
            {"functional", r.functional},
            {"l1_value", r.l1_value},
            {"combined_error", r.combined_error},
            {"holds", r.holds}};
}

inline nlohmann::json to_json(const VerifyCheck& c) {
    return {{"name", c.name}, {"pass", c.pass}, {"metric", c.metric}, {"threshold", c.threshold}, {"detail", c.detail}};
}

} // namespace divsum
