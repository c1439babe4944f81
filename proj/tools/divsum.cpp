// divsum: build/caching of the sieved tables, L1-norm sweeps, asymptotic
// record generation, and the invariant verification suite.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "divsum/divsum.hpp"

namespace fs = std::filesystem;
using namespace divsum;

namespace {

enum ExitCode : int { exit_ok = 0, exit_invariant = 1, exit_config = 2, exit_io = 3 };

struct Output {
    std::ofstream file;
    std::ostream* os = &std::cout;

    void open(const std::string& path) {
        if (path.empty()) return;
        file.open(path, std::ios::trunc);
        if (!file) throw CacheError("cannot open output file " + path);
        os = &file;
    }
};

std::string cache_path_or_default(const std::string& flag, i64 x_max) {
    if (!flag.empty()) return flag;
    if (const char* dir = std::getenv("DIVSUM_CACHE_DIR"); dir && *dir)
        return (fs::path(dir) / ("divsum_tables_" + std::to_string(x_max) + ".bin")).string();
    return "";
}

// Load from a valid cache covering x_max, otherwise build in memory.
ArithTables obtain_tables(i64 x_max, const std::string& cache_flag, i64 budget) {
    const std::string path = cache_path_or_default(cache_flag, x_max);
    if (!path.empty() && fs::exists(path)) {
        ArithTables t = read_tables(path); // CacheError on a bad file
        if (t.x_max >= x_max) return t;
    }
    return build_tables(x_max, budget);
}

void echo_meta(const RunConfig& cfg, const std::string& command) {
    std::ostringstream meta;
    meta << "# " << command << " tol=" << cfg.tol << " threads=" << cfg.threads;
    if (cfg.Q_override > 0) meta << " Q=" << cfg.Q_override;
    std::cerr << meta.str() << '\n';
}

nlohmann::json meta_json(const RunConfig& cfg, const std::string& command) {
    nlohmann::json m{{"command", command}, {"tol", cfg.tol}, {"threads", cfg.threads}, {"format", cfg.format}};
    if (cfg.Q_override > 0) m["Q"] = cfg.Q_override;
    return m;
}

int cmd_sieve(i64 x_max, const std::string& cache_flag, i64 budget) {
    const std::string path = cache_path_or_default(cache_flag, x_max);
    if (path.empty())
        throw std::invalid_argument("sieve: needs --cache or DIVSUM_CACHE_DIR to know where to persist");
    if (fs::exists(path)) {
        const ArithTables cached = read_tables(path);
        if (cached.x_max == x_max) {
            std::cerr << "cache " << path << " already valid for x_max=" << x_max << '\n';
            return exit_ok;
        }
    }
    const ArithTables t = build_tables(x_max, budget);
    write_tables(path, t);
    std::cerr << "wrote " << path << " (x_max=" << x_max << ")\n";
    return exit_ok;
}

int cmd_l1_sweep(const RunConfig& cfg, const std::string& cache_flag, const std::string& method) {
    validate(cfg);
    if (method != "grid" && method != "arcs")
        throw std::invalid_argument("l1-sweep: --method must be grid or arcs");
    const ArithTables t = obtain_tables(cfg.x_list.back(), cache_flag, cfg.sieve_budget);
    std::vector<L1Row> rows;
    bool all_ok = true;
    for (const i64 x : cfg.x_list) {
        const QuadratureResult q =
            method == "arcs" ? arc_refined_l1(t, x, cfg.Q_override, cfg.tol, cfg.threads)
                             : l1_norm(t, x, cfg.tol, i64{1} << 24, cfg.threads);
        rows.push_back(make_l1_row(q));
        const double sx = std::sqrt(static_cast<double>(x));
        const double lx = std::log(static_cast<double>(x));
        bool ok = q.converged && q.value >= 0.01 * sx;
        if (x >= 2) ok = ok && q.value <= 10.0 * sx * lx;
        all_ok = all_ok && ok;
    }
    Output out;
    out.open(cfg.output);
    if (cfg.format == "json") {
        nlohmann::json doc{{"meta", meta_json(cfg, "l1-sweep")}, {"rows", nlohmann::json::array()}};
        for (const auto& r : rows) doc["rows"].push_back(to_json(r));
        *out.os << doc.dump() << '\n';
    } else {
        echo_meta(cfg, "l1-sweep");
        write_l1_csv(*out.os, rows);
    }
    return all_ok ? exit_ok : exit_invariant;
}

int cmd_verify(i64 x_max, const RunConfig& cfg, const std::string& cache_flag, bool inject_corruption) {
    if (x_max < 1 || x_max > cfg.sieve_budget) throw std::invalid_argument("verify: bad --xmax");
    ArithTables t = obtain_tables(x_max, cache_flag, cfg.sieve_budget);
    if (inject_corruption) {
        if (t.x_max >= 42) t.tau[42] += 1;
        if (t.x_max >= 30) t.mu[30] = 1;
    }
    const auto checks = run_verify_suite(t, cfg.threads);
    Output out;
    out.open(cfg.output);
    if (cfg.format == "json") {
        nlohmann::json doc{{"meta", meta_json(cfg, "verify")}, {"checks", nlohmann::json::array()}};
        for (const auto& c : checks) doc["checks"].push_back(to_json(c));
        *out.os << doc.dump() << '\n';
    } else {
        write_verify_csv(*out.os, checks);
    }
    bool all = true;
    for (const auto& c : checks) all = all && c.pass;
    return all ? exit_ok : exit_invariant;
}

int cmd_uq_records(const RunConfig& cfg, const std::string& cache_flag) {
    validate(cfg);
    const ArithTables t = obtain_tables(cfg.x_list.back(), cache_flag, cfg.sieve_budget);
    std::vector<AsymptoticRecord> records;
    nlohmann::json fits = nlohmann::json::array();
    for (i64 q = 1; q <= cfg.q_max; ++q) {
        std::vector<AsymptoticRecord> per_q;
        for (const i64 x : cfg.x_list) per_q.push_back(uq_asymptotic_record(t, x, q));
        records.insert(records.end(), per_q.begin(), per_q.end());
        try {
            fits.push_back(to_json(error_exponent(per_q), q));
        } catch (const std::invalid_argument&) {
            fits.push_back({{"q", q}, {"degenerate", true}});
        }
    }
    Output out;
    out.open(cfg.output);
    if (cfg.format == "json") {
        nlohmann::json doc{{"meta", meta_json(cfg, "uq-records")},
                           {"records", nlohmann::json::array()},
                           {"fits", fits}};
        for (const auto& r : records) doc["records"].push_back(to_json(r));
        *out.os << doc.dump() << '\n';
    } else {
        echo_meta(cfg, "uq-records");
        write_records_csv(*out.os, records);
        for (const auto& f : fits) *out.os << f.dump() << '\n';
    }
    return exit_ok;
}

int cmd_progressions(i64 x, i64 d_max, bool all_residues, const RunConfig& cfg, const std::string& cache_flag) {
    if (x < 2 || x > cfg.sieve_budget) throw std::invalid_argument("progressions: bad --x");
    if (d_max < 1) throw std::invalid_argument("progressions: bad --dmax");
    const ArithTables t = obtain_tables(x, cache_flag, cfg.sieve_budget);
    std::vector<ProgressionResult> rows;
    for (i64 d = 1; d <= d_max; ++d) {
        if (all_residues)
            for (i64 a = 0; a < d; ++a) rows.push_back(progression_check(t, x, d, a));
        else
            rows.push_back(progression_check(t, x, d, 0));
    }
    Output out;
    out.open(cfg.output);
    if (cfg.format == "json") {
        nlohmann::json doc{{"meta", meta_json(cfg, "progressions")}, {"rows", nlohmann::json::array()}};
        for (const auto& r : rows) doc["rows"].push_back(to_json(r));
        *out.os << doc.dump() << '\n';
    } else {
        write_progression_csv(*out.os, rows);
    }
    return exit_ok;
}

int cmd_lower(const RunConfig& cfg, const std::string& cache_flag) {
    validate(cfg);
    const ArithTables t = obtain_tables(cfg.x_list.back(), cache_flag, cfg.sieve_budget);
    std::vector<LowerRow> rows;
    bool all_hold = true;
    for (const i64 x : cfg.x_list) {
        const double f65 = lower_bound_functional(t, x, 65, cfg.threads);
        const double f129 = lower_bound_functional(t, x, 129, cfg.threads);
        const QuadratureResult q = l1_norm(t, x, cfg.tol, i64{1} << 24, cfg.threads);
        LowerRow r;
        r.x = x;
        r.functional = f65;
        r.l1_value = q.value;
        r.combined_error = q.error_estimate + std::abs(f65 - f129);
        r.holds = f65 <= q.value + 3.0 * r.combined_error;
        all_hold = all_hold && r.holds;
        rows.push_back(r);
    }
    Output out;
    out.open(cfg.output);
    if (cfg.format == "json") {
        nlohmann::json doc{{"meta", meta_json(cfg, "lower")}, {"rows", nlohmann::json::array()}};
        for (const auto& r : rows) doc["rows"].push_back(to_json(r));
        *out.os << doc.dump() << '\n';
    } else {
        echo_meta(cfg, "lower");
        write_lower_csv(*out.os, rows);
    }
    return all_hold ? exit_ok : exit_invariant;
}

int cmd_arcs(i64 Q, const std::string& system, i64 x, const RunConfig& cfg) {
    if (Q < 1) throw std::invalid_argument("arcs: bad --Q");
    HalfWidthRule rule = HalfWidthRule::dirichlet;
    if (system == "dirichlet")
        rule = HalfWidthRule::dirichlet;
    else if (system == "integration")
        rule = HalfWidthRule::integration;
    else if (system == "disjoint")
        rule = HalfWidthRule::fixed_4x;
    else
        throw std::invalid_argument("arcs: --system must be dirichlet, integration or disjoint");
    const auto arcs = make_arcs(Q, rule, x);
    Output out;
    out.open(cfg.output);
    write_arcs_csv(*out.os, arcs);
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerics for the divisor-function exponential sum S(a) = sum tau(n) e(na):\n"
                 "L1-norm quadrature, Farey dissection, Ramanujan-sum aggregates and their\n"
                 "asymptotic main terms"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string cache_flag;
    std::string x_list_default;

    i64 sieve_xmax = 1'000'000;
    i64 verify_xmax = 100'000;
    i64 pv_x = 100'000;
    i64 pv_dmax = 50;
    bool pv_all_a = false;
    bool inject_tau = false;
    i64 arcs_Q = 0;
    i64 arcs_x = 0;
    std::string arcs_system = "dirichlet";

    auto add_common = [&](CLI::App* sub, bool with_xlist) {
        sub->add_option("--tol", cfg.tol, "relative quadrature tolerance, in (0, 0.1]");
        sub->add_option("--threads", cfg.threads, "worker threads (deterministic for any count)");
        sub->add_option("--out", cfg.output, "output path (default: stdout)");
        sub->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--cache", cache_flag, "table cache file (env DIVSUM_CACHE_DIR supplies a default dir)");
        sub->add_option("--budget", cfg.sieve_budget, "sieve size cap");
        if (with_xlist)
            sub->add_option("--x-list", cfg.x_list, "ascending scales x")->delimiter(',');
    };

    auto* sieve = app.add_subcommand("sieve", "build the tau/mu/phi tables and persist them");
    sieve->add_option("--xmax", sieve_xmax, "table length")->required();
    sieve->add_option("--cache", cache_flag, "cache file path");
    sieve->add_option("--budget", cfg.sieve_budget, "sieve size cap");

    std::string sweep_method = "grid";
    auto* sweep = app.add_subcommand("l1-sweep", "integrate |S| per x; columns x,value,error_estimate,nodes,r_lower,r_upper");
    add_common(sweep, true);
    sweep->add_option("--method", sweep_method, "grid (uniform doubling) or arcs (mediant dissection)")
        ->check(CLI::IsMember({"grid", "arcs"}));
    sweep->add_option("--Q", cfg.Q_override, "dissection order override for --method arcs (default ceil(2 sqrt x)); echoed into metadata");

    auto* verify = app.add_subcommand("verify", "run the named invariant suite; nonzero exit on any failure");
    verify->add_option("--xmax", verify_xmax, "table length for the suite");
    add_common(verify, false);
    verify->add_flag("--inject-tau-corruption", inject_tau, "fault injection for testing the suite itself")
        ->group(""); // hidden

    auto* uq_records = app.add_subcommand("uq-records", "U_q(x;0) records against x*g_x(q); emits records plus per-q exponent fits");
    uq_records->add_option("--qmax", cfg.q_max, "largest modulus q");
    add_common(uq_records, true);

    auto* progressions = app.add_subcommand("progressions", "divisor sums over progressions n = a (mod d) against their main term");
    progressions->add_option("--x", pv_x, "scale x");
    progressions->add_option("--dmax", pv_dmax, "largest modulus d");
    progressions->add_flag("--all-residues", pv_all_a, "emit every residue a in [0,d), not just a=0");
    add_common(progressions, false);

    auto* lower = app.add_subcommand("lower", "lower-bound functional vs the L1 norm per x");
    add_common(lower, true);

    auto* arcs = app.add_subcommand("arcs", "export an arc system as CSV (a,q,lo,hi)");
    arcs->add_option("--Q", arcs_Q, "Farey order")->required();
    arcs->add_option("--x", arcs_x, "scale (integration/disjoint widths)");
    arcs->add_option("--system", arcs_system, "dirichlet | integration | disjoint");
    arcs->add_option("--out", cfg.output, "output path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_config;
    }

    try {
        if (sweep->parsed() && cfg.x_list.empty()) cfg.x_list = {4'096, 16'384, 65'536};
        if (uq_records->parsed() && cfg.x_list.empty()) cfg.x_list = {10'000, 100'000, 1'000'000};
        if (lower->parsed() && cfg.x_list.empty()) cfg.x_list = {256, 1'024, 4'096};

        if (sieve->parsed()) return cmd_sieve(sieve_xmax, cache_flag, cfg.sieve_budget);
        if (sweep->parsed()) return cmd_l1_sweep(cfg, cache_flag, sweep_method);
        if (verify->parsed()) return cmd_verify(verify_xmax, cfg, cache_flag, inject_tau);
        if (uq_records->parsed()) return cmd_uq_records(cfg, cache_flag);
        if (progressions->parsed()) return cmd_progressions(pv_x, pv_dmax, pv_all_a, cfg, cache_flag);
        if (lower->parsed()) return cmd_lower(cfg, cache_flag);
        if (arcs->parsed()) return cmd_arcs(arcs_Q, arcs_system, arcs_x, cfg);
        return exit_config;
    } catch (const CacheError& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return exit_io;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return exit_io;
    } catch (const CapacityError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_invariant;
    }
}
