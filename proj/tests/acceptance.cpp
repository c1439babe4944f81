// Acceptance suite: prints one pass/fail line per criterion and exits with
// the number of failed criteria. An optional argv[1] selects a single
// criterion by number.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <random>
#include <sstream>
#include <string>

#include "divsum/divsum.hpp"
#include "oracles.hpp"

using namespace divsum;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double tau_total(const ArithTables& t, i64 x) {
    KahanSum s;
    for (i64 n = 1; n <= x; ++n) s.add(t.tau[n]);
    return s.value();
}

int failures = 0;
int selected = 0;

template <typename Fn>
void criterion(int id, const char* name, double runtime_limit, Fn fn) {
    if (selected != 0 && selected != id) return;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = fn();
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail = std::string("exception: ") + e.what();
    }
    const double dt = seconds_since(t0);
    if (dt > runtime_limit) {
        o.pass = false;
        o.detail += (o.detail.empty() ? "" : "; ") + std::string("exceeded runtime limit");
    }
    std::printf("[%s] criterion %2d: %s (%.1fs)%s%s\n", o.pass ? "PASS" : "FAIL", id, name, dt,
                o.detail.empty() ? "" : " -- ", o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
}

} // namespace

int main(int argc, char** argv) {
    if (argc > 1) selected = std::atoi(argv[1]);

    const auto tables = build_tables(1'000'000);

    criterion(1, "decomposition identity S = 2T + V", 10.0, [&] {
        const i64 x = 10'000;
        const double scale = tau_total(tables, x);
        std::mt19937_64 rng(101);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        double worst = 0;
        for (int i = 0; i < 100; ++i) {
            const double alpha = u(rng);
            const auto d = eval_S(tables, x, alpha) - (2.0 * eval_T(x, alpha) + eval_V(x, alpha));
            worst = std::max(worst, std::abs(d));
        }
        Outcome o;
        o.pass = worst <= 1e-9 * scale;
        o.detail = "max |S-2T-V| = " + fmt_num(worst) + " vs " + fmt_num(1e-9 * scale);
        return o;
    });

    criterion(2, "Ramanujan dual formula and multiplicativity", 5.0, [&] {
        double worst = 0;
        for (i64 q = 1; q <= 200; ++q)
            for (i64 n = 0; n <= 200; ++n) {
                const i64 c = ramanujan_sum(tables, q, n);
                if (c != ramanujan_sum_closed_form(tables, q, n))
                    return Outcome{false, "closed form disagrees at q=" + std::to_string(q)};
                const auto e = ramanujan_sum_via_exponentials(q, n);
                worst = std::max(worst,
                                 std::max(std::abs(e.real() - static_cast<double>(c)), std::abs(e.imag())) /
                                     static_cast<double>(q));
            }
        std::mt19937_64 rng(102);
        std::uniform_int_distribution<i64> pick(1, 300);
        std::uniform_int_distribution<i64> pick_n(0, 1'000);
        int tried = 0;
        while (tried < 500) {
            const i64 q1 = pick(rng), q2 = pick(rng);
            if (std::gcd(q1, q2) != 1) continue;
            ++tried;
            const i64 n = pick_n(rng);
            if (ramanujan_sum(tables, q1 * q2, n) != ramanujan_sum(tables, q1, n) * ramanujan_sum(tables, q2, n))
                return Outcome{false, "multiplicativity fails at (" + std::to_string(q1) + "," + std::to_string(q2) + ")"};
        }
        Outcome o;
        o.pass = worst <= 1e-9;
        o.detail = "max scaled deviation = " + fmt_num(worst);
        return o;
    });

    criterion(3, "aggregate identity: residue sum of S vs tau*c_q sum", 30.0, [&] {
        const i64 x = 10'000;
        const double scale = tau_total(tables, x);
        std::mt19937_64 rng(103);
        std::uniform_int_distribution<i64> pq(1, 100);
        std::uniform_real_distribution<double> pb(-1.0 / (4.0 * static_cast<double>(x)),
                                                  1.0 / (4.0 * static_cast<double>(x)));
        double worst = 0;
        for (int i = 0; i < 50; ++i) {
            const i64 q = pq(rng);
            const double beta = pb(rng);
            worst = std::max(worst, std::abs(U_q(tables, x, q, beta) - U_q_via_residues(tables, x, q, beta)));
        }
        Outcome o;
        o.pass = worst <= 1e-8 * scale;
        o.detail = "max deviation = " + fmt_num(worst) + " vs " + fmt_num(1e-8 * scale);
        return o;
    });

    criterion(4, "main-term error scaling of U_q(x;0)", 120.0, [&] {
        const double brute_d = static_cast<double>(oracles::divisor_summatory(10'000));
        if (U_q(tables, 10'000, 1, 0.0).real() != brute_d)
            return Outcome{false, "U_1(1e4;0) does not reproduce the brute-force divisor count"};
        std::ostringstream bad;
        bool pass = true;
        for (i64 q = 1; q <= 20; ++q) {
            std::vector<AsymptoticRecord> recs;
            for (const i64 x : {i64{10'000}, i64{100'000}, i64{1'000'000}})
                recs.push_back(uq_asymptotic_record(tables, x, q));
            const auto fit = error_exponent(recs);
            if (fit.slope > 0.6) {
                pass = false;
                bad << " q=" << q << ":" << fmt_num(fit.slope);
            }
        }
        Outcome o;
        o.pass = pass;
        o.detail = pass ? "all 20 slopes <= 0.6" : "slopes over 0.6:" + bad.str();
        return o;
    });

    criterion(5, "progression divisor sums vs main term", 60.0, [&] {
        const i64 x = 100'000;
        const double limit = 100.0 * std::cbrt(static_cast<double>(x));
        std::mt19937_64 rng(105);
        double worst = 0;
        int gcd_gt_1 = 0;
        for (int i = 0; i < 40; ++i) {
            const i64 d = 1 + static_cast<i64>(rng() % 50);
            const i64 a = static_cast<i64>(rng() % static_cast<std::uint64_t>(d));
            if (std::gcd(a == 0 ? d : a, d) > 1) ++gcd_gt_1;
            worst = std::max(worst, progression_check(tables, x, d, a).abs_err);
        }
        Outcome o;
        o.pass = worst <= limit;
        o.detail = "max |exact-main| = " + fmt_num(worst) + " vs " + fmt_num(limit) + ", " +
                   std::to_string(gcd_gt_1) + " pairs with (a,d)>1";
        return o;
    });

    criterion(6, "Farey cover, disjointness and neighbor identity", 20.0, [&] {
        for (i64 Q = 2; Q <= 300; ++Q)
            if (cover_check(Q) > 0.0) return Outcome{false, "cover gap at Q=" + std::to_string(Q)};
        for (const i64 x : {i64{1'000}, i64{10'000}, i64{100'000}})
            if (disjoint_check(x, isqrt(x) / 2) <= 0.0)
                return Outcome{false, "disjointness fails at x=" + std::to_string(x)};
        for (i64 Q = 1; Q <= 500; ++Q) {
            const auto fr = farey_enumerate(Q);
            for (std::size_t i = 1; i < fr.size(); ++i)
                if (fr[i].a * fr[i - 1].q - fr[i - 1].a * fr[i].q != 1)
                    return Outcome{false, "determinant fails at Q=" + std::to_string(Q)};
        }
        return Outcome{true, "cover Q<=300, disjoint x<=1e5, determinant Q<=500"};
    });

    criterion(7, "sharp geometric-sum bound", 1.0, [&] {
        std::mt19937_64 rng(107);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        std::uniform_int_distribution<i64> pn(0, 10'000);
        std::uniform_int_distribution<i64> plen(1, 10'000);
        double worst = -1;
        for (int i = 0; i < 1'000; ++i) {
            const i64 n1 = pn(rng);
            const auto b = geometric_sum_bound_check(n1, n1 + plen(rng), u(rng));
            worst = std::max(worst, b.lhs - b.rhs);
        }
        Outcome o;
        o.pass = worst <= 1e-9;
        o.detail = "max lhs-rhs = " + fmt_num(worst);
        return o;
    });

    criterion(8, "two-sided bracket for I(x) at desk scale", 300.0, [&] {
        std::ostringstream detail;
        bool pass = true;
        for (const i64 x : {i64{4'096}, i64{16'384}, i64{65'536}}) {
            const auto r = l1_norm(tables, x, 1e-3, i64{1} << 24, 2);
            const double sx = std::sqrt(static_cast<double>(x));
            const double lx = std::log(static_cast<double>(x));
            double max_tau = 0;
            KahanSum tau_sq;
            for (i64 n = 1; n <= x; ++n) {
                max_tau = std::max(max_tau, static_cast<double>(tables.tau[n]));
                tau_sq.add(static_cast<double>(tables.tau[n]) * static_cast<double>(tables.tau[n]));
            }
            const bool ok = r.converged && r.value >= 0.01 * sx && r.value <= 10.0 * sx * lx &&
                            r.value >= max_tau && r.value <= std::sqrt(tau_sq.value());
            pass = pass && ok;
            detail << " I(" << x << ")=" << fmt_num(r.value);
        }
        return Outcome{pass, detail.str()};
    });

    criterion(9, "lower-bound functional below I(x)", 120.0, [&] {
        std::ostringstream detail;
        bool pass = true;
        for (const i64 x : {i64{256}, i64{1'024}, i64{4'096}}) {
            const double f65 = lower_bound_functional(tables, x, 65, 2);
            const double f129 = lower_bound_functional(tables, x, 129, 2);
            const auto r = l1_norm(tables, x, 1e-3, i64{1} << 24, 2);
            const double combined = r.error_estimate + std::abs(f65 - f129);
            const bool ok = r.converged && f65 <= r.value + combined;
            pass = pass && ok;
            detail << " x=" << x << ": " << fmt_num(f65) << " <= " << fmt_num(r.value);
        }
        return Outcome{pass, detail.str()};
    });

    criterion(10, "closing asymptotic constant", 10.0, [&] {
        const auto c = closing_constant_check(tables, 1'000'000);
        Outcome o;
        o.pass = std::abs(c.ratio - 1.0) <= 0.05;
        o.detail = "lhs = " + fmt_num(c.lhs) + ", target = " + fmt_num(c.target) +
                   ", ratio = " + fmt_num(c.ratio) + ", lhs/sqrt(x) = " + fmt_num(c.lhs / 1'000.0);
        return o;
    });

    criterion(11, "Parseval witnesses for S and V", 5.0, [&] {
        const i64 x = 2'000, N = 4'096;
        const auto g = grid_eval(tables, x, N);
        KahanSum power, tau_sq;
        for (const auto& v : g.values) power.add(std::norm(v));
        for (i64 n = 1; n <= x; ++n)
            tau_sq.add(static_cast<double>(tables.tau[n]) * static_cast<double>(tables.tau[n]));
        const double rel_s = std::abs(power.value() / static_cast<double>(N) - tau_sq.value()) / tau_sq.value();

        KahanSum v_power;
        for (i64 k = 0; k < N; ++k)
            v_power.add(std::norm(eval_V(x, static_cast<double>(k) / static_cast<double>(N))));
        const double expect = static_cast<double>(isqrt(x));
        const double rel_v = std::abs(v_power.value() / static_cast<double>(N) - expect) / expect;

        Outcome o;
        o.pass = rel_s <= 1e-6 && rel_v <= 1e-6;
        o.detail = "S: " + fmt_num(rel_s) + ", V: " + fmt_num(rel_v) + " relative";
        return o;
    });

    return failures;
}
