// Acceptance checks: one PASS/FAIL line per criterion. Soft criteria are
// reported but do not affect the exit status.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "triopoly/serialize.hpp"

using namespace triopoly;

namespace {

int blocking_failures = 0;

void report(int n, bool ok, const std::string& what, bool soft = false) {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << n << ": " << what << (soft ? " (soft)" : "") << '\n';
    if (!ok && !soft) ++blocking_failures;
}

int cli_exit(const std::string& args) {
    const std::string cmd = std::string(TRIOPOLY_CLI) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string cli_out(const std::string& args) {
    const std::string cmd = std::string(TRIOPOLY_CLI) + " " + args + " 2>/dev/null";
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return out;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    pclose(pipe);
    return out;
}

std::string g17(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

void criterion1() {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    for (Engine e : {Engine::Analytic, Engine::Interval}) {
        CertifyOptions opt;
        opt.engine = e;
        opt.tol = 1e-8;
        const Certificate c = certify_box(Params::paper(), Box::paper(), opt);
        ok = ok && c.verdict == Verdict::Certified && c.records.size() == 10;
        for (const auto& r : c.records) ok = ok && r.status == Status::Pass;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ok = ok && secs < 60.0;
    report(1, ok, "paper box passes H1-H5 and C1-C5 under both engines at tol 1e-8 (" + g17(secs) + " s)");
}

void criterion2() {
    const Params p = Params::paper();
    const SearchSpace space = SearchSpace::around(Box::paper(), 0.1);
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int boxes = 0, agree = 0;
    for (int tries = 0; boxes < 50 && tries < 1000000; ++tries) {
        std::array<double, 5> v;
        for (std::size_t i = 0; i < 5; ++i) v[i] = space.lo[i] + u(rng) * (space.hi[i] - space.lo[i]);
        if (!score_candidate(p, space, v).violated.empty()) continue;
        const Box b = space.box_at(v);
        ++boxes;
        const auto a = check_C_analytic(p, b);
        const auto r = verify_C_rigorous(p, b, 1e-8);
        bool same = true;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i].status == r[i].status) continue;
            double margin = INFINITY;
            for (const auto& q : a[i].parts)
                if (q.rel != Relation::Eq) margin = std::min(margin, std::abs(q.margin));
            same = same && r[i].status == Status::Inconclusive && margin < 1e-8;
        }
        agree += same;
    }
    report(2, boxes == 50 && agree == 50,
           "analytic and interval C verdicts agree on " + std::to_string(agree) + "/" + std::to_string(boxes) +
               " H-passing boxes");
}

void criterion3() {
    const Params p = Params::paper();
    const Box b = Box::paper();
    const IntervalBox r = b.as_intervals();
    struct Q {
        IntervalBox region;
        Component c;
        Extremum e;
        double closed;
    };
    const Q qs[] = {
        {r, Component::F1, Extremum::Max, (b.xr() + 1.0 / (4.0 * p.c1)) / 2.0},
        {r, Component::F2, Extremum::Max, std::sqrt(b.xl() / p.c2) - b.xl()},
        {r, Component::F2, Extremum::Min, std::sqrt((b.xr() + b.zr()) / p.c2) - (b.xr() + b.zr())},
        {b.face(2, b.zr()), Component::F3, Extremum::Max, eval_map(p, {b.xl(), b.yl(), b.zr()}).z},
        {b.face(2, b.zmid()), Component::F3, Extremum::Min, eval_map(p, {b.xr(), b.yr(), b.zmid()}).z},
    };
    bool ok = std::abs(qs[0].closed - 0.6283333334) < 1e-10 && std::abs(qs[1].closed - 0.4472888) < 1e-7 &&
              std::abs(qs[2].closed - 0.3395) < 1e-3 && qs[2].closed >= b.yl() &&
              std::abs(qs[3].closed + 0.0521) < 1e-3 && qs[3].closed <= 0.0 &&
              std::abs(qs[4].closed - 0.4000) < 1e-3 && qs[4].closed > b.zr();
    for (const auto& q : qs) {
        const BoundReport br = bound_extremum(p, q.region, q.c, q.e, 1e-8);
        ok = ok && br.conclusive && br.enclosure.contains(q.closed) && br.width <= 1e-8;
    }
    report(3, ok, "extremal values match closed forms with enclosures of width <= 1e-8");
}

void criterion4() {
    const Params p = Params::paper();
    const OrientedBox ob(Box::paper());
    const auto k = build_K_enclosures(p, ob, 64);
    const BoundReport mid = bound_extremum(p, ob.midplane(), Component::F3, Extremum::Min, 1e-8);
    const bool ok = !k.first.cells.empty() && !k.second.cells.empty() && covers_disjoint(k.first, k.second) &&
                    mid.conclusive && mid.enclosure.lo() > Box::paper().zr();
    report(4, ok,
           "K covers at resolution 64 nonempty (" + std::to_string(k.first.cells.size()) + ", " +
               std::to_string(k.second.cells.size()) + " cells) and disjoint; F(S) misses R");
}

void criterion5() {
    const Params p = Params::paper();
    const OrientedBox ob(Box::paper());
    const auto fps = fixed_points(p);
    bool ok = fps.size() >= 2;
    if (ok) {
        const State in = fps[0].point, bd = fps[1].point;
        ok = fps[0].residual < 1e-10 && fps[1].residual < 1e-10 &&
             max_abs(in - State{0.6243497, 0.3746098, 0.2913632}) < 1e-7 &&
             max_abs(bd - State{0.6094183, 0.4432133, 0.0}) < 1e-7 && ob.half(1).contains(in) &&
             ob.half(0).contains(bd);
        for (int i = 0; i < 2; ++i) {
            const FixedPointSearch f = locate_fixed_point_in(p, ob, i);
            ok = ok && f.converged && f.in_half && f.residual < 1e-10;
        }
    }
    report(5, ok, "two fixed points with residual < 1e-10, one in each half-box");
}

void criterion6() {
    const Params p = Params::paper();
    const OrientedBox ob(Box::paper());
    bool ok = true;
    int total = 0;
    for (int k = 1; k <= 3; ++k) {
        const WordTable t = count_periodic_words(p, ob, k, 1e-10);
        ok = ok && t.realized == (1 << k);
        total += t.realized;
        for (const auto& r : t.rows) {
            ok = ok && r.converged && r.residual < 1e-8 && r.realized == r.word.symbols();
            const Itinerary it = itinerary(p, ob, r.point, 2 * k + 1);
            const Itinerary sh = itinerary(p, ob, eval_map(p, r.point), 2 * k);
            ok = ok && !it.exit_step && !sh.exit_step && it.symbols.size() == static_cast<std::size_t>(2 * k + 1) &&
                 sh.symbols.size() == static_cast<std::size_t>(2 * k);
            for (int j = 0; ok && j < 2 * k; ++j) {
                ok = ok && it.symbols[static_cast<std::size_t>(j)] == r.word[j % k];
                ok = ok && sh.symbols[static_cast<std::size_t>(j)] == it.symbols[static_cast<std::size_t>(j + 1)];
            }
        }
    }
    report(6, ok, "all words of length 1-3 realized (" + std::to_string(total) + "/14) with shifted itineraries");
}

void criterion7() {
    const bool certified = certify_box(Params::paper(), Box::paper()).verdict == Verdict::Certified;
    const double h = entropy_lower_bound(certified);
    report(7, h == 0.6931471805599453, "entropy lower bound " + fmt(h));
}

void criterion8() {
    const Params p = Params::paper();
    const OrientedBox ob(Box::paper());
    std::mt19937_64 rng(8);
    int failures = 0;
    for (int i = 0; i < 100; ++i) {
        const StretchReport r = check_path_stretching(p, ob, random_monotone_path(ob, 6, rng));
        if (!r.stretched() || r.crossings.size() != 2 || r.crossings[0].t_end > r.crossings[1].t_begin) ++failures;
    }
    report(8, failures == 0, "100 random paths stretched with two disjoint crossings, " + std::to_string(failures) +
                                 " failures");
}

void criterion9() {
    const Params p = Params::paper();
    const Box b = Box::paper();
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const State s{b.xl() + u(rng) * (b.xr() - b.xl()), b.yl() + u(rng) * (b.yr() - b.yl()), u(rng) * b.zr()};
        const Jacobian j = eval_jacobian(p, s);
        const double h = 1e-6;
        for (int c = 0; c < 3; ++c) {
            State a = s, m = s;
            a[c] += h;
            m[c] -= h;
            const State col = (1.0 / (2.0 * h)) * (eval_map(p, a) - eval_map(p, m));
            for (int r = 0; r < 3; ++r) {
                const double scale = std::max({std::abs(j[r][0]), std::abs(j[r][1]), std::abs(j[r][2])});
                worst = std::max(worst, std::abs(j[r][c] - col[r]) / scale);
            }
        }
    }
    report(9, worst < 1e-6, "Jacobian vs central differences, max relative error " + g17(worst));
}

void criterion10() {
    const std::string params = "--params 0.4,0.55,0.6,17";
    const std::string bad = "--box 0.5766666668,0.6316666668,0.3366666668,0.4516666668,0,0.38";
    const Certificate c = certify_box(Params::paper(), Box(0.5766666668, 0.6316666668, 0.3366666668, 0.4516666668,
                                                           0.0, 0.38));
    const bool h2 = c.find("H2")->status == Status::Fail;
    const bool falsified = cli_exit("certify " + params + " " + bad) == 1;
    const bool raw = cli_exit("certify --preset paper-raw") == 3;
    report(10, h2 && falsified && raw, "z_r = 0.38 fails H2; paper-raw box rejected by the box invariants");

    SearchOptions opt;
    opt.budget = 100000;
    const SearchResult r = search_boxes(Params(0.4, 0.55, 0.6, 10.0), opt);
    const std::string summary = cli_out("search --params 0.4,0.55,0.6,10 --budget 100000");
    const bool empty = r.found.empty() && summary.find("\"found\":0") != std::string::npos;
    report(10, empty,
           "box search at alpha = 10 with budget 1e5 is empty (" + std::to_string(r.evaluated) + " evaluated)", true);
}

void criterion11() {
    const Params p = Params::paper();
    const Box b = Box::paper();
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int escaped = 0;
    for (int i = 0; i < 100; ++i) {
        const State s{b.xl() + u(rng) * (b.xr() - b.xl()), b.yl() + u(rng) * (b.yr() - b.yl()), u(rng) * b.zr()};
        escaped += simulate(p, s, 10000, 0).escape_step.has_value();
    }
    report(11, escaped > 50, "alpha = 17: " + std::to_string(escaped) + "/100 orbits escape within 1e4 steps", true);

    const LogisticReport l = logistic_sap_demo(3.88);
    const bool first_only_above_4 = !logistic_sap_demo(4.0).first.found && logistic_sap_demo(4.01).first.found &&
                                    logistic_sap_demo(4.5).first.found;
    report(11, l.second.found && !l.first.found && first_only_above_4,
           "logistic: second-iterate certificate at mu = 3.88, first-iterate only for mu > 4", true);

    const Params p8(0.4, 0.55, 0.6, 8.0);
    const OrbitRecord o = simulate(p8, nash_point(p8) + State{1e-3, 1e-3, 1e-3}, 1, 5000);
    double lyap = NAN;
    if (!o.escape_step) lyap = lyapunov_spectrum(p8, o.states.back(), 100000).exponents[0];
    report(11, !o.escape_step && lyap > 0.0,
           "alpha = 8: bounded orbit near the Nash point with largest Lyapunov exponent " + fmt(lyap), true);
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    criterion11();
    std::cout << (blocking_failures == 0 ? "all blocking criteria pass" : "blocking failures: " +
                                                                              std::to_string(blocking_failures))
              << '\n';
    return blocking_failures == 0 ? 0 : 1;
}
