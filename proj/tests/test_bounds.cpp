#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "triopoly/bounds.hpp"

using namespace triopoly;

namespace {

State sample(const IntervalBox& r, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    State s;
    for (int i = 0; i < 3; ++i) s[i] = r[i].lo() + u(rng) * r[i].width();
    return s;
}

// Monte Carlo extremum of one component: an inner estimate of the true value.
double sampled_extremum(const Params& p, const IntervalBox& r, Component c, Extremum e, std::mt19937_64& rng) {
    double best = e == Extremum::Max ? -INFINITY : INFINITY;
    for (int i = 0; i < 20000; ++i) {
        const double v = eval_map(p, sample(r, rng))[static_cast<int>(c)];
        best = e == Extremum::Max ? std::max(best, v) : std::min(best, v);
    }
    return best;
}

}  // namespace

TEST_CASE("max of F2 over the reference box matches psi(x_l)") {
    const Params p = Params::paper();
    const BoundReport r = bound_extremum(p, Box::paper().as_intervals(), Component::F2, Extremum::Max, 1e-8);
    CHECK(r.conclusive);
    CHECK(r.width <= 1e-8);
    const double expect = std::sqrt(0.5766666668 / 0.55) - 0.5766666668;
    CHECK(r.enclosure.contains(expect));
    CHECK(expect == doctest::Approx(0.4472888).epsilon(1e-7));
    CHECK(r.rounding == "directed-eft");
}

TEST_CASE("face extrema are consistent with C2 and C3'") {
    const Params p = Params::paper();
    const Box b = Box::paper();
    const BoundReport top = bound_extremum(p, b.face(2, b.zr()), Component::F3, Extremum::Max, 1e-8);
    CHECK(top.enclosure.hi() <= 0.0);
    CHECK(top.enclosure.contains(eval_map(p, {b.xl(), b.yl(), b.zr()}).z));
    const BoundReport mid = bound_extremum(p, b.face(2, b.zmid()), Component::F3, Extremum::Min, 1e-8);
    CHECK(mid.enclosure.lo() > b.zr());
    CHECK(mid.enclosure.contains(eval_map(p, {b.xr(), b.yr(), b.zmid()}).z));
}

TEST_CASE("enclosures contain sampled values and the closed forms") {
    const Params p = Params::paper();
    const Box b = Box::paper();
    std::mt19937_64 rng(31);
    struct Query {
        IntervalBox region;
        Component c;
        Extremum e;
        double closed;
    };
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const Query qs[] = {
        {b.as_intervals(), Component::F1, Extremum::Max, (b.xr() + 1.0 / 1.6) / 2.0},
        {b.as_intervals(), Component::F1, Extremum::Min, eval_map(p, {b.xl(), b.yl(), 0.0}).x},
        {b.as_intervals(), Component::F2, Extremum::Min, std::sqrt((b.xr() + b.zr()) / 0.55) - (b.xr() + b.zr())},
        {b.as_intervals(), Component::F3, Extremum::Max, nan},
        {b.as_intervals(), Component::F3, Extremum::Min, nan},
    };
    for (const auto& q : qs) {
        const BoundReport r = bound_extremum(p, q.region, q.c, q.e, 1e-8);
        CHECK(r.conclusive);
        if (!std::isnan(q.closed)) CHECK(r.enclosure.contains(q.closed));
        const double inner = sampled_extremum(p, q.region, q.c, q.e, rng);
        // Sampled values never beat the rigorous outer bound.
        if (q.e == Extremum::Max) CHECK(inner <= r.enclosure.hi());
        else CHECK(inner >= r.enclosure.lo());
        // The reported best point is feasible and attains the inner bound.
        CHECK(q.region.contains({Interval(r.best_point.x), Interval(r.best_point.y), Interval(r.best_point.z)}));
        const double at_best = eval_map(p, r.best_point)[static_cast<int>(q.c)];
        CHECK(std::abs(at_best - (q.e == Extremum::Max ? r.enclosure.lo() : r.enclosure.hi())) < 1e-12);
    }
}

TEST_CASE("soundness over 1000 random points of each queried region") {
    const Params p = Params::paper();
    const Box b = Box::paper();
    std::mt19937_64 rng(8);
    for (int c = 0; c < 3; ++c) {
        const auto comp = static_cast<Component>(c);
        const BoundReport mx = bound_extremum(p, b.as_intervals(), comp, Extremum::Max, 1e-8);
        const BoundReport mn = bound_extremum(p, b.as_intervals(), comp, Extremum::Min, 1e-8);
        for (int i = 0; i < 1000; ++i) {
            const double v = eval_map(p, sample(b.as_intervals(), rng))[c];
            CHECK(v <= mx.enclosure.hi());
            CHECK(v >= mn.enclosure.lo());
        }
    }
}

TEST_CASE("enclosures shrink with the tolerance") {
    const Params p = Params::paper();
    const Box b = Box::paper();
    for (double tol : {1e-3, 1e-5, 1e-7}) {
        const BoundReport a = bound_extremum(p, b.as_intervals(), Component::F3, Extremum::Max, tol);
        const BoundReport c = bound_extremum(p, b.as_intervals(), Component::F3, Extremum::Max, tol / 10);
        CHECK(a.width <= tol);
        CHECK(c.width <= tol / 10);
        CHECK(a.enclosure.contains(c.enclosure));
    }
}

TEST_CASE("budget exhaustion is reported, never a false pass") {
    const Params p = Params::paper();
    const Box b = Box::paper();
    BoundOptions opt;
    opt.budget = 1;
    opt.batch = 1;
    const BoundReport r = bound_extremum(p, b.as_intervals(), Component::F3, Extremum::Max, 1e-12, opt);
    CHECK_FALSE(r.conclusive);
    CHECK(r.subdivisions <= 1);
    CHECK(r.width > 1e-12);
    CHECK_THROWS_AS(bound_extremum(p, b.as_intervals(), Component::F3, Extremum::Max, 0.0), std::invalid_argument);
}

TEST_CASE("rigorous C verdicts on the reference box") {
    const auto recs = verify_C_rigorous(Params::paper(), Box::paper(), 1e-8);
    REQUIRE(recs.size() == 5);
    for (const auto& r : recs) {
        CHECK(r.status == Status::Pass);
        CHECK(r.engine == "interval");
        CHECK(r.note.empty());
    }
}

TEST_CASE("rigorous C2 fails for z_r = 0.38") {
    const Box b = Box::paper();
    const Box bad(b.xl(), b.xr(), b.yl(), b.yr(), 0.0, 0.38);
    CHECK(eval_map(Params::paper(), {b.xl(), b.yl(), 0.38}).z > 0.0);
    const auto recs = verify_C_rigorous(Params::paper(), bad, 1e-8);
    CHECK(recs[1].id == "C2");
    CHECK(recs[1].status == Status::Fail);
}

TEST_CASE("a loose tolerance on a tight claim is inconclusive, not a pass") {
    const Params p = Params::paper();
    const Box b = Box::paper();
    // Shrink z_r until C3' is tight: min F3 on the midplane sits just above z_r.
    const double worst = eval_map(p, {b.xr(), b.yr(), b.zmid()}).z;
    CHECK(worst > b.zr());
    BoundOptions opt;
    opt.budget = 4;
    const auto recs = verify_C_rigorous(p, b, 1.0, opt);
    for (const auto& r : recs) CHECK(r.status != Status::Fail);
    // With an absurd tolerance the B&B stops immediately; whatever it reports
    // must never contradict the analytic verdict.
    for (const auto& r : recs) CHECK((r.status == Status::Pass || r.status == Status::Inconclusive));
}

TEST_CASE("boxes leaving the domain make the rigorous part inapplicable") {
    const auto recs = verify_C_rigorous(Params::paper(), Box(-0.5, 0.1, 0.1, 0.2, 0.0, 0.3), 1e-8);
    for (const auto& r : recs) CHECK(r.status == Status::Inapplicable);
}

TEST_CASE("refined evaluation encloses sampled values") {
    const Params p = Params::paper();
    std::mt19937_64 rng(4);
    const IntervalBox ib{Interval(0.58, 0.6), Interval(0.35, 0.4), Interval(0.1, 0.2)};
    for (int c = 0; c < 3; ++c) {
        const Interval r = refined_eval(p, ib, static_cast<Component>(c));
        const Interval n = interval_eval(p, ib)[static_cast<std::size_t>(c)];
        CHECK(r.width() <= n.width() * (1.0 + 1e-12));
        for (int i = 0; i < 1000; ++i) CHECK(r.contains(eval_map(p, sample(ib, rng))[c]));
    }
}
