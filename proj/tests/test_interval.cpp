#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "triopoly/bounds.hpp"
#include "triopoly/box.hpp"
#include "triopoly/interval.hpp"

using namespace triopoly;

namespace {

// Quad precision reference: products of doubles are exact, sums of doubles of
// comparable magnitude are exact.
using quad = __float128;

quad qsqrt(quad a) {
    quad r = std::sqrt(static_cast<double>(a));
    for (int i = 0; i < 3; ++i) r = (r + a / r) / 2;
    return r;
}

bool encloses(const Interval& iv, quad v) { return quad(iv.lo()) <= v && v <= quad(iv.hi()); }

std::array<quad, 3> map_quad(const Params& p, const State& s) {
    const quad x = s.x, y = s.y, z = s.z;
    const quad q = x + y + z, a = x + y, d = x + z;
    return {(x + q - quad(p.c1) * q * q) / 2, qsqrt(d / quad(p.c2)) - d,
            z * (1 - quad(p.alpha) * quad(p.c3) + quad(p.alpha) * a / (q * q))};
}

double ulp(double v) {
    v = std::abs(v);
    return std::nextafter(v, std::numeric_limits<double>::infinity()) - v;
}

}  // namespace

TEST_CASE("construction and queries") {
    CHECK_THROWS_AS(Interval(1.0, 0.0), std::invalid_argument);
    const Interval a(1.0, 3.0);
    CHECK(a.width() == 2.0);
    CHECK(a.mid() == 2.0);
    CHECK(a.contains(1.0));
    CHECK(a.contains(3.0));
    CHECK_FALSE(a.contains(3.5));
    CHECK(a.intersects(Interval(3.0, 4.0)));
    CHECK_FALSE(a.intersects(Interval(3.5, 4.0)));
    CHECK(Interval(2.0).degenerate());
    const auto halves = a.bisect();
    CHECK(halves[0].hi() == halves[1].lo());
    CHECK(hull(halves[0], halves[1]) == a);
    CHECK(rounding_strategy() == "directed-eft");
}

TEST_CASE("primitive operations enclose the exact result") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(-10.0, 10.0), pos(1e-3, 10.0);
    for (int i = 0; i < 20000; ++i) {
        const double a = u(rng), b = u(rng), c = pos(rng);
        CHECK(encloses(Interval(a) + Interval(b), quad(a) + quad(b)));
        CHECK(encloses(Interval(a) - Interval(b), quad(a) - quad(b)));
        CHECK(encloses(Interval(a) * Interval(b), quad(a) * quad(b)));
        CHECK(encloses(sqr(Interval(a)), quad(a) * quad(a)));
        const Interval q = Interval(a) / Interval(c);
        // lo * c <= a <= hi * c, exact in quad precision.
        CHECK(quad(q.lo()) * quad(c) <= quad(a));
        CHECK(quad(a) <= quad(q.hi()) * quad(c));
        const Interval r = sqrt(Interval(c));
        CHECK(quad(r.lo()) * quad(r.lo()) <= quad(c));
        CHECK(quad(c) <= quad(r.hi()) * quad(r.hi()));
        // Outward rounding costs at most one ulp per bound.
        CHECK(q.width() <= 2.0 * ulp(a / c));
        CHECK(r.width() <= 2.0 * ulp(std::sqrt(c)));
    }
}

TEST_CASE("interval operations over wide operands") {
    const Interval a(-1.0, 2.0), b(3.0, 4.0);
    CHECK(encloses(a * b, -4));
    CHECK(encloses(a * b, 8));
    CHECK((a * b).lo() <= -4.0);
    CHECK((a * b).hi() >= 8.0);
    CHECK(sqr(a).lo() == 0.0);
    CHECK(sqr(a).hi() >= 4.0);
    CHECK_THROWS_AS(b / a, DomainError);
    CHECK_THROWS_AS(sqrt(a), DomainError);
    CHECK((-a) == Interval(-2.0, 1.0));
    CHECK(intersect(a, Interval(1.0, 5.0)) == Interval(1.0, 2.0));
}

TEST_CASE("interval box splitting follows the widest axis with x, y, z ties") {
    IntervalBox ib{Interval(0.0, 1.0), Interval(0.0, 1.0), Interval(0.0, 1.0)};
    CHECK(ib.widest_axis() == 0);
    ib.iz = Interval(0.0, 2.0);
    CHECK(ib.widest_axis() == 2);
    ib.iy = Interval(0.0, 2.0);
    CHECK(ib.widest_axis() == 1);
    const auto kids = ib.bisect(1);
    CHECK(kids[0].iy == Interval(0.0, 1.0));
    CHECK(kids[1].iy == Interval(1.0, 2.0));
    CHECK(kids[0].hull(kids[1]) == ib);
    CHECK(ib.contains(kids[0]));
    CHECK(kids[0].intersects(kids[1]));
    CHECK(ib.width() == 2.0);
}

TEST_CASE("box invariants") {
    CHECK_THROWS_AS(Box(1.0, 1.0, 0.0, 1.0, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Box(0.0, 1.0, 1.0, 0.5, 0.0, 1.0), std::invalid_argument);
    const auto raw = Box::paper_raw_values();
    CHECK_THROWS_AS(Box(raw[0], raw[1], raw[2], raw[3], raw[4], raw[5]), std::invalid_argument);
    const Box b = Box::paper();
    CHECK(b.zmid() == doctest::Approx(0.3951779684 / 2));
    CHECK(b.contains({0.6, 0.4, 0.1}));
    CHECK_FALSE(b.contains({0.6, 0.4, 0.4}));
    CHECK(b.face(2, b.zr()).iz.degenerate());
    CHECK(b.with(2, 0.0, 0.2).zr() == 0.2);
    CHECK_THROWS_AS(b.with(0, 0.7, 0.6), std::invalid_argument);
}

TEST_CASE("interval map evaluation at points") {
    const Params p = Params::paper();
    const Box b = Box::paper();
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 5000; ++i) {
        const State s{b.xl() + u(rng) * (b.xr() - b.xl()), b.yl() + u(rng) * (b.yr() - b.yl()), u(rng) * b.zr()};
        const auto e = interval_eval(p, {Interval(s.x), Interval(s.y), Interval(s.z)});
        const auto ref = map_quad(p, s);
        for (int c = 0; c < 3; ++c) CHECK(encloses(e[static_cast<std::size_t>(c)], ref[static_cast<std::size_t>(c)]));
        // F1 has no cancellation: a few ulps of the value.
        CHECK(e[0].width() <= 4.0 * ulp(e[0].mid()));
        // F2 and F3 are differences of terms of size ~1 and ~alpha c3; their
        // width is measured against those terms. F3 chains about a dozen
        // outward-rounded operations, observed worst case 31 ulps.
        CHECK(e[1].width() <= 4.0 * ulp(std::sqrt((s.x + s.z) / p.c2)));
        CHECK(e[2].width() <= 32.0 * ulp(s.z * p.alpha * p.c3));
    }
}

TEST_CASE("interval map evaluation over boxes is sound and inclusion monotone") {
    const Params p = Params::paper();
    const Box b = Box::paper();
    const IntervalBox ib = b.as_intervals();
    const auto whole = interval_eval(p, ib);
    CHECK(whole[2].lo() <= 0.0);
    CHECK(whole[2].hi() >= 0.0);

    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const State s{b.xl() + u(rng) * (b.xr() - b.xl()), b.yl() + u(rng) * (b.yr() - b.yl()), u(rng) * b.zr()};
        const auto ref = map_quad(p, s);
        for (int c = 0; c < 3; ++c) CHECK(encloses(whole[static_cast<std::size_t>(c)], ref[static_cast<std::size_t>(c)]));
    }

    for (int axis = 0; axis < 3; ++axis) {
        const auto kids = ib.bisect(axis);
        const auto e0 = interval_eval(p, kids[0]);
        const auto e1 = interval_eval(p, kids[1]);
        for (int c = 0; c < 3; ++c) {
            const auto k = static_cast<std::size_t>(c);
            CHECK(whole[k].contains(hull(e0[k], e1[k])));
        }
    }
}

TEST_CASE("interval evaluation rejects boxes leaving the domain") {
    const Params p = Params::paper();
    CHECK_THROWS_AS(interval_eval(p, {Interval(-0.1, 0.1), Interval(0.1, 0.2), Interval(0.0, 0.05)}), DomainError);
    CHECK_THROWS_AS(interval_eval(p, {Interval(0.1), Interval(-1.0, 0.0), Interval(-0.2, 0.0)}), DomainError);
}

TEST_CASE("interval gradient encloses the Jacobian") {
    const Params p = Params::paper();
    const Box b = Box::paper();
    const IntervalBox ib = b.as_intervals();
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::array<std::array<Interval, 3>, 3> g;
    for (int c = 0; c < 3; ++c) g[static_cast<std::size_t>(c)] = interval_gradient(p, ib, static_cast<Component>(c));
    for (int i = 0; i < 1000; ++i) {
        const State s{b.xl() + u(rng) * (b.xr() - b.xl()), b.yl() + u(rng) * (b.yr() - b.yl()), u(rng) * b.zr()};
        const Jacobian j = eval_jacobian(p, s);
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) CHECK(g[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)].contains(j[r][c]));
    }
}
