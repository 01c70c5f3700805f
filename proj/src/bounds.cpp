#include "triopoly/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

namespace triopoly {

std::string to_string(Component c) {
    switch (c) {
        case Component::F1: return "F1";
        case Component::F2: return "F2";
        case Component::F3: return "F3";
    }
    return "?";
}

std::string to_string(Extremum e) { return e == Extremum::Max ? "max" : "min"; }

namespace {

struct Sums {
    Interval a;  // x + y
    Interval d;  // x + z
    Interval q;  // x + y + z
};

Sums sums(const IntervalBox& ib) {
    Sums s{ib.ix + ib.iy, ib.ix + ib.iz, ib.ix + ib.iy + ib.iz};
    if (!s.d.positive()) throw DomainError("interval box reaches x + z <= 0");
    if (!s.q.positive()) throw DomainError("interval box reaches x + y + z <= 0");
    return s;
}

// Exact range of a concave unary function given its vertex and peak value.
template <typename F>
Interval concave_range(const Interval& arg, const Interval& vertex, const Interval& peak, F f) {
    const Interval at_lo = f(Interval(arg.lo()));
    const Interval at_hi = f(Interval(arg.hi()));
    const double lo = std::min(at_lo.lo(), at_hi.lo());
    double hi = std::max(at_lo.hi(), at_hi.hi());
    if (arg.intersects(vertex)) hi = std::max(hi, peak.hi());
    return {lo, hi};
}

// Q - c1 Q^2, vertex 1/(2 c1), peak 1/(4 c1).
Interval quad_part(const Params& p, const Interval& q) {
    const Interval c1(p.c1);
    return concave_range(q, Interval(1.0) / (Interval(2.0) * c1), Interval(1.0) / (Interval(4.0) * c1),
                         [&](const Interval& v) { return v - c1 * sqr(v); });
}

// sqrt(D / c2) - D, vertex 1/(4 c2), peak 1/(4 c2).
Interval psi_part(const Params& p, const Interval& d) {
    const Interval c2(p.c2);
    const Interval v = Interval(1.0) / (Interval(4.0) * c2);
    return concave_range(d, v, v, [&](const Interval& t) { return sqrt(t / c2) - t; });
}

Interval f3_natural(const Params& p, const IntervalBox& ib, const Sums& s) {
    const Interval alpha(p.alpha);
    const Interval base = Interval(1.0) - alpha * Interval(p.c3);
    return ib.iz * (base + alpha * s.a / sqr(s.q));
}

Interval natural(const Params& p, const IntervalBox& ib, Component c, const Sums& s) {
    switch (c) {
        case Component::F1: return (ib.ix + quad_part(p, s.q)) / Interval(2.0);
        case Component::F2: return psi_part(p, s.d);
        case Component::F3: return f3_natural(p, ib, s);
    }
    return {};
}

Interval mean_value(const Params& p, const IntervalBox& ib, Component c, const Sums& s) {
    IntervalBox center{Interval(ib.ix.mid()), Interval(ib.iy.mid()), Interval(ib.iz.mid())};
    Interval acc = natural(p, center, c, sums(center));
    const auto g = interval_gradient(p, ib, c);
    (void)s;
    for (int i = 0; i < 3; ++i) {
        if (ib[i].degenerate()) continue;
        acc = acc + g[i] * (ib[i] - center[i]);
    }
    return acc;
}

// Collapse coordinates on which the component is monotone, toward the side
// that realizes the requested extremum.
IntervalBox reduce(const Params& p, IntervalBox ib, Component c, Extremum which) {
    for (int round = 0; round < 3; ++round) {
        const auto g = interval_gradient(p, ib, c);
        bool changed = false;
        for (int i = 0; i < 3; ++i) {
            if (ib[i].degenerate()) continue;
            const bool up = g[i].lo() >= 0.0;
            const bool down = g[i].hi() <= 0.0;
            if (!up && !down) continue;
            const bool take_hi = (which == Extremum::Max) == up;
            ib[i] = Interval(take_hi ? ib[i].hi() : ib[i].lo());
            changed = true;
        }
        if (!changed) break;
    }
    return ib;
}

}  // namespace

std::array<Interval, 3> interval_eval(const Params& p, const IntervalBox& ib) {
    const Sums s = sums(ib);
    return {natural(p, ib, Component::F1, s), natural(p, ib, Component::F2, s), natural(p, ib, Component::F3, s)};
}

std::array<Interval, 3> interval_gradient(const Params& p, const IntervalBox& ib, Component c) {
    const Sums s = sums(ib);
    switch (c) {
        case Component::F1: {
            const Interval cq = Interval(p.c1) * s.q;
            return {Interval(1.0) - cq, Interval(0.5) - cq, Interval(0.5) - cq};
        }
        case Component::F2: {
            const Interval g = Interval(1.0) / (Interval(2.0) * sqrt(Interval(p.c2) * s.d)) - Interval(1.0);
            return {g, Interval(0.0), g};
        }
        case Component::F3: {
            const Interval alpha(p.alpha);
            const Interval q3 = sqr(s.q) * s.q;
            const Interval gxy = alpha * ib.iz * (ib.iz - s.a) / q3;
            const Interval gz = Interval(1.0) - alpha * Interval(p.c3) + alpha * s.a * (s.a - ib.iz) / q3;
            return {gxy, gxy, gz};
        }
    }
    return {};
}

Interval refined_eval(const Params& p, const IntervalBox& ib, Component c) {
    auto bound_side = [&](Extremum which) {
        const IntervalBox r = reduce(p, ib, c, which);
        const Sums s = sums(r);
        const Interval nat = natural(p, r, c, s);
        const Interval mv = mean_value(p, r, c, s);
        return which == Extremum::Max ? std::min(nat.hi(), mv.hi()) : std::max(nat.lo(), mv.lo());
    };
    return {bound_side(Extremum::Min), bound_side(Extremum::Max)};
}

namespace {

struct Node {
    IntervalBox box;
    double bound;       // upper bound of the signed objective over box
    std::size_t seq;    // insertion order, for deterministic tie-breaking
};

struct NodeOrder {
    bool operator()(const Node& a, const Node& b) const {
        if (a.bound != b.bound) return a.bound < b.bound;
        return a.seq > b.seq;
    }
};

struct Child {
    IntervalBox box;
    double bound;
    double feasible;
    State point;
};

std::string describe(const IntervalBox& r) {
    std::ostringstream os;
    os.precision(10);
    os << r.ix << " x " << r.iy << " x " << r.iz;
    return os.str();
}

}  // namespace

BoundReport bound_extremum(const Params& p, const IntervalBox& region, Component c, Extremum which, double tol,
                           const BoundOptions& opt, std::string label) {
    if (!(tol > 0.0)) throw std::invalid_argument("bound_extremum: tol must be positive");
    interval_eval(p, region);  // domain precondition over the whole region

    // Work with G = F or -F and always maximize G.
    auto upper_of = [&](const IntervalBox& b) {
        const Interval e = refined_eval(p, b, c);
        return which == Extremum::Max ? e.hi() : -e.lo();
    };
    // Candidate point: midpoint of the box after pushing monotone coordinates
    // to the extremal side.
    auto feasible_at = [&](const IntervalBox& b, State& pt) {
        const IntervalBox r = reduce(p, b, c, which);
        pt = {r.ix.mid(), r.iy.mid(), r.iz.mid()};
        const IntervalBox point{Interval(pt.x), Interval(pt.y), Interval(pt.z)};
        const Interval v = interval_eval(p, point)[static_cast<int>(c)];
        return which == Extremum::Max ? v.lo() : -v.hi();
    };

    BoundReport rep;
    rep.component = c;
    rep.which = which;
    rep.region = label.empty() ? describe(region) : std::move(label);
    rep.region_box = region;
    rep.rounding = std::string(rounding_strategy());

    std::priority_queue<Node, std::vector<Node>, NodeOrder> heap;
    std::size_t seq = 0;
    double best = feasible_at(region, rep.best_point);
    heap.push({region, upper_of(region), seq++});

    const std::size_t batch = std::max<std::size_t>(1, opt.batch);
    std::vector<Node> work;
    std::vector<Child> kids;
    bool stuck = false;

    while (true) {
        const double top = heap.top().bound;
        if (top - best <= tol || rep.subdivisions >= opt.budget || stuck) break;

        work.clear();
        while (!heap.empty() && work.size() < batch && rep.subdivisions + work.size() < opt.budget &&
               heap.top().bound - best > tol) {
            if (heap.top().box.width() == 0.0) break;
            work.push_back(heap.top());
            heap.pop();
        }
        if (work.empty()) {
            stuck = true;  // only unsplittable boxes left
            continue;
        }

        kids.assign(2 * work.size(), Child{});
        const long n = static_cast<long>(work.size());
#pragma omp parallel for schedule(static) if (opt.parallel)
        for (long k = 0; k < n; ++k) {
            const Node& node = work[static_cast<std::size_t>(k)];
            const auto halves = node.box.bisect(node.box.widest_axis());
            for (int h = 0; h < 2; ++h) {
                Child& ch = kids[2 * static_cast<std::size_t>(k) + h];
                ch.box = halves[h];
                // A child cannot exceed its parent's bound.
                ch.bound = std::min(upper_of(ch.box), node.bound);
                ch.feasible = feasible_at(ch.box, ch.point);
            }
        }

        rep.subdivisions += work.size();
        for (const Child& ch : kids) {
            if (ch.feasible > best) {
                best = ch.feasible;
                rep.best_point = ch.point;
            }
        }
        for (const Child& ch : kids)
            if (ch.bound >= best) heap.push({ch.box, ch.bound, seq++});
        if (heap.empty()) heap.push({kids.front().box, best, seq++});
    }

    const double top = heap.top().bound;
    rep.enclosure = which == Extremum::Max ? Interval(best, std::max(best, top)) : Interval(-std::max(best, top), -best);
    rep.width = rep.enclosure.width();
    rep.conclusive = rep.width <= tol;
    return rep;
}

std::vector<ConditionRecord> verify_C_rigorous(const Params& p, const Box& b, double tol, const BoundOptions& opt,
                                               double mm) {
    const std::string eng = "interval";
    std::vector<ConditionRecord> out;
    try {
        interval_eval(p, b.as_intervals());
    } catch (const DomainError& e) {
        for (const char* id : {"C1", "C2", "C3'", "C4", "C5"})
            out.push_back(ConditionRecord{id, Status::Inapplicable, eng, std::string("box leaves the domain: ") + e.what(), {}, {}});
        return out;
    }

    // thr >= max over region (strict when `strict`).
    auto upper_claim = [&](std::string label, const BoundReport& r, double thr, bool strict) {
        const Interval& e = r.enclosure;
        Inequality q{std::move(label), thr, e.hi(), strict ? Relation::Gt : Relation::Ge, thr - e.hi(), Status::Inconclusive};
        if (strict ? thr - e.hi() > mm : e.hi() <= thr) q.status = Status::Pass;
        else if (strict ? e.lo() >= thr : e.lo() > thr) q.status = Status::Fail;
        return q;
    };
    // min over region >= thr (strict when `strict`).
    auto lower_claim = [&](std::string label, const BoundReport& r, double thr, bool strict) {
        const Interval& e = r.enclosure;
        Inequality q{std::move(label), e.lo(), thr, strict ? Relation::Gt : Relation::Ge, e.lo() - thr, Status::Inconclusive};
        if (strict ? e.lo() - thr > mm : e.lo() >= thr) q.status = Status::Pass;
        else if (strict ? e.hi() <= thr : e.hi() < thr) q.status = Status::Fail;
        return q;
    };
    auto record = [&](std::string id, std::vector<Inequality> parts,
                      std::vector<std::pair<std::string, const BoundReport*>> reps) {
        ConditionRecord r;
        r.id = std::move(id);
        r.engine = eng;
        r.parts = std::move(parts);
        for (const auto& q : r.parts) r.status = combine(r.status, q.status);
        for (auto& [name, rp] : reps) {
            r.extrema.emplace_back(name, rp->enclosure);
            if (!rp->conclusive) r.note += (r.note.empty() ? "" : "; ") + name + ": budget exhausted";
        }
        return r;
    };

    const auto bottom = bound_extremum(p, b.face(2, b.zl()), Component::F3, Extremum::Max, tol, opt, "bottom face");
    out.push_back(record("C1", {upper_claim("z_l >= max F3 on bottom face", bottom, b.zl(), false)},
                         {{"F3 on bottom face", &bottom}}));

    const auto top = bound_extremum(p, b.face(2, b.zr()), Component::F3, Extremum::Max, tol, opt, "top face");
    out.push_back(record("C2", {upper_claim("z_l >= max F3 on top face", top, b.zl(), false)},
                         {{"max F3 on top face", &top}}));

    const auto mid = bound_extremum(p, b.face(2, b.zmid()), Component::F3, Extremum::Min, tol, opt, "midplane");
    out.push_back(record("C3'", {lower_claim("min F3 on midplane > z_r", mid, b.zr(), true)},
                         {{"min F3 on midplane", &mid}}));

    const IntervalBox whole = b.as_intervals();
    const auto f1max = bound_extremum(p, whole, Component::F1, Extremum::Max, tol, opt, "box");
    const auto f1min = bound_extremum(p, whole, Component::F1, Extremum::Min, tol, opt, "box");
    out.push_back(record("C4",
                         {upper_claim("x_r >= max F1", f1max, b.xr(), false),
                          lower_claim("min F1 >= x_l", f1min, b.xl(), false)},
                         {{"max F1", &f1max}, {"min F1", &f1min}}));

    const auto f2max = bound_extremum(p, whole, Component::F2, Extremum::Max, tol, opt, "box");
    const auto f2min = bound_extremum(p, whole, Component::F2, Extremum::Min, tol, opt, "box");
    out.push_back(record("C5",
                         {upper_claim("y_r >= max F2", f2max, b.yr(), false),
                          lower_claim("min F2 >= y_l", f2min, b.yl(), false)},
                         {{"max F2", &f2max}, {"min F2", &f2min}}));
    return out;
}

}  // namespace triopoly
