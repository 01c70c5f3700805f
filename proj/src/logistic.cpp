#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "triopoly/dynamics.hpp"

namespace triopoly {

double logistic_iterate(double mu, double x, int n) {
    for (int i = 0; i < n; ++i) x = mu * x * (1.0 - x);
    return x;
}

namespace {

// Turning points of f^n in (0, 1): preimages of 1/2 under f^j, j < n.
std::vector<double> turning_points(double mu, int n) {
    std::vector<double> level{0.5};
    std::vector<double> all;
    for (int j = 0; j < n; ++j) {
        for (double v : level)
            if (v > 0.0 && v < 1.0) all.push_back(v);
        std::vector<double> next;
        for (double y : level) {
            const double disc = 1.0 - 4.0 * y / mu;
            if (disc < 0.0) continue;
            const double r = std::sqrt(disc);
            next.push_back((1.0 - r) / 2.0);
            next.push_back((1.0 + r) / 2.0);
        }
        level = std::move(next);
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return all;
}

struct Lap {
    double lo, hi;
};

// Preimage of [a, b] inside a monotone segment whose image covers [a, b].
SapInterval preimage(double mu, int n, double lo, double hi, double a, double b) {
    const bool increasing = logistic_iterate(mu, hi, n) >= logistic_iterate(mu, lo, n);
    // First point of [lo, hi] where pred holds, pred monotone false -> true.
    auto first_where = [&](auto pred) {
        double l = lo, h = hi;
        if (pred(l)) return l;
        for (int it = 0; it < 200 && h - l > 0.0; ++it) {
            const double m = l + (h - l) / 2.0;
            if (m <= l || m >= h) break;
            (pred(m) ? h : l) = m;
        }
        return h;
    };
    auto last_where = [&](auto pred) {
        double l = lo, h = hi;
        if (pred(h)) return h;
        for (int it = 0; it < 200 && h - l > 0.0; ++it) {
            const double m = l + (h - l) / 2.0;
            if (m <= l || m >= h) break;
            (pred(m) ? l : h) = m;
        }
        return l;
    };
    auto f = [&](double x) { return logistic_iterate(mu, x, n); };
    if (increasing)
        return {first_where([&](double x) { return f(x) >= a; }), last_where([&](double x) { return f(x) <= b; })};
    return {first_where([&](double x) { return f(x) <= b; }), last_where([&](double x) { return f(x) >= a; })};
}

}  // namespace

IterateCertificate logistic_sap_certificate(double mu, int iterate, int grid) {
    if (!(mu > 0.0)) throw std::invalid_argument("logistic demo: mu must be positive");
    if (iterate < 1 || grid < 2) throw std::invalid_argument("logistic demo: need iterate >= 1 and grid >= 2");

    std::vector<double> cuts{0.0};
    for (double t : turning_points(mu, iterate)) cuts.push_back(t);
    cuts.push_back(1.0);
    std::vector<Lap> laps;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) laps.push_back({cuts[i], cuts[i + 1]});

    IterateCertificate best;
    best.iterate = iterate;
    auto f = [&](double x) { return logistic_iterate(mu, x, iterate); };

    for (int ia = 0; ia <= grid; ++ia) {
        const double a = static_cast<double>(ia) / grid;
        for (int ib = ia + 1; ib <= grid; ++ib) {
            const double b = static_cast<double>(ib) / grid;
            std::vector<SapInterval> covering;
            for (const Lap& lap : laps) {
                const double lo = std::max(lap.lo, a), hi = std::min(lap.hi, b);
                if (!(lo < hi)) continue;
                const double u = f(lo), v = f(hi);
                if (std::min(u, v) <= a && std::max(u, v) >= b) covering.push_back(preimage(mu, iterate, lo, hi, a, b));
            }
            for (std::size_t i = 0; i < covering.size(); ++i)
                for (std::size_t j = i + 1; j < covering.size(); ++j) {
                    const double gap = covering[j].lo - covering[i].hi;
                    if (gap > 0.0 && (!best.found || gap > best.gap)) {
                        best.found = true;
                        best.gap = gap;
                        best.target = {a, b};
                        best.i0 = covering[i];
                        best.i1 = covering[j];
                    }
                }
        }
    }
    return best;
}

LogisticReport logistic_sap_demo(double mu, int grid) {
    return {mu, logistic_sap_certificate(mu, 1, grid), logistic_sap_certificate(mu, 2, grid)};
}

}  // namespace triopoly
