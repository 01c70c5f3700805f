#include "triopoly/core.hpp"

#include <algorithm>
#include <cmath>

namespace triopoly {

Params::Params(double c1_, double c2_, double c3_, double alpha_)
    : c1(c1_), c2(c2_), c3(c3_), alpha(alpha_) {
    if (!(c1 > 0.0 && c2 > 0.0 && c3 > 0.0 && alpha > 0.0)) {
        throw std::invalid_argument("Params: c1, c2, c3 and alpha must be strictly positive");
    }
}

State operator+(const State& a, const State& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
State operator-(const State& a, const State& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
State operator*(double k, const State& a) { return {k * a.x, k * a.y, k * a.z}; }

double max_abs(const State& a) {
    return std::max({std::abs(a.x), std::abs(a.y), std::abs(a.z)});
}

Jacobian multiply(const Jacobian& a, const Jacobian& b) {
    Jacobian r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double acc = 0.0;
            for (int k = 0; k < 3; ++k) acc += a[i][k] * b[k][j];
            r[i][j] = acc;
        }
    return r;
}

State apply(const Jacobian& m, const State& v) {
    State r;
    for (int i = 0; i < 3; ++i) r[i] = m[i][0] * v.x + m[i][1] * v.y + m[i][2] * v.z;
    return r;
}

bool in_domain(const State& s) {
    return s.x + s.z > 0.0 && s.x + s.y + s.z > 0.0;
}

namespace {

void require_domain(const State& s) {
    if (!std::isfinite(s.x) || !std::isfinite(s.y) || !std::isfinite(s.z)) {
        throw DomainError("state has non-finite coordinates");
    }
    if (!(s.x + s.z > 0.0)) throw DomainError("x + z <= 0: F2 undefined");
    if (!(s.x + s.y + s.z > 0.0)) throw DomainError("x + y + z <= 0: F3 undefined");
}

}  // namespace

State eval_map(const Params& p, const State& s) {
    require_domain(s);
    const double q = s.x + s.y + s.z;
    const double a = s.x + s.y;
    const double d = s.x + s.z;
    State out;
    out.x = (2.0 * s.x + s.y + s.z - p.c1 * q * q) / 2.0;
    out.y = std::sqrt(d / p.c2) - d;
    out.z = s.z * (1.0 - p.alpha * p.c3 + p.alpha * a / (q * q));
    return out;
}

Jacobian eval_jacobian(const Params& p, const State& s) {
    require_domain(s);
    const double q = s.x + s.y + s.z;
    const double a = s.x + s.y;
    const double q3 = q * q * q;
    const double d2 = 1.0 / (2.0 * std::sqrt(p.c2 * (s.x + s.z))) - 1.0;
    const double d3xy = p.alpha * s.z * (q - 2.0 * a) / q3;

    Jacobian j{};
    j[0] = {1.0 - p.c1 * q, 0.5 - p.c1 * q, 0.5 - p.c1 * q};
    j[1] = {d2, 0.0, d2};
    j[2] = {d3xy, d3xy, 1.0 - p.alpha * p.c3 + p.alpha * a * (q - 2.0 * s.z) / q3};
    return j;
}

State eval_iterate(const Params& p, const State& s, int k) {
    State cur = s;
    for (int i = 0; i < k; ++i) {
        try {
            cur = eval_map(p, cur);
        } catch (const DomainError& e) {
            throw DomainError("step " + std::to_string(i) + ": " + e.what());
        }
    }
    return cur;
}

Jacobian eval_iterate_jacobian(const Params& p, const State& s, int k) {
    Jacobian acc{};
    for (int i = 0; i < 3; ++i) acc[i][i] = 1.0;
    State cur = s;
    for (int i = 0; i < k; ++i) {
        acc = multiply(eval_jacobian(p, cur), acc);
        cur = eval_map(p, cur);
    }
    return acc;
}

State nash_point(const Params& p) {
    const double q = 2.0 / (p.c1 + p.c2 + p.c3);
    const double q2 = q * q;
    return {q - p.c1 * q2, q - p.c2 * q2, q - p.c3 * q2};
}

std::vector<FixedPoint> fixed_points(const Params& p) {
    std::vector<FixedPoint> out;

    const State interior = nash_point(p);
    const double qb = 1.0 / (p.c1 + p.c2);
    // On z = 0: y = c1 Q^2 and x = c2 Q^2 with Q = x + y.
    const State boundary{p.c2 * qb * qb, p.c1 * qb * qb, 0.0};

    auto residual = [&](const State& s) {
        return in_domain(s) ? max_abs(eval_map(p, s) - s) : INFINITY;
    };
    out.push_back({interior, FixedPointKind::Interior, residual(interior),
                   interior.x > 0.0 && interior.y > 0.0 && interior.z > 0.0});
    out.push_back({boundary, FixedPointKind::Boundary, residual(boundary),
                   boundary.x > 0.0 && boundary.y > 0.0});
    return out;
}

std::string to_string(FixedPointKind k) {
    switch (k) {
        case FixedPointKind::Interior: return "interior";
        case FixedPointKind::Boundary: return "boundary";
        case FixedPointKind::Numeric: return "numeric";
    }
    return "?";
}

}  // namespace triopoly
