#include "triopoly/interval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "triopoly/core.hpp"

namespace triopoly {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double down(double v) { return std::nextafter(v, -kInf); }
double up(double v) { return std::nextafter(v, kInf); }

// Bounds of a + b. The TwoSum error e satisfies a + b == s + e exactly.
void add_bounds(double a, double b, double& lo, double& hi) {
    const double s = a + b;
    const double bb = s - a;
    const double e = (a - (s - bb)) + (b - bb);
    lo = e < 0.0 ? down(s) : s;
    hi = e > 0.0 ? up(s) : s;
    if (!std::isfinite(s)) { lo = down(s); hi = up(s); }
}

void mul_bounds(double a, double b, double& lo, double& hi) {
    const double p = a * b;
    if (a == 0.0 || b == 0.0) { lo = hi = 0.0; return; }
    const double e = std::fma(a, b, -p);
    lo = e < 0.0 ? down(p) : p;
    hi = e > 0.0 ? up(p) : p;
    // Underflow makes the FMA residual unreliable.
    if (std::abs(p) < 1e-290) { lo = down(p); hi = up(p); }
}

void div_bounds(double a, double b, double& lo, double& hi) {
    const double q = a / b;
    // a - q*b is exact; the true quotient is q + r / b.
    const double r = std::fma(-q, b, a);
    const double sgn = (r > 0.0) == (b > 0.0) ? 1.0 : -1.0;
    lo = (r != 0.0 && sgn < 0.0) ? down(q) : q;
    hi = (r != 0.0 && sgn > 0.0) ? up(q) : q;
    if (std::abs(q) < 1e-290 && a != 0.0) { lo = down(q); hi = up(q); }
}

void sqrt_bounds(double a, double& lo, double& hi) {
    const double s = std::sqrt(a);
    const double r = std::fma(-s, s, a);
    lo = r < 0.0 ? down(s) : s;
    hi = r > 0.0 ? up(s) : s;
}

}  // namespace

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi) {
    if (!(lo <= hi)) throw std::invalid_argument("Interval: lo must not exceed hi");
}

double Interval::mid() const {
    return lo_ == hi_ ? lo_ : lo_ + (hi_ - lo_) / 2.0;
}

std::array<Interval, 2> Interval::bisect() const {
    const double m = mid();
    return {Interval(lo_, m), Interval(m, hi_)};
}

Interval operator+(const Interval& a, const Interval& b) {
    double l, h, t;
    add_bounds(a.lo(), b.lo(), l, t);
    add_bounds(a.hi(), b.hi(), t, h);
    return {l, h};
}

Interval operator-(const Interval& a) { return {-a.hi(), -a.lo()}; }

Interval operator-(const Interval& a, const Interval& b) { return a + (-b); }

Interval operator*(const Interval& a, const Interval& b) {
    double lo = kInf, hi = -kInf;
    for (double u : {a.lo(), a.hi()})
        for (double v : {b.lo(), b.hi()}) {
            double l, h;
            mul_bounds(u, v, l, h);
            lo = std::min(lo, l);
            hi = std::max(hi, h);
        }
    return {lo, hi};
}

Interval operator/(const Interval& a, const Interval& b) {
    if (b.contains(0.0)) throw DomainError("interval division by an interval containing zero");
    double lo = kInf, hi = -kInf;
    for (double u : {a.lo(), a.hi()})
        for (double v : {b.lo(), b.hi()}) {
            double l, h;
            div_bounds(u, v, l, h);
            lo = std::min(lo, l);
            hi = std::max(hi, h);
        }
    return {lo, hi};
}

Interval sqr(const Interval& a) {
    double l1, h1, l2, h2;
    mul_bounds(a.lo(), a.lo(), l1, h1);
    mul_bounds(a.hi(), a.hi(), l2, h2);
    if (a.contains(0.0)) return {0.0, std::max(h1, h2)};
    return {std::min(l1, l2), std::max(h1, h2)};
}

Interval sqrt(const Interval& a) {
    if (a.lo() < 0.0) throw DomainError("interval sqrt of a possibly negative argument");
    double l, h, t;
    sqrt_bounds(a.lo(), l, t);
    sqrt_bounds(a.hi(), t, h);
    return {l, h};
}

Interval hull(const Interval& a, const Interval& b) {
    return {std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi())};
}

Interval intersect(const Interval& a, const Interval& b) {
    return {std::max(a.lo(), b.lo()), std::min(a.hi(), b.hi())};
}

std::ostream& operator<<(std::ostream& os, const Interval& a) {
    return os << '[' << a.lo() << ", " << a.hi() << ']';
}

std::string_view rounding_strategy() { return "directed-eft"; }

double IntervalBox::width() const {
    return std::max({ix.width(), iy.width(), iz.width()});
}

int IntervalBox::widest_axis() const {
    int best = 0;
    for (int i = 1; i < 3; ++i)
        if ((*this)[i].width() > (*this)[best].width()) best = i;
    return best;
}

std::array<IntervalBox, 2> IntervalBox::bisect(int axis) const {
    auto halves = (*this)[axis].bisect();
    IntervalBox a = *this, b = *this;
    a[axis] = halves[0];
    b[axis] = halves[1];
    return {a, b};
}

bool IntervalBox::intersects(const IntervalBox& o) const {
    return ix.intersects(o.ix) && iy.intersects(o.iy) && iz.intersects(o.iz);
}

bool IntervalBox::contains(const IntervalBox& o) const {
    return ix.contains(o.ix) && iy.contains(o.iy) && iz.contains(o.iz);
}

IntervalBox IntervalBox::hull(const IntervalBox& o) const {
    return {triopoly::hull(ix, o.ix), triopoly::hull(iy, o.iy), triopoly::hull(iz, o.iz)};
}

}  // namespace triopoly
