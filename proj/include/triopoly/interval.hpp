#pragma once

#include <array>
#include <iosfwd>
#include <string_view>

namespace triopoly {

/// Closed interval [lo, hi] with outward-rounded arithmetic.
///
/// Each primitive operation computes the round-to-nearest result and its exact
/// rounding error with an error-free transformation (TwoSum, FMA residuals),
/// then moves the bound one ulp outward only when the error points outward.
/// This is equivalent to directed rounding without touching the FPU mode.
class Interval {
public:
    constexpr Interval() = default;
    constexpr Interval(double point) : lo_(point), hi_(point) {}  // NOLINT(implicit)
    Interval(double lo, double hi);

    double lo() const { return lo_; }
    double hi() const { return hi_; }
    double width() const { return hi_ - lo_; }
    double mid() const;
    bool degenerate() const { return lo_ == hi_; }

    bool contains(double v) const { return lo_ <= v && v <= hi_; }
    bool contains(const Interval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
    bool intersects(const Interval& o) const { return lo_ <= o.hi_ && o.lo_ <= hi_; }
    bool positive() const { return lo_ > 0.0; }

    /// Both halves share the midpoint.
    std::array<Interval, 2> bisect() const;

    friend bool operator==(const Interval&, const Interval&) = default;

private:
    double lo_ = 0.0;
    double hi_ = 0.0;
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator-(const Interval& a);
Interval operator*(const Interval& a, const Interval& b);
/// Requires b strictly positive or strictly negative; throws DomainError otherwise.
Interval operator/(const Interval& a, const Interval& b);
Interval sqr(const Interval& a);
/// Requires a.lo() >= 0; throws DomainError otherwise.
Interval sqrt(const Interval& a);

Interval hull(const Interval& a, const Interval& b);
/// Precondition: a.intersects(b).
Interval intersect(const Interval& a, const Interval& b);

std::ostream& operator<<(std::ostream& os, const Interval& a);

/// Name of the outward rounding strategy, recorded in reports.
std::string_view rounding_strategy();

/// Axis-aligned box of three intervals. Degenerate components describe faces.
struct IntervalBox {
    Interval ix;
    Interval iy;
    Interval iz;

    const Interval& operator[](int i) const { return i == 0 ? ix : (i == 1 ? iy : iz); }
    Interval& operator[](int i) { return i == 0 ? ix : (i == 1 ? iy : iz); }

    double width() const;
    /// Widest coordinate; ties go to the lower index (x, then y, then z).
    int widest_axis() const;
    std::array<IntervalBox, 2> bisect(int axis) const;
    bool intersects(const IntervalBox& o) const;
    bool contains(const IntervalBox& o) const;
    IntervalBox hull(const IntervalBox& o) const;

    friend bool operator==(const IntervalBox&, const IntervalBox&) = default;
};

}  // namespace triopoly
