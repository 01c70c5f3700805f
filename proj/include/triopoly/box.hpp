#pragma once

#include <array>

#include "triopoly/core.hpp"
#include "triopoly/interval.hpp"

namespace triopoly {

/// Axis-aligned parallelepiped [xl, xr] x [yl, yr] x [zl, zr] with
/// strictly ordered sides.
class Box {
public:
    Box(double xl, double xr, double yl, double yr, double zl, double zr);

    double xl() const { return xl_; }
    double xr() const { return xr_; }
    double yl() const { return yl_; }
    double yr() const { return yr_; }
    double zl() const { return zl_; }
    double zr() const { return zr_; }
    double zmid() const { return (zl_ + zr_) / 2.0; }

    double lo(int axis) const;
    double hi(int axis) const;

    bool contains(const State& s) const;
    IntervalBox as_intervals() const;
    /// Slice at a fixed value of `axis`.
    IntervalBox face(int axis, double value) const;

    /// Copy with one bound replaced; revalidates the invariants.
    Box with(int axis, double lo, double hi) const;

    std::array<double, 6> values() const { return {xl_, xr_, yl_, yr_, zl_, zr_}; }

    /// Example box for the reference parameters, with y_r = 0.4516666668.
    static Box paper();
    /// Values as printed in the source, with y_r = 0.04516666668 (< y_l).
    static std::array<double, 6> paper_raw_values();

    friend bool operator==(const Box&, const Box&) = default;

private:
    double xl_, xr_, yl_, yr_, zl_, zr_;
};

}  // namespace triopoly
