#include "triopoly/box.hpp"

#include <stdexcept>
#include <string>

namespace triopoly {

Box::Box(double xl, double xr, double yl, double yr, double zl, double zr)
    : xl_(xl), xr_(xr), yl_(yl), yr_(yr), zl_(zl), zr_(zr) {
    auto check = [](double lo, double hi, const char* axis) {
        if (!(lo < hi)) {
            throw std::invalid_argument(std::string("Box: need ") + axis + "_l < " + axis + "_r, got " +
                                        std::to_string(lo) + " >= " + std::to_string(hi));
        }
    };
    check(xl, xr, "x");
    check(yl, yr, "y");
    check(zl, zr, "z");
}

double Box::lo(int axis) const { return axis == 0 ? xl_ : (axis == 1 ? yl_ : zl_); }
double Box::hi(int axis) const { return axis == 0 ? xr_ : (axis == 1 ? yr_ : zr_); }

bool Box::contains(const State& s) const {
    return xl_ <= s.x && s.x <= xr_ && yl_ <= s.y && s.y <= yr_ && zl_ <= s.z && s.z <= zr_;
}

IntervalBox Box::as_intervals() const {
    return {Interval(xl_, xr_), Interval(yl_, yr_), Interval(zl_, zr_)};
}

IntervalBox Box::face(int axis, double value) const {
    IntervalBox f = as_intervals();
    f[axis] = Interval(value);
    return f;
}

Box Box::with(int axis, double lo, double hi) const {
    auto v = values();
    v[2 * axis] = lo;
    v[2 * axis + 1] = hi;
    return {v[0], v[1], v[2], v[3], v[4], v[5]};
}

Box Box::paper() {
    return {0.5766666668, 0.6316666668, 0.3366666668, 0.4516666668, 0.0, 0.3951779684};
}

std::array<double, 6> Box::paper_raw_values() {
    return {0.5766666668, 0.6316666668, 0.3366666668, 0.04516666668, 0.0, 0.3951779684};
}

}  // namespace triopoly
