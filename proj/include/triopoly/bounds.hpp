#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "triopoly/box.hpp"
#include "triopoly/certificate.hpp"
#include "triopoly/core.hpp"
#include "triopoly/interval.hpp"

namespace triopoly {

enum class Component { F1 = 0, F2 = 1, F3 = 2 };
enum class Extremum { Min, Max };

std::string to_string(Component c);
std::string to_string(Extremum e);

/// Natural interval extension of (F1, F2, F3). F1 and F2 go through the exact
/// ranges of the unary pieces Q - c1 Q^2 and sqrt(D/c2) - D.
/// Throws DomainError unless x + z and x + y + z are strictly positive on `ib`.
std::array<Interval, 3> interval_eval(const Params& p, const IntervalBox& ib);

/// Interval gradient of one component over `ib`.
std::array<Interval, 3> interval_gradient(const Params& p, const IntervalBox& ib, Component c);

/// Tighter enclosure of one component: natural extension intersected with the
/// mean-value form, after collapsing coordinates on which the component is
/// monotone. Not inclusion-isotone; used inside branch-and-bound only.
Interval refined_eval(const Params& p, const IntervalBox& ib, Component c);

struct BoundOptions {
    std::size_t budget = 1'000'000;  // bisections per query
    std::size_t batch = 64;          // boxes refined per round
    bool parallel = true;
};

struct BoundReport {
    Component component = Component::F1;
    Extremum which = Extremum::Max;
    std::string region;       // human-readable descriptor
    IntervalBox region_box;
    Interval enclosure;       // contains the true extremum
    std::size_t subdivisions = 0;
    double width = 0.0;
    bool conclusive = false;  // width <= tol
    State best_point;         // feasible point realizing the inner bound
    std::string rounding;
};

/// Branch-and-bound enclosure of min or max of one component over a box or
/// face. Splits the widest coordinate (ties x, y, z), refines `batch` boxes
/// per round; the result does not depend on the thread schedule.
/// On budget exhaustion the wider enclosure is returned with conclusive = false.
BoundReport bound_extremum(const Params& p, const IntervalBox& region, Component c, Extremum which, double tol,
                           const BoundOptions& opt = {}, std::string label = "");

/// (C1)-(C5) restated as sign and containment claims on bound_extremum
/// enclosures. Parts straddling their threshold are Inconclusive.
std::vector<ConditionRecord> verify_C_rigorous(const Params& p, const Box& b, double tol, const BoundOptions& opt = {},
                                               double min_margin = 1e-12);

}  // namespace triopoly
