#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "triopoly/box.hpp"
#include "triopoly/core.hpp"
#include "triopoly/interval.hpp"

namespace triopoly {

/// Raised when an operation's documented precondition does not hold
/// (uncertified box, malformed path, resolution too small).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Box with a distinguished axis: the left face is the slice at the axis
/// minimum, the right face the slice at the axis maximum.
struct OrientedBox {
    Box box;
    int axis = 2;

    explicit OrientedBox(Box b, int axis_ = 2);

    double mid() const { return (box.lo(axis) + box.hi(axis)) / 2.0; }
    /// R0 (axis below the midplane) or R1 (above).
    Box half(int index) const;
    /// The midplane slice S.
    IntervalBox midplane() const;
    bool on_left_face(const State& s) const { return s[axis] == box.lo(axis); }
    bool on_right_face(const State& s) const { return s[axis] == box.hi(axis); }
};

/// Cover of K_i = { s in R_i : F(s) in R } by grid cells of R_i whose image
/// may meet R. A cell is dropped once its interval image, or the images of all
/// pieces of a bounded bisection of it, miss R.
struct KSetEnclosure {
    int index = 0;
    int resolution = 0;
    std::vector<IntervalBox> cells;
};

enum class Exec { Serial, Parallel };

/// Grids each half-box into resolution^3 cells and keeps the cells whose
/// interval image meets R. Requires a certified box (analytic engine) and
/// resolution >= 2. Output order is the cell index order for both policies.
std::pair<KSetEnclosure, KSetEnclosure> build_K_enclosures(const Params& p, const OrientedBox& ob, int resolution,
                                                           Exec exec = Exec::Parallel);

/// Pairwise closed-set intersection test between two covers.
bool covers_disjoint(const KSetEnclosure& a, const KSetEnclosure& b);

/// Piecewise-linear path: parameters 0 = t_0 < ... < t_n = 1 and vertices.
struct PathSample {
    std::vector<double> t;
    std::vector<State> points;

    State at(double s) const;
};

/// Random path from the left face to the right face, monotone in the axis
/// coordinate, with `vertices` >= 2 vertices.
PathSample random_monotone_path(const OrientedBox& ob, int vertices, std::mt19937_64& rng);
/// Straight segment through (x, y) at the box center along the axis.
PathSample axis_segment(const OrientedBox& ob);

struct Crossing {
    int k_index = 0;        // which K_i the sub-path lies in
    double t_begin = 0.0;   // image on one face ...
    double t_end = 0.0;     // ... and on the opposite face
    double image_begin = 0.0;  // axis coordinate of F(path(t_begin))
    double image_end = 0.0;
    bool image_in_box = false;  // every refined sample of F(sub-path) lies in R
};

struct StretchReport {
    std::vector<Crossing> crossings;  // disjoint, ordered by t
    std::size_t samples = 0;          // refined evaluation points
    /// "sampled-witness" for the path itself; "certified-C" when the universal
    /// claim additionally rests on a certified box.
    std::string evidence;
    bool universal_certified = false;

    bool stretched() const;
};

struct StretchOptions {
    double max_step = 1e-3;   // max distance between refined samples
    double max_jump = 0.05;   // max change of the image axis coordinate between samples
    int max_depth = 40;
    bool require_certified = true;
};

/// Raised when adjacent samples remain too far apart after max_depth halvings.
class RefinementError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Locates two disjoint parameter subintervals, one before the first midplane
/// crossing and one after the last, on which the image axis coordinate runs
/// between the two faces while the image stays in R.
StretchReport check_path_stretching(const Params& p, const OrientedBox& ob, const PathSample& path,
                                    const StretchOptions& opt = {});

struct FixedPointSearch {
    State point;
    double residual = 0.0;
    bool converged = false;
    bool in_half = false;
    int starts_tried = 0;
};

struct NewtonOptions {
    int max_iter = 60;
    double tol = 1e-10;
    int max_starts = 64;
    int start_resolution = 8;
    int axis_samples = 32;  // extra samples along the axis inside each start cell
};

/// Damped Newton for F^k(s) = s, projected onto `clamp` after every step.
/// Returns the final iterate and max-norm residual.
std::pair<State, double> newton_periodic(const Params& p, const Box& clamp, State start, int period,
                                         const NewtonOptions& opt);

/// Fixed point of F inside K_index of a certified box.
FixedPointSearch locate_fixed_point_in(const Params& p, const OrientedBox& ob, int index,
                                       const NewtonOptions& opt = {});

/// Throws PreconditionError unless the analytic certificate passes.
void require_certified(const Params& p, const Box& b);

}  // namespace triopoly
