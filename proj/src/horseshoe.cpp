#include "triopoly/horseshoe.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "triopoly/bounds.hpp"
#include "triopoly/certificate.hpp"

namespace triopoly {

OrientedBox::OrientedBox(Box b, int axis_) : box(b), axis(axis_) {
    if (axis < 0 || axis > 2) throw std::invalid_argument("OrientedBox: axis must be 0, 1 or 2");
}

Box OrientedBox::half(int index) const {
    if (index != 0 && index != 1) throw std::invalid_argument("half-box index must be 0 or 1");
    return index == 0 ? box.with(axis, box.lo(axis), mid()) : box.with(axis, mid(), box.hi(axis));
}

IntervalBox OrientedBox::midplane() const { return box.face(axis, mid()); }

void require_certified(const Params& p, const Box& b) {
    const Certificate cert = certify_box(p, b);
    if (cert.verdict == Verdict::Certified) return;
    std::string why = "box is not certified (" + to_string(cert.verdict) + ")";
    for (const auto& r : cert.records)
        if (r.status != Status::Pass) {
            why += ": " + r.id + " " + to_string(r.status);
            if (!r.note.empty()) why += " (" + r.note + ")";
            break;
        }
    throw PreconditionError(why);
}

namespace {

double grid_coord(double lo, double hi, int k, int n) {
    if (k == n) return hi;
    return lo + ((hi - lo) * k) / n;
}

IntervalBox grid_cell(const Box& b, int n, long idx) {
    const int i = static_cast<int>(idx / (static_cast<long>(n) * n));
    const int j = static_cast<int>((idx / n) % n);
    const int k = static_cast<int>(idx % n);
    return {Interval(grid_coord(b.xl(), b.xr(), i, n), grid_coord(b.xl(), b.xr(), i + 1, n)),
            Interval(grid_coord(b.yl(), b.yr(), j, n), grid_coord(b.yl(), b.yr(), j + 1, n)),
            Interval(grid_coord(b.zl(), b.zr(), k, n), grid_coord(b.zl(), b.zr(), k + 1, n))};
}

// Whether the image of `cell` may meet `target`. Undecided cells are bisected
// along their widest axis up to `depth` times before being kept.
bool image_meets(const Params& p, const IntervalBox& cell, const IntervalBox& target, int depth) {
    std::array<Interval, 3> img;
    try {
        img = interval_eval(p, cell);
    } catch (const DomainError&) {
        return true;  // cannot exclude the cell
    }
    const IntervalBox ib{img[0], img[1], img[2]};
    if (!ib.intersects(target)) return false;
    if (target.contains(ib)) return true;
    for (int c = 0; c < 3; ++c) {
        if (target[c].contains(img[static_cast<std::size_t>(c)])) continue;
        const Interval r = refined_eval(p, cell, static_cast<Component>(c));
        if (!r.intersects(target[c])) return false;
    }
    if (depth == 0) return true;
    const auto [a, b] = cell.bisect(cell.widest_axis());
    return image_meets(p, a, target, depth - 1) || image_meets(p, b, target, depth - 1);
}

constexpr int kRefineDepth = 9;

KSetEnclosure cover_half(const Params& p, const OrientedBox& ob, int index, int n, Exec exec) {
    const Box h = ob.half(index);
    const IntervalBox target = ob.box.as_intervals();
    const long total = static_cast<long>(n) * n * n;
    std::vector<char> keep(static_cast<std::size_t>(total), 0);

    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
        for (long c = 0; c < total; ++c) keep[static_cast<std::size_t>(c)] = image_meets(p, grid_cell(h, n, c), target, kRefineDepth);
    } else {
        for (long c = 0; c < total; ++c) keep[static_cast<std::size_t>(c)] = image_meets(p, grid_cell(h, n, c), target, kRefineDepth);
    }

    KSetEnclosure out{index, n, {}};
    for (long c = 0; c < total; ++c)
        if (keep[static_cast<std::size_t>(c)]) out.cells.push_back(grid_cell(h, n, c));
    return out;
}

}  // namespace

std::pair<KSetEnclosure, KSetEnclosure> build_K_enclosures(const Params& p, const OrientedBox& ob, int resolution,
                                                           Exec exec) {
    if (resolution < 2) throw PreconditionError("build_K_enclosures: resolution must be >= 2");
    require_certified(p, ob.box);
    return {cover_half(p, ob, 0, resolution, exec), cover_half(p, ob, 1, resolution, exec)};
}

bool covers_disjoint(const KSetEnclosure& a, const KSetEnclosure& b) {
    if (a.cells.empty() || b.cells.empty()) return true;
    // Fast path: a separating plane along some axis.
    std::vector<const IntervalBox*> ca, cb;
    for (int axis = 0; axis < 3; ++axis) {
        double amax = -INFINITY, amin = INFINITY, bmax = -INFINITY, bmin = INFINITY;
        for (const auto& c : a.cells) amax = std::max(amax, c[axis].hi()), amin = std::min(amin, c[axis].lo());
        for (const auto& c : b.cells) bmax = std::max(bmax, c[axis].hi()), bmin = std::min(bmin, c[axis].lo());
        if (amax < bmin || bmax < amin) return true;
        if (axis == 2) {
            for (const auto& c : a.cells)
                if (c.iz.hi() >= bmin) ca.push_back(&c);
            for (const auto& c : b.cells)
                if (c.iz.lo() <= amax) cb.push_back(&c);
        }
    }
    for (const auto* x : ca)
        for (const auto* y : cb)
            if (x->intersects(*y)) return false;
    return true;
}

State PathSample::at(double s) const {
    if (s <= t.front()) return points.front();
    if (s >= t.back()) return points.back();
    const auto it = std::upper_bound(t.begin(), t.end(), s);
    const std::size_t i = static_cast<std::size_t>(it - t.begin()) - 1;
    const double w = (s - t[i]) / (t[i + 1] - t[i]);
    return points[i] + w * (points[i + 1] - points[i]);
}

PathSample random_monotone_path(const OrientedBox& ob, int vertices, std::mt19937_64& rng) {
    if (vertices < 2) throw std::invalid_argument("random_monotone_path: need at least 2 vertices");
    const Box& b = ob.box;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> levels(static_cast<std::size_t>(vertices));
    levels.front() = 0.0;
    levels.back() = 1.0;
    for (int i = 1; i + 1 < vertices; ++i) levels[static_cast<std::size_t>(i)] = u(rng);
    std::sort(levels.begin(), levels.end());

    PathSample path;
    for (int i = 0; i < vertices; ++i) {
        State s;
        for (int a = 0; a < 3; ++a) {
            const double frac = a == ob.axis ? levels[static_cast<std::size_t>(i)] : u(rng);
            s[a] = b.lo(a) + frac * (b.hi(a) - b.lo(a));
        }
        s[ob.axis] = i == 0 ? b.lo(ob.axis) : (i == vertices - 1 ? b.hi(ob.axis) : s[ob.axis]);
        path.t.push_back(static_cast<double>(i) / (vertices - 1));
        path.points.push_back(s);
    }
    return path;
}

PathSample axis_segment(const OrientedBox& ob) {
    const Box& b = ob.box;
    State lo{(b.xl() + b.xr()) / 2.0, (b.yl() + b.yr()) / 2.0, (b.zl() + b.zr()) / 2.0};
    State hi = lo;
    lo[ob.axis] = b.lo(ob.axis);
    hi[ob.axis] = b.hi(ob.axis);
    return {{0.0, 1.0}, {lo, hi}};
}

bool StretchReport::stretched() const {
    if (crossings.size() != 2) return false;
    return crossings[0].image_in_box && crossings[1].image_in_box && crossings[0].t_end < crossings[1].t_begin &&
           crossings[0].k_index != crossings[1].k_index;
}

namespace {

struct Sample {
    double t;
    State pt;
    State img;
};

// Bisect on [a, b] for the boundary of pred; pred(a) != pred(b).
template <typename Pred>
std::pair<Sample, Sample> bracket(const Params& p, const PathSample& path, Sample a, Sample b, Pred pred) {
    const bool pa = pred(a);
    for (int it = 0; it < 80 && b.t - a.t > 0.0; ++it) {
        const double m = a.t + (b.t - a.t) / 2.0;
        if (m <= a.t || m >= b.t) break;
        Sample s{m, path.at(m), {}};
        s.img = eval_map(p, s.pt);
        (pred(s) == pa ? a : b) = s;
    }
    return {a, b};
}

}  // namespace

StretchReport check_path_stretching(const Params& p, const OrientedBox& ob, const PathSample& path,
                                    const StretchOptions& opt) {
    const Box& box = ob.box;
    const int ax = ob.axis;
    if (path.t.size() != path.points.size() || path.t.size() < 2)
        throw PreconditionError("path needs matching parameter and point lists with >= 2 entries");
    if (path.t.front() != 0.0 || path.t.back() != 1.0) throw PreconditionError("path parameters must run from 0 to 1");
    for (std::size_t i = 1; i < path.t.size(); ++i)
        if (!(path.t[i] > path.t[i - 1])) throw PreconditionError("path parameters must be strictly increasing");
    for (const auto& s : path.points)
        if (!box.contains(s)) throw PreconditionError("path leaves the box");
    const State& first = path.points.front();
    const State& last = path.points.back();
    const bool forward = ob.on_left_face(first) && ob.on_right_face(last);
    const bool backward = ob.on_right_face(first) && ob.on_left_face(last);
    if (!forward && !backward) throw PreconditionError("path endpoints must lie on opposite oriented faces");

    StretchReport rep;
    rep.evidence = "sampled-witness";
    if (opt.require_certified) {
        require_certified(p, box);
        rep.universal_certified = true;
        rep.evidence = "sampled-witness+certified-C";
    }

    // Adaptive refinement.
    std::vector<Sample> samples;
    auto make = [&](double t) {
        Sample s{t, path.at(t), {}};
        s.img = eval_map(p, s.pt);
        return s;
    };
    for (std::size_t seg = 0; seg + 1 < path.t.size(); ++seg) {
        std::vector<std::pair<Sample, int>> stack{{make(path.t[seg + 1]), 0}};
        Sample left = make(path.t[seg]);
        if (seg == 0) samples.push_back(left);
        while (!stack.empty()) {
            auto [right, depth] = stack.back();
            const double dist = max_abs(right.pt - left.pt);
            const double jump = std::abs(right.img[ax] - left.img[ax]);
            if (dist > opt.max_step || jump > opt.max_jump) {
                if (depth >= opt.max_depth)
                    throw RefinementError("adjacent samples still too far apart near t = " + std::to_string(left.t) +
                                          "; provide a finer path");
                stack.emplace_back(make(left.t + (right.t - left.t) / 2.0), depth + 1);
                continue;
            }
            samples.push_back(right);
            left = right;
            stack.pop_back();
        }
    }
    rep.samples = samples.size();

    const double lo = box.lo(ax), hi = box.hi(ax), mid = ob.mid();
    const double sgn = forward ? 1.0 : -1.0;
    auto below_mid = [&](const Sample& s) { return sgn * (s.pt[ax] - mid) < 0.0; };
    auto above_mid = [&](const Sample& s) { return sgn * (s.pt[ax] - mid) > 0.0; };

    auto in_box_xy = [&](const State& img) {
        for (int a = 0; a < 3; ++a)
            if (a != ax && (img[a] < box.lo(a) || img[a] > box.hi(a))) return false;
        return true;
    };
    auto collect = [&](const std::vector<Sample>& part, double t0, double t1, const Sample& e0, const Sample& e1) {
        bool ok = in_box_xy(e0.img) && in_box_xy(e1.img);
        for (const auto& s : part)
            if (s.t > t0 && s.t < t1)
                ok = ok && in_box_xy(s.img) && s.img[ax] >= lo && s.img[ax] <= hi;
        return ok;
    };

    // Pre part: samples strictly on the starting side, closed by the first midplane crossing.
    std::vector<Sample> pre;
    std::size_t i1 = 0;
    while (i1 < samples.size() && below_mid(samples[i1])) pre.push_back(samples[i1++]);
    if (i1 > 0 && i1 < samples.size()) {
        auto [a, b] = bracket(p, path, samples[i1 - 1], samples[i1], below_mid);
        pre.push_back(b);
    }

    // Post part: opened by the last midplane crossing.
    std::vector<Sample> post;
    std::size_t i2 = samples.size();
    while (i2 > 0 && above_mid(samples[i2 - 1])) --i2;
    if (i2 > 0 && i2 < samples.size()) {
        auto [a, b] = bracket(p, path, samples[i2 - 1], samples[i2], above_mid);
        post.push_back(a);
    }
    for (std::size_t i = i2; i < samples.size(); ++i) post.push_back(samples[i]);

    auto ge_hi = [&](const Sample& s) { return s.img[ax] >= hi; };
    auto le_lo = [&](const Sample& s) { return s.img[ax] <= lo; };

    // Pre: image axis coordinate runs from <= lo up to >= hi.
    {
        std::size_t j = 0;
        while (j < pre.size() && !ge_hi(pre[j])) ++j;
        if (j > 0 && j < pre.size()) {
            const Sample end = bracket(p, path, pre[j - 1], pre[j], ge_hi).second;
            std::size_t i = j;
            while (i > 0 && !le_lo(pre[i - 1])) --i;
            if (i > 0) {
                const Sample begin = bracket(p, path, pre[i - 1], pre[i], le_lo).first;
                rep.crossings.push_back({forward ? 0 : 1, begin.t, end.t, begin.img[ax], end.img[ax],
                                         collect(pre, begin.t, end.t, begin, end)});
            }
        }
    }
    // Post: from >= hi down to <= lo.
    {
        std::size_t j = 0;
        while (j < post.size() && !le_lo(post[j])) ++j;
        if (j > 0 && j < post.size()) {
            const Sample end = bracket(p, path, post[j - 1], post[j], le_lo).second;
            std::size_t i = j;
            while (i > 0 && !ge_hi(post[i - 1])) --i;
            if (i > 0) {
                const Sample begin = bracket(p, path, post[i - 1], post[i], ge_hi).first;
                rep.crossings.push_back({forward ? 1 : 0, begin.t, end.t, begin.img[ax], end.img[ax],
                                         collect(post, begin.t, end.t, begin, end)});
            }
        }
    }
    return rep;
}

std::pair<State, double> newton_periodic(const Params& p, const Box& clamp, State s, int period,
                                         const NewtonOptions& opt) {
    auto project = [&](State v) {
        for (int a = 0; a < 3; ++a) v[a] = std::clamp(v[a], clamp.lo(a), clamp.hi(a));
        return v;
    };
    auto residual_vec = [&](const State& v, bool& ok) {
        try {
            ok = true;
            return eval_iterate(p, v, period) - v;
        } catch (const DomainError&) {
            ok = false;
            return State{};
        }
    };

    s = project(s);
    bool ok = false;
    State g = residual_vec(s, ok);
    if (!ok) return {s, std::numeric_limits<double>::infinity()};
    double res = max_abs(g);

    for (int it = 0; it < opt.max_iter && res > opt.tol * 1e-3; ++it) {
        Jacobian j;
        try {
            j = eval_iterate_jacobian(p, s, period);
        } catch (const DomainError&) {
            break;
        }
        Eigen::Matrix3d m;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) m(r, c) = j[r][c] - (r == c ? 1.0 : 0.0);
        const Eigen::Vector3d rhs(-g.x, -g.y, -g.z);
        const Eigen::Vector3d d = m.fullPivLu().solve(rhs);
        if (!d.allFinite()) break;

        bool improved = false;
        for (double lambda = 1.0; lambda > 1e-6; lambda /= 2.0) {
            const State trial = project(s + lambda * State{d(0), d(1), d(2)});
            bool tok = false;
            const State gt = residual_vec(trial, tok);
            if (tok && max_abs(gt) < res) {
                s = trial;
                g = gt;
                res = max_abs(gt);
                improved = true;
                break;
            }
        }
        if (!improved) break;
    }
    return {s, res};
}

FixedPointSearch locate_fixed_point_in(const Params& p, const OrientedBox& ob, int index, const NewtonOptions& opt) {
    require_certified(p, ob.box);
    const Box half = ob.half(index);
    const int n = std::max(2, opt.start_resolution);

    // Candidate starts: sample points of the K_index cover cells, ranked by residual.
    const auto covers = build_K_enclosures(p, ob, n, Exec::Serial);
    const KSetEnclosure& cover = index == 0 ? covers.first : covers.second;
    std::vector<std::pair<double, State>> starts;
    const int m = std::max(1, opt.axis_samples);
    for (const auto& cell : cover.cells) {
        for (int k = 0; k < m; ++k) {
            State c{cell.ix.mid(), cell.iy.mid(), cell.iz.mid()};
            c[ob.axis] = cell[ob.axis].lo() + (k + 0.5) / m * cell[ob.axis].width();
            if (!in_domain(c)) continue;
            starts.emplace_back(max_abs(eval_map(p, c) - c), c);
        }
    }
    std::stable_sort(starts.begin(), starts.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

    FixedPointSearch best;
    best.residual = std::numeric_limits<double>::infinity();
    int tried = 0;
    for (const auto& [r0, start] : starts) {
        if (tried >= opt.max_starts) break;
        ++tried;
        auto [s, res] = newton_periodic(p, half, start, 1, opt);
        if (res < best.residual) {
            best.point = s;
            best.residual = res;
        }
        if (res < opt.tol && half.contains(s)) break;
    }
    best.starts_tried = tried;
    best.converged = best.residual < opt.tol;
    best.in_half = half.contains(best.point);
    return best;
}

}  // namespace triopoly
