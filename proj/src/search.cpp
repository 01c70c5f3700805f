#include "triopoly/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace triopoly {

std::string to_string(SearchStrategy s) {
    switch (s) {
        case SearchStrategy::Grid: return "grid";
        case SearchStrategy::Random: return "random";
        case SearchStrategy::Refine: return "refine";
    }
    return "?";
}

SearchStrategy parse_strategy(const std::string& s) {
    if (s == "grid") return SearchStrategy::Grid;
    if (s == "random") return SearchStrategy::Random;
    if (s == "refine") return SearchStrategy::Refine;
    throw std::invalid_argument("unknown search strategy '" + s + "' (expected grid, random or refine)");
}

SearchSpace SearchSpace::desk() {
    return {{0.05, 0.001, 0.05, 0.001, 0.005}, {1.2, 0.3, 1.0, 0.3, 0.8}};
}

SearchSpace SearchSpace::around(const Box& b, double rel) {
    if (!(rel > 0.0 && rel < 1.0)) throw std::invalid_argument("SearchSpace::around: rel must be in (0, 1)");
    const std::array<double, 5> c{b.xl(), b.xr() - b.xl(), b.yl(), b.yr() - b.yl(), b.zr()};
    SearchSpace s{};
    for (std::size_t i = 0; i < 5; ++i) {
        s.lo[i] = c[i] * (1.0 - rel);
        s.hi[i] = c[i] * (1.0 + rel);
    }
    return s;
}

Box SearchSpace::box_at(const std::array<double, 5>& v) const {
    return Box(v[0], v[0] + v[1], v[2], v[2] + v[3], 0.0, v[4]);
}

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

bool valid_coords(const std::array<double, 5>& v) {
    return v[0] > 0.0 && v[1] > 0.0 && v[2] > 0.0 && v[3] > 0.0 && v[4] > 0.0 && v[0] + v[1] > v[0] &&
           v[2] + v[3] > v[2];
}

void check_space(const SearchSpace& s) {
    for (std::size_t i = 0; i < 5; ++i)
        if (!(s.lo[i] <= s.hi[i]) || !(s.lo[i] > 0.0))
            throw std::invalid_argument("SearchSpace: need 0 < lo <= hi in every coordinate");
}

// Higher score first, then lexicographically smaller box.
bool better(const Candidate& a, const Candidate& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.coords < b.coords;
}

std::vector<Candidate> evaluate(const Params& p, const SearchSpace& space, const std::vector<std::array<double, 5>>& pts,
                                double mm, Exec exec) {
    std::vector<Candidate> out(pts.size());
    const long n = static_cast<long>(pts.size());
#pragma omp parallel for schedule(static) if (exec == Exec::Parallel)
    for (long i = 0; i < n; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        out[idx] = score_candidate(p, space, pts[idx], mm);
    }
    return out;
}

std::vector<std::array<double, 5>> grid_points(const SearchSpace& s, std::size_t budget) {
    std::size_t m = 1;
    while (std::pow(static_cast<double>(m + 1), 5.0) <= static_cast<double>(budget)) ++m;
    std::vector<std::array<double, 5>> pts;
    std::array<std::size_t, 5> k{};
    auto coord = [&](std::size_t i, std::size_t j) {
        return m == 1 ? (s.lo[i] + s.hi[i]) / 2.0 : s.lo[i] + (s.hi[i] - s.lo[i]) * static_cast<double>(j) / (m - 1);
    };
    while (true) {
        std::array<double, 5> v{};
        for (std::size_t i = 0; i < 5; ++i) v[i] = coord(i, k[i]);
        pts.push_back(v);
        std::size_t i = 5;
        while (i > 0) {
            --i;
            if (++k[i] < m) break;
            k[i] = 0;
            if (i == 0) return pts;
        }
    }
}

std::vector<std::array<double, 5>> random_points(const SearchSpace& s, std::size_t count, std::mt19937_64& rng) {
    std::vector<std::array<double, 5>> pts(count);
    for (auto& v : pts)
        for (std::size_t i = 0; i < 5; ++i) v[i] = std::uniform_real_distribution<double>(s.lo[i], s.hi[i])(rng);
    return pts;
}

// Coordinate-wise pattern search on the maximin score, stepping inside the space.
void refine(const Params& p, const SearchSpace& space, Candidate start, std::size_t budget, double mm, Exec exec,
            std::vector<Candidate>& all) {
    std::array<double, 5> step{};
    for (std::size_t i = 0; i < 5; ++i) step[i] = (space.hi[i] - space.lo[i]) / 8.0;
    Candidate cur = start;
    std::size_t used = 0;
    while (used < budget) {
        std::vector<std::array<double, 5>> nbrs;
        for (std::size_t i = 0; i < 5; ++i)
            for (double dir : {-1.0, 1.0}) {
                auto v = cur.coords;
                v[i] = std::clamp(v[i] + dir * step[i], space.lo[i], space.hi[i]);
                if (v != cur.coords) nbrs.push_back(v);
            }
        if (nbrs.empty()) break;
        if (nbrs.size() > budget - used) nbrs.resize(budget - used);
        used += nbrs.size();
        auto scored = evaluate(p, space, nbrs, mm, exec);
        all.insert(all.end(), scored.begin(), scored.end());
        const auto best = std::min_element(scored.begin(), scored.end(), better);
        if (best->score > cur.score) {
            cur = *best;
        } else {
            bool tiny = true;
            for (std::size_t i = 0; i < 5; ++i) {
                step[i] /= 2.0;
                tiny = tiny && step[i] <= 1e-13 * std::max(1.0, std::abs(cur.coords[i]));
            }
            if (tiny) break;
        }
    }
}

}  // namespace

Candidate score_candidate(const Params& p, const SearchSpace& space, const std::array<double, 5>& coords, double mm) {
    Candidate c;
    c.coords = coords;
    if (!valid_coords(coords)) {
        c.score = kNegInf;
        c.violated = "box";
        return c;
    }
    const auto recs = check_H(p, space.box_at(coords), mm);
    double score = std::numeric_limits<double>::infinity();
    double worst_rec = std::numeric_limits<double>::infinity();
    for (const auto& r : recs) {
        if (r.status == Status::Inapplicable) {
            c.score = kNegInf;
            c.violated = r.id;
            return c;
        }
        double rec_min = std::numeric_limits<double>::infinity();
        for (const auto& part : r.parts)
            if (part.rel != Relation::Eq) rec_min = std::min(rec_min, std::isnan(part.margin) ? kNegInf : part.margin);
        if (r.status != Status::Pass && (c.violated.empty() || rec_min < worst_rec)) {
            c.violated = r.id;
            worst_rec = rec_min;
        }
        score = std::min(score, rec_min);
    }
    c.score = score;
    return c;
}

SearchResult search_boxes(const Params& p, const SearchOptions& opt) {
    if (opt.budget == 0) throw std::invalid_argument("search_boxes: budget must be positive");
    check_space(opt.space);

    SearchResult res;
    res.strategy = opt.strategy;
    res.seed = opt.seed;
    std::mt19937_64 rng(opt.seed);
    std::vector<Candidate> all;

    switch (opt.strategy) {
        case SearchStrategy::Grid:
            all = evaluate(p, opt.space, grid_points(opt.space, opt.budget), opt.min_margin, opt.exec);
            break;
        case SearchStrategy::Random:
            all = evaluate(p, opt.space, random_points(opt.space, opt.budget, rng), opt.min_margin, opt.exec);
            break;
        case SearchStrategy::Refine: {
            const std::size_t explore = std::max<std::size_t>(1, opt.budget / 2);
            all = evaluate(p, opt.space, random_points(opt.space, explore, rng), opt.min_margin, opt.exec);
            const Candidate seed = *std::min_element(all.begin(), all.end(), better);
            refine(p, opt.space, seed, opt.budget - explore, opt.min_margin, opt.exec, all);
            break;
        }
    }
    res.evaluated = all.size();
    std::sort(all.begin(), all.end(), better);

    const Candidate* miss = nullptr;
    std::string miss_id, miss_detail;
    for (const auto& c : all) {
        if (c.violated.empty()) {
            ++res.h_passing;
            if (res.found.size() >= opt.keep) continue;
            const Box b = opt.space.box_at(c.coords);
            if (!res.found.empty() && res.found.back().first == b) continue;
            CertifyOptions co;
            co.min_margin = opt.min_margin;
            Certificate cert = certify_box(p, b, co);
            if (cert.verdict == Verdict::Certified) {
                res.found.emplace_back(b, std::move(cert));
                continue;
            }
            if (!miss) {
                miss = &c;
                for (const auto& r : cert.records)
                    if (r.status != Status::Pass) {
                        miss_id = r.id;
                        miss_detail = r.parts.empty() ? r.note : r.binding().label;
                        break;
                    }
            }
        } else if (!miss && c.score != kNegInf) {
            miss = &c;
            miss_id = c.violated;
            for (const auto& r : check_H(p, opt.space.box_at(c.coords), opt.min_margin))
                if (r.id == c.violated) miss_detail = r.parts.empty() ? r.note : r.binding().label;
        }
    }
    if (res.found.empty() && !miss && !all.empty() && valid_coords(all.front().coords)) {
        miss = &all.front();
        miss_id = miss->violated;
    }
    if (res.found.empty() && miss)
        res.near_miss = NearMiss{opt.space.box_at(miss->coords), miss->score, miss_id, miss_detail};
    return res;
}

}  // namespace triopoly
