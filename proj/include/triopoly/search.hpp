#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "triopoly/box.hpp"
#include "triopoly/certificate.hpp"
#include "triopoly/horseshoe.hpp"

namespace triopoly {

enum class SearchStrategy { Grid, Random, Refine };

std::string to_string(SearchStrategy s);
SearchStrategy parse_strategy(const std::string& s);

/// Candidate boxes are (x_l, width_x, y_l, width_y, z_r) with z_l = 0.
/// Each coordinate ranges over [lo[i], hi[i]].
struct SearchSpace {
    std::array<double, 5> lo;
    std::array<double, 5> hi;

    /// Generous region of the positive orthant used when nothing better is known.
    static SearchSpace desk();
    /// Region centred on b, each coordinate widened by +-rel of its value.
    static SearchSpace around(const Box& b, double rel);
    Box box_at(const std::array<double, 5>& v) const;
};

struct SearchOptions {
    SearchStrategy strategy = SearchStrategy::Random;
    std::size_t budget = 100'000;  // candidate evaluations
    std::uint64_t seed = 1;
    SearchSpace space = SearchSpace::desk();
    std::size_t keep = 10;         // certified boxes returned
    double min_margin = 1e-12;
    Exec exec = Exec::Parallel;
};

struct Candidate {
    std::array<double, 5> coords{};
    double score = 0.0;      // minimum margin over the H inequalities
    std::string violated;    // id of the worst condition, empty if the H part passes
};

struct NearMiss {
    Box box;
    double score;
    std::string violated;   // first failing condition id
    std::string detail;     // its binding inequality
};

struct SearchResult {
    SearchStrategy strategy = SearchStrategy::Random;
    std::uint64_t seed = 0;
    std::size_t evaluated = 0;
    std::size_t h_passing = 0;
    std::vector<std::pair<Box, Certificate>> found;  // best margin first
    std::optional<NearMiss> near_miss;               // best rejected candidate
};

/// Maximin H score of a candidate: the smallest margin over the non-equality
/// H inequalities, or -inf when a condition cannot be evaluated.
Candidate score_candidate(const Params& p, const SearchSpace& space, const std::array<double, 5>& coords,
                          double min_margin = 1e-12);

/// Budgeted search for boxes passing (H1)-(H5). Every returned box is also
/// certified by certify_box with the analytic engine. An empty result is
/// reported together with the best rejected candidate.
SearchResult search_boxes(const Params& p, const SearchOptions& opt);

}  // namespace triopoly
