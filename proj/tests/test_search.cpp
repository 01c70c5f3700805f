#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "triopoly/search.hpp"

using namespace triopoly;

namespace {

SearchOptions around_paper(std::size_t budget) {
    SearchOptions opt;
    opt.budget = budget;
    opt.space = SearchSpace::around(Box::paper(), 0.05);
    return opt;
}

}  // namespace

TEST_CASE("search space coordinates") {
    const SearchSpace s = SearchSpace::around(Box::paper(), 0.05);
    const Box b = Box::paper();
    const Box c = s.box_at({b.xl(), b.xr() - b.xl(), b.yl(), b.yr() - b.yl(), b.zr()});
    CHECK(c.xl() == b.xl());
    CHECK(c.xr() == doctest::Approx(b.xr()).epsilon(1e-15));
    CHECK(c.zl() == 0.0);
    for (int i = 0; i < 5; ++i) CHECK(s.lo[static_cast<std::size_t>(i)] < s.hi[static_cast<std::size_t>(i)]);
    CHECK(parse_strategy("refine") == SearchStrategy::Refine);
    CHECK(to_string(SearchStrategy::Grid) == "grid");
    CHECK_THROWS_AS(parse_strategy("annealing"), std::invalid_argument);
}

TEST_CASE("candidate score is the smallest H margin") {
    const Box b = Box::paper();
    const SearchSpace s = SearchSpace::desk();
    const Candidate ok = score_candidate(Params::paper(), s, {b.xl(), b.xr() - b.xl(), b.yl(), b.yr() - b.yl(), b.zr()});
    CHECK(ok.violated.empty());
    CHECK(ok.score > 0.0);
    const Candidate bad = score_candidate(Params::paper(), s, {b.xl(), b.xr() - b.xl(), b.yl(), b.yr() - b.yl(), 0.38});
    CHECK(bad.violated == "H2");
    CHECK(bad.score < 0.0);
}

TEST_CASE("a budget of one evaluates at most one candidate") {
    for (auto st : {SearchStrategy::Grid, SearchStrategy::Random, SearchStrategy::Refine}) {
        SearchOptions opt;
        opt.strategy = st;
        opt.budget = 1;
        const SearchResult r = search_boxes(Params::paper(), opt);
        CHECK(r.evaluated <= 1);
        CHECK(r.strategy == st);
    }
}

TEST_CASE("search around the reference box finds certified boxes") {
    const Params p = Params::paper();
    const SearchResult r = search_boxes(p, around_paper(5000));
    CHECK(r.evaluated == 5000);
    CHECK(r.h_passing > 0);
    REQUIRE_FALSE(r.found.empty());
    CHECK(r.found.size() <= 10);
    CHECK_FALSE(r.near_miss.has_value());
    for (const auto& [box, cert] : r.found) {
        CHECK(cert.verdict == Verdict::Certified);
        CHECK(certify_box(p, box).verdict == Verdict::Certified);
        CHECK(box.zl() == 0.0);
    }
    for (std::size_t i = 1; i < r.found.size(); ++i)
        CHECK(r.found[i - 1].second.min_margin() >= r.found[i].second.min_margin() - 1e-15);
}

TEST_CASE("search is reproducible for a fixed seed") {
    const SearchResult a = search_boxes(Params::paper(), around_paper(2000));
    const SearchResult b = search_boxes(Params::paper(), around_paper(2000));
    CHECK(a.h_passing == b.h_passing);
    REQUIRE(a.found.size() == b.found.size());
    for (std::size_t i = 0; i < a.found.size(); ++i) CHECK(a.found[i].first == b.found[i].first);
}

TEST_CASE("grid and refine strategies") {
    for (auto st : {SearchStrategy::Grid, SearchStrategy::Refine}) {
        SearchOptions opt = around_paper(3000);
        opt.strategy = st;
        // A 4^5 grid is too coarse for the +-5% region: H4 is tight there.
        if (st == SearchStrategy::Grid) opt.space = SearchSpace::around(Box::paper(), 0.02);
        const SearchResult r = search_boxes(Params::paper(), opt);
        CHECK(r.evaluated <= 3000);
        CHECK(r.evaluated > 0);
        CHECK_FALSE(r.found.empty());
    }
}

TEST_CASE("alpha = 10 admits no box and reports a near miss") {
    SearchOptions opt;
    opt.budget = 20000;
    const SearchResult r = search_boxes(Params(0.4, 0.55, 0.6, 10.0), opt);
    CHECK(r.found.empty());
    CHECK(r.h_passing == 0);
    REQUIRE(r.near_miss.has_value());
    CHECK_FALSE(r.near_miss->violated.empty());
    CHECK_FALSE(r.near_miss->detail.empty());
    CHECK(r.near_miss->score < 0.0);
}

TEST_CASE("alpha = 8 admits no box") {
    SearchOptions opt;
    opt.budget = 20000;
    const SearchResult r = search_boxes(Params(0.4, 0.55, 0.6, 8.0), opt);
    CHECK(r.found.empty());
    CHECK(r.near_miss.has_value());
}
