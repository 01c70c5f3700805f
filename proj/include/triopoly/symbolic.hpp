#pragma once

#include <optional>
#include <string>
#include <vector>

#include "triopoly/core.hpp"
#include "triopoly/horseshoe.hpp"

namespace triopoly {

/// Nonempty word over {0, 1}.
class SymbolWord {
public:
    explicit SymbolWord(std::vector<int> symbols);
    /// Parses "0110"; throws std::invalid_argument on other characters.
    static SymbolWord parse(const std::string& text);
    /// All 2^k words of length k in lexicographic order.
    static std::vector<SymbolWord> all_of_length(int k);

    int length() const { return static_cast<int>(symbols_.size()); }
    int operator[](int i) const { return symbols_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& symbols() const { return symbols_; }
    std::string str() const;
    /// Lexicographically smallest rotation.
    SymbolWord canonical_rotation() const;
    SymbolWord rotated(int shift) const;

    friend bool operator==(const SymbolWord&, const SymbolWord&) = default;

private:
    std::vector<int> symbols_;
};

/// Half-box coding of a forward orbit: symbol 0 below the midplane, 1 above.
struct Itinerary {
    State initial;
    int horizon = 0;
    std::vector<int> symbols;        // one per iterate that stayed in R
    std::optional<int> exit_step;    // first iterate index outside R
    std::vector<int> midplane_ties;  // iterates exactly on the midplane (coded 1)
};

/// Iterates F up to `horizon` times starting from s0 in R. Stops at the first
/// iterate outside R. DomainError from the map is rethrown with the step.
Itinerary itinerary(const Params& p, const OrientedBox& ob, const State& s0, int horizon);

int half_box_symbol(const OrientedBox& ob, const State& s, bool* tie = nullptr);

struct PeriodicOrbitResult {
    SymbolWord word{std::vector<int>{0}};
    State point;
    double residual = 0.0;
    std::vector<int> realized;  // itinerary of the point over one period
    bool converged = false;
    std::string note;
};

struct PeriodicSearchOptions {
    int start_resolution = 8;   // K-cover resolution for start cells
    int axis_samples = 48;      // additional starts along the axis in each cell
    int max_starts = 256;
    int max_iter = 60;
    int max_k = 6;
};

/// Multi-start damped Newton on F^k(s) = s, with starts drawn from the
/// K_{w_0} cover and ranked by how long their itinerary follows w.
PeriodicOrbitResult find_periodic_orbit(const Params& p, const OrientedBox& ob, const SymbolWord& w, double tol,
                                        const PeriodicSearchOptions& opt = {});

struct WordTable {
    int k = 0;
    std::vector<PeriodicOrbitResult> rows;
    int realized = 0;
};

/// find_periodic_orbit on all 2^k words (or one representative per rotation
/// class when `dedup_rotations`).
WordTable count_periodic_words(const Params& p, const OrientedBox& ob, int k, double tol,
                               const PeriodicSearchOptions& opt = {}, bool dedup_rotations = false,
                               Exec exec = Exec::Parallel);

/// log(m) when the configuration is certified, 0 otherwise.
double entropy_lower_bound(bool certified, int symbols = 2);

}  // namespace triopoly
