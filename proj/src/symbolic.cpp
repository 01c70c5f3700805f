#include "triopoly/symbolic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace triopoly {

SymbolWord::SymbolWord(std::vector<int> symbols) : symbols_(std::move(symbols)) {
    if (symbols_.empty()) throw std::invalid_argument("SymbolWord: word must be nonempty");
    for (int s : symbols_)
        if (s != 0 && s != 1) throw std::invalid_argument("SymbolWord: symbols must be 0 or 1");
}

SymbolWord SymbolWord::parse(const std::string& text) {
    std::vector<int> v;
    for (char ch : text) {
        if (ch != '0' && ch != '1') throw std::invalid_argument("SymbolWord: '" + text + "' is not a word over {0,1}");
        v.push_back(ch - '0');
    }
    return SymbolWord(std::move(v));
}

std::vector<SymbolWord> SymbolWord::all_of_length(int k) {
    if (k < 1 || k > 30) throw std::invalid_argument("SymbolWord: length must be in [1, 30]");
    std::vector<SymbolWord> out;
    for (long code = 0; code < (1L << k); ++code) {
        std::vector<int> v(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) v[static_cast<std::size_t>(i)] = static_cast<int>((code >> (k - 1 - i)) & 1);
        out.emplace_back(std::move(v));
    }
    return out;
}

std::string SymbolWord::str() const {
    std::string s;
    for (int v : symbols_) s.push_back(static_cast<char>('0' + v));
    return s;
}

SymbolWord SymbolWord::rotated(int shift) const {
    std::vector<int> v(symbols_.size());
    const int n = length();
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = symbols_[static_cast<std::size_t>((i + shift) % n)];
    return SymbolWord(std::move(v));
}

SymbolWord SymbolWord::canonical_rotation() const {
    SymbolWord best = *this;
    for (int s = 1; s < length(); ++s) {
        SymbolWord r = rotated(s);
        if (r.symbols_ < best.symbols_) best = r;
    }
    return best;
}

int half_box_symbol(const OrientedBox& ob, const State& s, bool* tie) {
    const double v = s[ob.axis];
    const double m = ob.mid();
    if (tie) *tie = v == m;
    return v < m ? 0 : 1;
}

Itinerary itinerary(const Params& p, const OrientedBox& ob, const State& s0, int horizon) {
    if (!ob.box.contains(s0)) throw PreconditionError("itinerary: initial state must lie in the box");
    if (horizon < 0) throw std::invalid_argument("itinerary: horizon must be non-negative");
    Itinerary it;
    it.initial = s0;
    it.horizon = horizon;
    State cur = s0;
    for (int i = 0; i < horizon; ++i) {
        if (!ob.box.contains(cur)) {
            it.exit_step = i;
            break;
        }
        bool tie = false;
        it.symbols.push_back(half_box_symbol(ob, cur, &tie));
        if (tie) it.midplane_ties.push_back(i);
        if (i + 1 == horizon) break;
        try {
            cur = eval_map(p, cur);
        } catch (const DomainError& e) {
            throw DomainError("itinerary step " + std::to_string(i + 1) + ": " + e.what());
        }
    }
    return it;
}

namespace {

struct Start {
    int matched;
    double residual;
    State point;
};

int matched_prefix(const Params& p, const OrientedBox& ob, const SymbolWord& w, const State& s) {
    State cur = s;
    for (int i = 0; i < w.length(); ++i) {
        if (!ob.box.contains(cur) || half_box_symbol(ob, cur) != w[i]) return i;
        if (i + 1 < w.length()) {
            if (!in_domain(cur)) return i;
            cur = eval_map(p, cur);
        }
    }
    return w.length();
}

}  // namespace

PeriodicOrbitResult find_periodic_orbit(const Params& p, const OrientedBox& ob, const SymbolWord& w, double tol,
                                        const PeriodicSearchOptions& opt) {
    if (!(tol > 0.0)) throw std::invalid_argument("find_periodic_orbit: tol must be positive");
    require_certified(p, ob.box);
    const int k = w.length();

    const auto covers = build_K_enclosures(p, ob, std::max(2, opt.start_resolution), Exec::Serial);
    const KSetEnclosure& cover = w[0] == 0 ? covers.first : covers.second;

    std::vector<Start> starts;
    const int m = std::max(1, opt.axis_samples);
    for (const auto& cell : cover.cells) {
        for (int j = 0; j < m; ++j) {
            State c{cell.ix.mid(), cell.iy.mid(), cell.iz.mid()};
            c[ob.axis] = cell[ob.axis].lo() + (j + 0.5) / m * cell[ob.axis].width();
            const int matched = matched_prefix(p, ob, w, c);
            double res = std::numeric_limits<double>::infinity();
            if (matched == k) {
                try {
                    res = max_abs(eval_iterate(p, c, k) - c);
                } catch (const DomainError&) {
                }
            }
            starts.push_back({matched, res, c});
        }
    }
    std::stable_sort(starts.begin(), starts.end(), [](const Start& a, const Start& b) {
        if (a.matched != b.matched) return a.matched > b.matched;
        return a.residual < b.residual;
    });

    PeriodicOrbitResult best;
    best.word = w;
    best.residual = std::numeric_limits<double>::infinity();
    NewtonOptions nopt;
    nopt.max_iter = opt.max_iter;
    nopt.tol = tol;
    const Box target = ob.half(w[0]);

    int tried = 0;
    for (const auto& st : starts) {
        if (tried >= opt.max_starts) break;
        ++tried;
        auto [s, res] = newton_periodic(p, ob.box, st.point, k, nopt);
        if (!(res < tol) || !target.contains(s)) continue;
        const Itinerary it = itinerary(p, ob, s, k);
        if (it.exit_step || it.symbols != w.symbols()) continue;
        best.point = s;
        best.residual = res;
        best.realized = it.symbols;
        best.converged = true;
        best.note = "converged after " + std::to_string(tried) + " start(s)";
        return best;
    }
    best.note = "no start converged to an orbit with this itinerary after " + std::to_string(tried) +
                " start(s); existence is guaranteed, increase the start budget";
    if (!starts.empty()) {
        auto [s, res] = newton_periodic(p, ob.box, starts.front().point, k, nopt);
        best.point = s;
        best.residual = res;
        best.realized = itinerary(p, ob, s, k).symbols;
    }
    return best;
}

WordTable count_periodic_words(const Params& p, const OrientedBox& ob, int k, double tol,
                               const PeriodicSearchOptions& opt, bool dedup_rotations, Exec exec) {
    if (k < 1 || k > opt.max_k)
        throw std::invalid_argument("count_periodic_words: k must be in [1, " + std::to_string(opt.max_k) + "]");
    require_certified(p, ob.box);

    std::vector<SymbolWord> words;
    std::set<std::string> seen;
    for (const auto& w : SymbolWord::all_of_length(k)) {
        if (dedup_rotations && !seen.insert(w.canonical_rotation().str()).second) continue;
        words.push_back(w);
    }

    WordTable table;
    table.k = k;
    table.rows.resize(words.size());
    const long n = static_cast<long>(words.size());
#pragma omp parallel for schedule(dynamic) if (exec == Exec::Parallel)
    for (long i = 0; i < n; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        table.rows[idx] = find_periodic_orbit(p, ob, words[idx], tol, opt);
    }
    for (const auto& r : table.rows) table.realized += r.converged ? 1 : 0;
    return table;
}

double entropy_lower_bound(bool certified, int symbols) {
    if (symbols < 1) throw std::invalid_argument("entropy_lower_bound: need at least one symbol");
    return certified ? std::log(static_cast<double>(symbols)) : 0.0;
}

}  // namespace triopoly
