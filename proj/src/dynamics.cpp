#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "triopoly/dynamics.hpp"

namespace triopoly {

OrbitRecord simulate(const Params& p, const State& s0, int n, int transient, const SimulateOptions& opt) {
    if (n < 0 || transient < 0) throw std::invalid_argument("simulate: step counts must be non-negative");
    OrbitRecord rec{s0, p, transient, {}, std::nullopt, {}};
    rec.states.reserve(static_cast<std::size_t>(n));
    State cur = s0;
    if (max_abs(cur) > opt.safety) {
        rec.escape_step = 0;
        rec.escape_reason = "initial state outside the safety box";
        return rec;
    }
    const long total = static_cast<long>(n) + transient;
    for (long step = 0; step < total; ++step) {
        try {
            cur = eval_map(p, cur);
        } catch (const DomainError& e) {
            rec.escape_step = step + 1;
            rec.escape_reason = e.what();
            break;
        }
        if (max_abs(cur) > opt.safety) {
            rec.escape_step = step + 1;
            rec.escape_reason = "left the safety box";
            break;
        }
        if (step + 1 > transient) rec.states.push_back(cur);
    }
    return rec;
}

namespace {

// One Gram-Schmidt step: q <- orthonormalized columns of m, returns log of the
// diagonal of R.
std::array<double, 3> reorthonormalize(const Jacobian& m, Jacobian& q) {
    std::array<State, 3> cols;
    for (int c = 0; c < 3; ++c) cols[static_cast<std::size_t>(c)] = {m[0][c], m[1][c], m[2][c]};
    std::array<double, 3> logs{};
    for (int c = 0; c < 3; ++c) {
        State v = cols[static_cast<std::size_t>(c)];
        for (int prev = 0; prev < c; ++prev) {
            const State& u = cols[static_cast<std::size_t>(prev)];
            const double d = u.x * v.x + u.y * v.y + u.z * v.z;
            v = v - d * u;
        }
        const double norm = std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z);
        logs[static_cast<std::size_t>(c)] = std::log(norm);
        cols[static_cast<std::size_t>(c)] = (1.0 / norm) * v;
    }
    for (int c = 0; c < 3; ++c)
        for (int r = 0; r < 3; ++r) q[r][c] = cols[static_cast<std::size_t>(c)][r];
    return logs;
}

LyapunovResult accumulate(long n, const std::function<bool(long, Jacobian&)>& next) {
    Jacobian q{};
    for (int i = 0; i < 3; ++i) q[i][i] = 1.0;
    std::array<double, 3> sums{};
    LyapunovResult res;
    for (long step = 0; step < n; ++step) {
        Jacobian j;
        if (!next(step, j)) break;
        const auto logs = reorthonormalize(multiply(j, q), q);
        for (int i = 0; i < 3; ++i) sums[static_cast<std::size_t>(i)] += logs[static_cast<std::size_t>(i)];
        res.steps = step + 1;
    }
    res.complete = res.steps == n;
    for (int i = 0; i < 3; ++i)
        res.exponents[static_cast<std::size_t>(i)] = res.steps > 0 ? sums[static_cast<std::size_t>(i)] / res.steps : 0.0;
    std::sort(res.exponents.begin(), res.exponents.end(), std::greater<>());
    return res;
}

}  // namespace

LyapunovResult lyapunov_spectrum(const Params& p, const State& s0, long n, const SimulateOptions& opt) {
    State cur = s0;
    return accumulate(n, [&](long, Jacobian& j) {
        try {
            j = eval_jacobian(p, cur);
            cur = eval_map(p, cur);
        } catch (const DomainError&) {
            return false;
        }
        return max_abs(cur) <= opt.safety;
    });
}

LyapunovResult lyapunov_of_cycle(const Params& p, const std::vector<State>& cycle, long periods) {
    if (cycle.empty()) throw std::invalid_argument("lyapunov_of_cycle: empty cycle");
    std::vector<Jacobian> js;
    for (const auto& s : cycle) js.push_back(eval_jacobian(p, s));
    const long len = static_cast<long>(js.size());
    LyapunovResult r = accumulate(periods * len, [&](long step, Jacobian& j) {
        j = js[static_cast<std::size_t>(step % len)];
        return true;
    });
    return r;
}

std::array<std::complex<double>, 3> eigenvalues(const Jacobian& j) {
    Eigen::Matrix3d m;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) m(r, c) = j[r][c];
    Eigen::EigenSolver<Eigen::Matrix3d> es(m, false);
    std::array<std::complex<double>, 3> out;
    for (int i = 0; i < 3; ++i) out[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
    std::sort(out.begin(), out.end(), [](auto a, auto b) { return std::abs(a) > std::abs(b); });
    return out;
}

StabilityTag classify_eigenvalues(const std::array<std::complex<double>, 3>& eig, double tol) {
    double max_mod = 0.0;
    for (const auto& l : eig) {
        const double mod = std::abs(l);
        max_mod = std::max(max_mod, mod);
        if (std::abs(mod - 1.0) <= tol) {
            if (std::abs(l.imag()) > tol) return StabilityTag::NeimarkSackerCritical;
            if (l.real() < 0.0) return StabilityTag::FlipCritical;
        }
    }
    return max_mod < 1.0 - tol ? StabilityTag::Stable : StabilityTag::Unstable;
}

StabilityReport classify_equilibrium(const Params& p, double tol) {
    const State s = nash_point(p);
    if (!(s.x > 0.0 && s.y > 0.0 && s.z > 0.0))
        throw DomainError("Nash point has a non-positive coordinate for these parameters");
    StabilityReport rep{s, eigenvalues(eval_jacobian(p, s)), {}, StabilityTag::Unstable, p};
    for (int i = 0; i < 3; ++i) rep.moduli[static_cast<std::size_t>(i)] = std::abs(rep.eigenvalues[static_cast<std::size_t>(i)]);
    rep.tag = classify_eigenvalues(rep.eigenvalues, tol);
    return rep;
}

std::string to_string(StabilityTag t) {
    switch (t) {
        case StabilityTag::Stable: return "stable";
        case StabilityTag::FlipCritical: return "flip-critical";
        case StabilityTag::NeimarkSackerCritical: return "neimark-sacker-critical";
        case StabilityTag::Unstable: return "unstable";
    }
    return "?";
}

std::vector<BifurcationRow> bifurcation_scan(const Params& base, double alpha_lo, double alpha_hi, int samples,
                                             const InitialPolicy& policy, const BifurcationOptions& opt) {
    if (!(alpha_lo > 0.0 && alpha_lo <= alpha_hi && alpha_hi <= 20.0))
        throw std::invalid_argument("bifurcation_scan: need 0 < alpha_lo <= alpha_hi <= 20");
    const bool degenerate = alpha_lo == alpha_hi;
    if (!degenerate && samples < 2) throw std::invalid_argument("bifurcation_scan: samples must be >= 2");
    const int count = degenerate ? 1 : samples;

    std::vector<BifurcationRow> rows(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(dynamic) if (opt.exec == Exec::Parallel)
    for (int i = 0; i < count; ++i) {
        BifurcationRow& row = rows[static_cast<std::size_t>(i)];
        row.alpha = degenerate ? alpha_lo : alpha_lo + (alpha_hi - alpha_lo) * i / (count - 1);
        const Params p(base.c1, base.c2, base.c3, row.alpha);
        const State nash = nash_point(p);
        switch (policy.kind) {
            case InitialPolicy::Kind::NashOffset:
                row.start = nash + State{policy.offset, policy.offset, policy.offset};
                break;
            case InitialPolicy::Kind::Random: {
                std::mt19937_64 rng(policy.seed + static_cast<std::uint64_t>(i));
                std::uniform_real_distribution<double> u(-policy.offset, policy.offset);
                row.start = nash + State{u(rng), u(rng), u(rng)};
                break;
            }
            case InitialPolicy::Kind::Fixed: row.start = policy.fixed; break;
        }
        const OrbitRecord orbit = simulate(p, row.start, opt.record, opt.transient, opt.sim);
        row.escaped = orbit.escape_step.has_value();
        row.escape_step = orbit.escape_step;
        for (const auto& s : orbit.states) row.z_values.push_back(s.z);
        if (!row.escaped && !orbit.states.empty()) {
            const LyapunovResult ly = lyapunov_spectrum(p, orbit.states.back(), opt.lyap_steps, opt.sim);
            row.lyap1 = ly.exponents[0];
            row.lyap_complete = ly.complete;
        } else {
            row.lyap1 = std::numeric_limits<double>::quiet_NaN();
        }
    }
    return rows;
}

}  // namespace triopoly
