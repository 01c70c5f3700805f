#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "triopoly/core.hpp"
#include "triopoly/horseshoe.hpp"

namespace triopoly {

struct SimulateOptions {
    double safety = 10.0;  // escape when any |coordinate| exceeds this
};

struct OrbitRecord {
    State initial;
    Params params;
    int transient = 0;
    std::vector<State> states;        // recorded after the transient
    std::optional<long> escape_step;  // absolute step of the first escaped iterate
    std::string escape_reason;
};

/// Iterates F transient + n times and records the last n states. Leaving the
/// safety box or the map's domain ends the orbit as an escape.
OrbitRecord simulate(const Params& p, const State& s0, int n, int transient, const SimulateOptions& opt = {});

struct LyapunovResult {
    std::array<double, 3> exponents{};  // descending
    long steps = 0;
    bool complete = false;              // false when the orbit escaped early
};

/// QR (Gram-Schmidt) re-orthonormalized Jacobian products along the orbit of s0.
LyapunovResult lyapunov_spectrum(const Params& p, const State& s0, long n, const SimulateOptions& opt = {});

/// Exponents of a periodic cycle: its Jacobians repeated `periods` times.
/// Exact iteration along an unstable cycle is impossible in floating point,
/// so the cycle is supplied explicitly.
LyapunovResult lyapunov_of_cycle(const Params& p, const std::vector<State>& cycle, long periods);

enum class StabilityTag { Stable, FlipCritical, NeimarkSackerCritical, Unstable };

struct StabilityReport {
    State point;
    std::array<std::complex<double>, 3> eigenvalues{};
    std::array<double, 3> moduli{};  // descending
    StabilityTag tag = StabilityTag::Unstable;
    Params params;
};

std::array<std::complex<double>, 3> eigenvalues(const Jacobian& j);

/// Window |modulus - 1| <= tol flags a critical eigenvalue: real negative ->
/// flip, complex pair -> Neimark-Sacker. Otherwise stable iff all moduli < 1.
StabilityTag classify_eigenvalues(const std::array<std::complex<double>, 3>& eig, double tol = 1e-9);

/// Stability of the interior Nash point.
StabilityReport classify_equilibrium(const Params& p, double tol = 1e-9);

std::string to_string(StabilityTag t);

struct InitialPolicy {
    enum class Kind { NashOffset, Random, Fixed } kind = Kind::NashOffset;
    double offset = 1e-3;        // NashOffset: added to every coordinate; Random: max perturbation
    std::uint64_t seed = 1;      // Random
    State fixed{};               // Fixed
};

struct BifurcationRow {
    double alpha = 0.0;
    State start;
    bool escaped = false;
    std::optional<long> escape_step;
    std::vector<double> z_values;  // asymptotic z samples
    double lyap1 = 0.0;
    bool lyap_complete = false;
};

struct BifurcationOptions {
    int transient = 1000;
    int record = 200;
    long lyap_steps = 2000;
    SimulateOptions sim;
    Exec exec = Exec::Parallel;
};

/// alpha samples evenly spaced on [alpha_lo, alpha_hi] (a single sample when
/// they coincide). Requires 0 < alpha_lo <= alpha_hi <= 20 and samples >= 2
/// unless the range is degenerate.
std::vector<BifurcationRow> bifurcation_scan(const Params& base, double alpha_lo, double alpha_hi, int samples,
                                             const InitialPolicy& policy, const BifurcationOptions& opt = {});

// Logistic map demonstration of stretching in one dimension.

struct SapInterval {
    double lo = 0.0;
    double hi = 0.0;
};

struct IterateCertificate {
    int iterate = 1;
    bool found = false;
    SapInterval target;  // hull J of the two subintervals
    SapInterval i0;      // f^n(i0) covers J
    SapInterval i1;      // f^n(i1) covers J
    double gap = 0.0;    // i1.lo - i0.hi
};

struct LogisticReport {
    double mu = 0.0;
    IterateCertificate first;
    IterateCertificate second;
};

double logistic_iterate(double mu, double x, int n);

/// Brute-force scan over monotone branches of f^n for two disjoint subintervals
/// whose images each cover the hull of both. The target interval J ranges over
/// a grid of `grid` x `grid` endpoints in [0, 1].
IterateCertificate logistic_sap_certificate(double mu, int iterate, int grid = 200);

LogisticReport logistic_sap_demo(double mu, int grid = 200);

}  // namespace triopoly
