#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace triopoly {

/// Raised when the map or its derivative is evaluated outside its domain
/// (x + z <= 0 or x + y + z <= 0).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Model constants: marginal costs of the three firms and the adjustment
/// speed of the gradient-adjusting firm.
struct Params {
    double c1;
    double c2;
    double c3;
    double alpha;

    Params(double c1_, double c2_, double c3_, double alpha_);

    /// alpha * c3 > 1 is needed for the (H2) bound to be real.
    bool h2_applicable() const { return alpha * c3 > 1.0; }

    static Params paper() { return {0.4, 0.55, 0.6, 17.0}; }
};

/// Outputs of the three firms.
struct State {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
    double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
    friend bool operator==(const State&, const State&) = default;
};

State operator+(const State& a, const State& b);
State operator-(const State& a, const State& b);
State operator*(double k, const State& a);
double max_abs(const State& a);

/// Row-major 3x3 matrix of partial derivatives d(F_i)/d(x_j).
using Jacobian = std::array<std::array<double, 3>, 3>;

Jacobian multiply(const Jacobian& a, const Jacobian& b);
State apply(const Jacobian& m, const State& v);

/// True when x + z > 0 and x + y + z > 0.
bool in_domain(const State& s);

/// The triopoly map F = (F1, F2, F3). F3 uses the factored form
/// z * (1 - alpha c3 + alpha (x + y) / (x + y + z)^2), so F3(x, y, 0) == 0.
State eval_map(const Params& p, const State& s);

/// Analytic partial derivatives of F.
Jacobian eval_jacobian(const Params& p, const State& s);

/// k-fold composition; throws DomainError naming the failing step.
State eval_iterate(const Params& p, const State& s, int k);

/// Jacobian of F^k via the chain rule.
Jacobian eval_iterate_jacobian(const Params& p, const State& s, int k);

enum class FixedPointKind { Interior, Boundary, Numeric };

struct FixedPoint {
    State point;
    FixedPointKind kind;
    double residual;   // max-norm of F(s) - s
    bool positive;     // all coordinates positive (z >= 0 for the boundary point)
};

/// Interior Nash point (Q = 2 / (c1 + c2 + c3)) and the z = 0 boundary point
/// (Q = 1 / (c1 + c2)), each with its residual. Points violating positivity
/// are returned flagged, not dropped.
std::vector<FixedPoint> fixed_points(const Params& p);

/// Interior Nash point only.
State nash_point(const Params& p);

std::string to_string(FixedPointKind k);

}  // namespace triopoly
