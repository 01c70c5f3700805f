#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "triopoly/box.hpp"
#include "triopoly/core.hpp"
#include "triopoly/interval.hpp"

namespace triopoly {

enum class Status { Pass, Fail, Inconclusive, Inapplicable };

/// Comparison in normalized form: the inequality reads `lhs REL rhs` with the
/// greater side on the left, so margin = lhs - rhs (and -|lhs - rhs| for Eq).
enum class Relation { Gt, Ge, Eq };

struct Inequality {
    std::string label;
    double lhs;
    double rhs;
    Relation rel;
    double margin;
    Status status;
};

/// One proof obligation: (H1)..(H5) or (C1), (C2), (C3'), (C4), (C5).
struct ConditionRecord {
    std::string id;
    Status status = Status::Pass;
    std::string engine;  // "analytic", "interval" or "analytic+interval"
    std::string note;    // names the violated precondition when inapplicable
    std::vector<Inequality> parts;
    /// Extremal value(s) of the relevant component, when the check computes them.
    std::vector<std::pair<std::string, Interval>> extrema;

    /// The part with the smallest margin; parts must be nonempty.
    const Inequality& binding() const;
};

enum class Verdict { Certified, Falsified, Inconclusive, Inapplicable };

enum class Engine { Analytic, Interval, Both };

struct CertifyOptions {
    Engine engine = Engine::Analytic;
    double tol = 1e-8;               // interval engine enclosure width
    double min_margin = 1e-12;       // strict inequalities need margin > this
    std::size_t budget = 1'000'000;  // subdivisions per extremum query
    bool parallel = true;
};

struct Certificate {
    Params params;
    Box box;
    std::vector<ConditionRecord> records;
    Verdict verdict = Verdict::Inconclusive;

    const ConditionRecord* find(const std::string& id) const;
    /// Smallest margin over the inequality (non-equality) parts of all records.
    double min_margin() const;
};

/// Worst status over a set of statuses: Fail > Inapplicable > Inconclusive > Pass.
Status combine(Status a, Status b);
Verdict verdict_of(const std::vector<ConditionRecord>& records);

/// Build an inequality part and classify it.
Inequality make_part(std::string label, double lhs, double rhs, Relation rel, double min_margin);
/// Record whose status is the worst of its parts.
ConditionRecord make_record(std::string id, std::string engine, std::vector<Inequality> parts);

/// Literal evaluation of (H1)-(H5). H2 is Inapplicable when alpha c3 <= 1.
std::vector<ConditionRecord> check_H(const Params& p, const Box& b, double min_margin = 1e-12);

/// (C1), (C2), (C3'), (C4), (C5) through the one- and two-dimensional
/// reductions. A record is Inapplicable, naming the first violated
/// monotonicity precondition, when its reduction does not apply.
std::vector<ConditionRecord> check_C_analytic(const Params& p, const Box& b, double min_margin = 1e-12);

/// H part, then C part with the selected engine(s).
Certificate certify_box(const Params& p, const Box& b, const CertifyOptions& opt = {});

std::string to_string(Status s);
std::string to_string(Verdict v);
std::string to_string(Engine e);
std::string to_string(Relation r);
Engine parse_engine(const std::string& s);

/// Reduction helpers, exposed for tests and the rigorous cross-check.
namespace reductions {
/// F3 restricted to z = zfix as a function of A = x + y.
double phi(const Params& p, double zfix, double a);
double phi_prime(const Params& p, double zfix, double a);
/// F1 as a function of x and B = y + z.
double big_phi(const Params& p, double x, double b);
/// F2 as a function of D = x + z.
double psi(const Params& p, double d);
}  // namespace reductions

}  // namespace triopoly
