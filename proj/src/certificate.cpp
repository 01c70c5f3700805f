#include "triopoly/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "triopoly/bounds.hpp"

namespace triopoly {

namespace {

int severity(Status s) {
    switch (s) {
        case Status::Pass: return 0;
        case Status::Inconclusive: return 1;
        case Status::Inapplicable: return 2;
        case Status::Fail: return 3;
    }
    return 3;
}

ConditionRecord inapplicable(std::string id, std::string engine, std::string why) {
    ConditionRecord r;
    r.id = std::move(id);
    r.engine = std::move(engine);
    r.status = Status::Inapplicable;
    r.note = std::move(why);
    return r;
}

}  // namespace

Status combine(Status a, Status b) { return severity(a) >= severity(b) ? a : b; }

const Inequality& ConditionRecord::binding() const {
    if (parts.empty()) throw std::logic_error("record " + id + " has no evaluated parts");
    return *std::min_element(parts.begin(), parts.end(), [](const Inequality& a, const Inequality& b) {
        // NaN margins sort first: they are always the binding failure.
        if (std::isnan(a.margin)) return !std::isnan(b.margin);
        if (std::isnan(b.margin)) return false;
        return a.margin < b.margin;
    });
}

const ConditionRecord* Certificate::find(const std::string& id) const {
    for (const auto& r : records)
        if (r.id == id) return &r;
    return nullptr;
}

double Certificate::min_margin() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& r : records)
        for (const auto& part : r.parts) {
            if (part.rel == Relation::Eq) continue;
            m = std::min(m, std::isnan(part.margin) ? -INFINITY : part.margin);
        }
    return m;
}

Verdict verdict_of(const std::vector<ConditionRecord>& records) {
    Status worst = Status::Pass;
    for (const auto& r : records) worst = combine(worst, r.status);
    switch (worst) {
        case Status::Pass: return Verdict::Certified;
        case Status::Fail: return Verdict::Falsified;
        case Status::Inapplicable: return Verdict::Inapplicable;
        case Status::Inconclusive: return Verdict::Inconclusive;
    }
    return Verdict::Inconclusive;
}

Inequality make_part(std::string label, double lhs, double rhs, Relation rel, double min_margin) {
    Inequality q{std::move(label), lhs, rhs, rel, 0.0, Status::Fail};
    if (rel == Relation::Eq) {
        q.margin = -std::abs(lhs - rhs);
        q.status = lhs == rhs ? Status::Pass : Status::Fail;
    } else {
        q.margin = lhs - rhs;
        const bool ok = rel == Relation::Gt ? q.margin > min_margin : q.margin >= 0.0;
        q.status = ok ? Status::Pass : Status::Fail;  // NaN compares false
    }
    return q;
}

ConditionRecord make_record(std::string id, std::string engine, std::vector<Inequality> parts) {
    ConditionRecord r;
    r.id = std::move(id);
    r.engine = std::move(engine);
    r.parts = std::move(parts);
    for (const auto& q : r.parts) r.status = combine(r.status, q.status);
    return r;
}

namespace reductions {

double phi(const Params& p, double zfix, double a) {
    const double q = a + zfix;
    return zfix * (1.0 - p.alpha * p.c3 + p.alpha * a / (q * q));
}

double phi_prime(const Params& p, double zfix, double a) {
    const double q = a + zfix;
    return zfix * p.alpha * (zfix - a) / (q * q * q);
}

double big_phi(const Params& p, double x, double b) {
    const double s = x + b;
    return (2.0 * x + b - p.c1 * s * s) / 2.0;
}

double psi(const Params& p, double d) { return std::sqrt(d / p.c2) - d; }

}  // namespace reductions

std::vector<ConditionRecord> check_H(const Params& p, const Box& b, double mm) {
    using R = Relation;
    std::vector<ConditionRecord> out;
    const double al = b.xl() + b.yl();
    const double ar = b.xr() + b.yr();
    const double bl = b.yl() + b.zl();
    const double br = b.yr() + b.zr();
    const double c1 = p.c1;

    out.push_back(make_record("H1", "analytic", {make_part("z_l = 0", b.zl(), 0.0, R::Eq, mm)}));

    if (!p.h2_applicable()) {
        out.push_back(inapplicable("H2", "analytic", "alpha*c3 <= 1: sqrt(alpha/(alpha*c3-1)(x_l+y_l)) undefined"));
    } else {
        const double bound = std::sqrt(p.alpha / (p.alpha * p.c3 - 1.0) * al) - al;
        out.push_back(make_record(
            "H2", "analytic",
            {make_part("x_l + y_l > z_r", al, b.zr(), R::Gt, mm),
             make_part("z_r >= sqrt(alpha/(alpha*c3-1)*(x_l+y_l)) - (x_l+y_l)", b.zr(), bound, R::Ge, mm),
             make_part("sqrt(alpha/(alpha*c3-1)*(x_l+y_l)) - (x_l+y_l) > 0", bound, 0.0, R::Gt, mm)}));
    }

    const double h3 = 2.0 * (std::sqrt(p.alpha / (p.alpha * p.c3 + 1.0) * ar) - ar);
    out.push_back(make_record(
        "H3", "analytic",
        {make_part("2*(sqrt(alpha/(alpha*c3+1)*(x_r+y_r)) - (x_r+y_r)) > z_r", h3, b.zr(), R::Gt, mm)}));

    out.push_back(make_record(
        "H4", "analytic",
        {make_part("1/c1 - x_r > y_r + z_r", 1.0 / c1 - b.xr(), br, R::Gt, mm),
         make_part("y_r + z_r > 1/(2c1) - x_l", br, 1.0 / (2.0 * c1) - b.xl(), R::Gt, mm),
         make_part("1/(2c1) - x_l > 0", 1.0 / (2.0 * c1) - b.xl(), 0.0, R::Gt, mm),
         make_part("1/(2c1) - x_r > y_l + z_l", 1.0 / (2.0 * c1) - b.xr(), bl, R::Gt, mm),
         make_part("x_r >= 1/(4c1)", b.xr(), 1.0 / (4.0 * c1), R::Ge, mm),
         make_part("(1 - c1*(y_l+y_r+z_l+z_r))/(2c1) >= x_l",
                   (1.0 - c1 * (b.yl() + b.yr() + b.zl() + b.zr())) / (2.0 * c1), b.xl(), R::Ge, mm),
         make_part("x_l > 0", b.xl(), 0.0, R::Gt, mm),
         make_part("sqrt((y_l+z_l)/c1) - (y_l+z_l) >= x_l", std::sqrt(bl / c1) - bl, b.xl(), R::Ge, mm)}));

    const double psi_l = reductions::psi(p, b.xl() + b.zl());
    const double psi_r = reductions::psi(p, b.xr() + b.zr());
    out.push_back(make_record(
        "H5", "analytic",
        {make_part("x_l + z_l > 1/(4c2)", b.xl() + b.zl(), 1.0 / (4.0 * p.c2), R::Gt, mm),
         make_part("y_r >= sqrt((x_l+z_l)/c2) - (x_l+z_l)", b.yr(), psi_l, R::Ge, mm),
         make_part("sqrt((x_l+z_l)/c2) - (x_l+z_l) > 0", psi_l, 0.0, R::Gt, mm),
         make_part("sqrt((x_r+z_r)/c2) - (x_r+z_r) >= y_l", psi_r, b.yl(), R::Ge, mm),
         make_part("y_l > 0", b.yl(), 0.0, R::Gt, mm)}));
    return out;
}

std::vector<ConditionRecord> check_C_analytic(const Params& p, const Box& b, double mm) {
    using R = Relation;
    namespace rd = reductions;
    const std::string eng = "analytic";
    std::vector<ConditionRecord> out;
    const double al = b.xl() + b.yl();
    const double bl = b.yl() + b.zl();
    const double br = b.yr() + b.zr();

    // C1: F3 vanishes identically on z = 0.
    if (b.zl() != 0.0) {
        out.push_back(inapplicable("C1", eng, "factor-z identity needs z_l = 0"));
    } else {
        const double v = eval_map(p, {b.xl(), b.yl(), 0.0}).z;
        auto r = make_record("C1", eng, {make_part("z_l >= F3 on bottom face", b.zl(), v, R::Ge, mm)});
        r.extrema.emplace_back("F3 on bottom face", Interval(v));
        out.push_back(std::move(r));
    }

    // C2: phi(A) = F3(A, z_r) is decreasing when x_l + y_l > z_r.
    if (!(al > b.zr())) {
        out.push_back(inapplicable("C2", eng, "phi not decreasing: x_l + y_l <= z_r"));
    } else {
        const double worst = eval_map(p, {b.xl(), b.yl(), b.zr()}).z;
        auto r = make_record("C2", eng, {make_part("z_l >= F3(x_l, y_l, z_r)", b.zl(), worst, R::Ge, mm)});
        r.extrema.emplace_back("max F3 on top face", Interval(worst));
        out.push_back(std::move(r));
    }

    // C3': same reduction at the midplane.
    const double zm = b.zmid();
    if (!(al > zm)) {
        out.push_back(inapplicable("C3'", eng, "phi not decreasing on the midplane: x_l + y_l <= (z_l+z_r)/2"));
    } else {
        const double worst = eval_map(p, {b.xr(), b.yr(), zm}).z;
        auto r = make_record("C3'", eng, {make_part("F3(x_r, y_r, z_mid) > z_r", worst, b.zr(), R::Gt, mm)});
        r.extrema.emplace_back("min F3 on midplane", Interval(worst));
        out.push_back(std::move(r));
    }

    // C4: Phi(x, B) on T = [x_l, x_r] x [y_l+z_l, y_r+z_r].
    {
        const double c1 = p.c1;
        const double b_bar = 1.0 / (2.0 * c1) - b.xl();
        const double b_hat = 1.0 / (2.0 * c1) - b.xr();
        std::string why;
        if (!(bl <= b_bar && b_bar <= br)) why = "1/(2c1) - x_l outside [y_l+z_l, y_r+z_r]";
        else if (!(bl <= b_hat && b_hat <= br)) why = "1/(2c1) - x_r outside [y_l+z_l, y_r+z_r]";
        else if (!(1.0 / c1 - bl > b.xr())) why = "Phi(., y_l+z_l) not increasing on [x_l, x_r]";
        else if (!(1.0 / c1 - br > b.xr())) why = "Phi(., y_r+z_r) not increasing on [x_l, x_r]";
        else if (!(b.xl() <= (1.0 - c1 * (bl + br)) / (2.0 * c1)))
            why = "Phi(x_l, y_l+z_l) > Phi(x_l, y_r+z_r): minimum not at (x_l, y_l+z_l)";
        if (!why.empty()) {
            out.push_back(inapplicable("C4", eng, why));
        } else {
            const double vmax = rd::big_phi(p, b.xr(), b_hat);
            const double vmin = rd::big_phi(p, b.xl(), bl);
            auto r = make_record("C4", eng,
                                 {make_part("x_r >= max F1 = Phi(x_r, 1/(2c1) - x_r)", b.xr(), vmax, R::Ge, mm),
                                  make_part("min F1 = Phi(x_l, y_l+z_l) >= x_l", vmin, b.xl(), R::Ge, mm)});
            r.extrema.emplace_back("max F1", Interval(vmax));
            r.extrema.emplace_back("min F1", Interval(vmin));
            out.push_back(std::move(r));
        }
    }

    // C5: psi(D) decreasing on [x_l+z_l, x_r+z_r] when 1/(4c2) < x_l + z_l.
    if (!(1.0 / (4.0 * p.c2) < b.xl() + b.zl())) {
        out.push_back(inapplicable("C5", eng, "psi not decreasing: x_l + z_l <= 1/(4c2)"));
    } else {
        const double vmax = rd::psi(p, b.xl() + b.zl());
        const double vmin = rd::psi(p, b.xr() + b.zr());
        auto r = make_record("C5", eng,
                             {make_part("y_r >= max F2 = psi(x_l+z_l)", b.yr(), vmax, R::Ge, mm),
                              make_part("min F2 = psi(x_r+z_r) >= y_l", vmin, b.yl(), R::Ge, mm)});
        r.extrema.emplace_back("max F2", Interval(vmax));
        r.extrema.emplace_back("min F2", Interval(vmin));
        out.push_back(std::move(r));
    }
    return out;
}

namespace {

ConditionRecord merge(const ConditionRecord& a, const ConditionRecord& i) {
    ConditionRecord r;
    r.id = a.id;
    r.engine = "analytic+interval";
    r.status = combine(a.status, i.status);
    if (!a.note.empty()) r.note = "analytic: " + a.note;
    if (!i.note.empty()) r.note += (r.note.empty() ? "" : "; ") + std::string("interval: ") + i.note;
    r.parts = a.parts;
    for (auto q : i.parts) {
        q.label = "[interval] " + q.label;
        r.parts.push_back(std::move(q));
    }
    r.extrema = a.extrema;
    for (auto e : i.extrema) {
        e.first = "[interval] " + e.first;
        r.extrema.push_back(std::move(e));
    }
    return r;
}

}  // namespace

Certificate certify_box(const Params& p, const Box& b, const CertifyOptions& opt) {
    Certificate cert{p, b, check_H(p, b, opt.min_margin), Verdict::Inconclusive};

    std::vector<ConditionRecord> c;
    if (opt.engine == Engine::Analytic) {
        c = check_C_analytic(p, b, opt.min_margin);
    } else {
        BoundOptions bo;
        bo.budget = opt.budget;
        bo.parallel = opt.parallel;
        auto rig = verify_C_rigorous(p, b, opt.tol, bo, opt.min_margin);
        if (opt.engine == Engine::Interval) {
            c = std::move(rig);
        } else {
            auto ana = check_C_analytic(p, b, opt.min_margin);
            for (std::size_t k = 0; k < ana.size(); ++k) c.push_back(merge(ana[k], rig[k]));
        }
    }
    cert.records.insert(cert.records.end(), c.begin(), c.end());
    cert.verdict = verdict_of(cert.records);
    return cert;
}

std::string to_string(Status s) {
    switch (s) {
        case Status::Pass: return "pass";
        case Status::Fail: return "fail";
        case Status::Inconclusive: return "inconclusive";
        case Status::Inapplicable: return "inapplicable";
    }
    return "?";
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Certified: return "certified";
        case Verdict::Falsified: return "falsified";
        case Verdict::Inconclusive: return "inconclusive";
        case Verdict::Inapplicable: return "inapplicable";
    }
    return "?";
}

std::string to_string(Engine e) {
    switch (e) {
        case Engine::Analytic: return "analytic";
        case Engine::Interval: return "interval";
        case Engine::Both: return "both";
    }
    return "?";
}

std::string to_string(Relation r) {
    switch (r) {
        case Relation::Gt: return ">";
        case Relation::Ge: return ">=";
        case Relation::Eq: return "=";
    }
    return "?";
}

Engine parse_engine(const std::string& s) {
    if (s == "analytic") return Engine::Analytic;
    if (s == "interval") return Engine::Interval;
    if (s == "both") return Engine::Both;
    throw std::invalid_argument("unknown engine '" + s + "' (expected analytic|interval|both)");
}

}  // namespace triopoly
