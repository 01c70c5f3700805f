#include "triopoly/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace triopoly {

std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<double> parse_doubles(const std::string& text, std::size_t expected) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("'" + item + "' is not a number");
        }
        while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
        if (used != item.size()) throw std::invalid_argument("'" + item + "' is not a number");
        out.push_back(v);
    }
    if (out.size() != expected)
        throw std::invalid_argument("expected " + std::to_string(expected) + " comma-separated values, got " +
                                    std::to_string(out.size()));
    return out;
}

Params parse_params(const std::string& text) {
    const auto v = parse_doubles(text, 4);
    return {v[0], v[1], v[2], v[3]};
}

Box parse_box(const std::string& text) {
    const auto v = parse_doubles(text, 6);
    return {v[0], v[1], v[2], v[3], v[4], v[5]};
}

namespace {

// NaN and infinities are not JSON numbers; they are written as strings.
json num(double v) {
    if (std::isfinite(v)) return v;
    return fmt(v);
}

}  // namespace

json to_json(const Params& p) { return {{"c1", p.c1}, {"c2", p.c2}, {"c3", p.c3}, {"alpha", p.alpha}}; }

json to_json(const Box& b) {
    return {{"xl", b.xl()}, {"xr", b.xr()}, {"yl", b.yl()}, {"yr", b.yr()}, {"zl", b.zl()}, {"zr", b.zr()}};
}

json to_json(const State& s) { return json::array({num(s.x), num(s.y), num(s.z)}); }

json to_json(const Interval& iv) { return json::array({num(iv.lo()), num(iv.hi())}); }

json to_json(const IntervalBox& ib) { return json::array({to_json(ib.ix), to_json(ib.iy), to_json(ib.iz)}); }

json to_json(const ConditionRecord& r) {
    json parts = json::array();
    for (const auto& q : r.parts)
        parts.push_back({{"label", q.label},
                         {"lhs", num(q.lhs)},
                         {"relation", to_string(q.rel)},
                         {"rhs", num(q.rhs)},
                         {"margin", num(q.margin)},
                         {"status", to_string(q.status)}});
    json out = {{"id", r.id}, {"status", to_string(r.status)}, {"engine", r.engine}};
    if (!r.note.empty()) out["note"] = r.note;
    out["parts"] = parts;
    if (!r.extrema.empty()) {
        json ex = json::object();
        for (const auto& [name, iv] : r.extrema) ex[name] = to_json(iv);
        out["extrema"] = ex;
    }
    return out;
}

json to_json(const Certificate& c) {
    json recs = json::array();
    for (const auto& r : c.records) recs.push_back(to_json(r));
    return {{"params", to_json(c.params)},
            {"box", to_json(c.box)},
            {"verdict", to_string(c.verdict)},
            {"min_margin", num(c.min_margin())},
            {"rounding", rounding_strategy()},
            {"records", recs}};
}

json to_json(const BoundReport& r) {
    return {{"component", to_string(r.component)},
            {"extremum", to_string(r.which)},
            {"region", r.region},
            {"region_box", to_json(r.region_box)},
            {"enclosure", to_json(r.enclosure)},
            {"width", num(r.width)},
            {"subdivisions", r.subdivisions},
            {"conclusive", r.conclusive},
            {"best_point", to_json(r.best_point)},
            {"rounding", r.rounding}};
}

json to_json(const StretchReport& r) {
    json cs = json::array();
    for (const auto& c : r.crossings)
        cs.push_back({{"k_index", c.k_index},
                      {"t_begin", c.t_begin},
                      {"t_end", c.t_end},
                      {"image_begin", c.image_begin},
                      {"image_end", c.image_end},
                      {"image_in_box", c.image_in_box}});
    return {{"stretched", r.stretched()},
            {"evidence", r.evidence},
            {"universal_certified", r.universal_certified},
            {"samples", r.samples},
            {"crossings", cs}};
}

json to_json(const PeriodicOrbitResult& r) {
    std::string realized;
    for (int s : r.realized) realized.push_back(static_cast<char>('0' + s));
    return {{"word", r.word.str()},  {"point", to_json(r.point)}, {"residual", num(r.residual)},
            {"realized", realized},  {"converged", r.converged},  {"note", r.note}};
}

json to_json(const StabilityReport& r) {
    json eig = json::array();
    for (const auto& l : r.eigenvalues) eig.push_back(json::array({l.real(), l.imag()}));
    return {{"params", to_json(r.params)},
            {"point", to_json(r.point)},
            {"eigenvalues", eig},
            {"moduli", r.moduli},
            {"tag", to_string(r.tag)}};
}

json to_json(const LyapunovResult& r) {
    return {{"exponents", json::array({num(r.exponents[0]), num(r.exponents[1]), num(r.exponents[2])})},
            {"steps", r.steps},
            {"complete", r.complete}};
}

namespace {

json to_json(const IterateCertificate& c) {
    json out = {{"iterate", c.iterate}, {"found", c.found}};
    if (c.found) {
        out["target"] = json::array({c.target.lo, c.target.hi});
        out["i0"] = json::array({c.i0.lo, c.i0.hi});
        out["i1"] = json::array({c.i1.lo, c.i1.hi});
        out["gap"] = c.gap;
    }
    return out;
}

}  // namespace

json to_json(const LogisticReport& r) {
    return {{"mu", r.mu}, {"first_iterate", to_json(r.first)}, {"second_iterate", to_json(r.second)}};
}

std::vector<json> search_lines(const SearchResult& r) {
    std::vector<json> lines;
    int rank = 0;
    for (const auto& [box, cert] : r.found)
        lines.push_back({{"type", "box"},
                         {"rank", rank++},
                         {"box", to_json(box)},
                         {"verdict", to_string(cert.verdict)},
                         {"min_margin", num(cert.min_margin())}});
    json summary = {{"type", "summary"},
                    {"schema_version", kSchemaVersion},
                    {"strategy", to_string(r.strategy)},
                    {"seed", r.seed},
                    {"evaluated", r.evaluated},
                    {"h_passing", r.h_passing},
                    {"found", r.found.size()}};
    if (r.near_miss) {
        summary["near_miss"] = {{"box", to_json(r.near_miss->box)},
                                {"score", num(r.near_miss->score)},
                                {"violated", r.near_miss->violated},
                                {"detail", r.near_miss->detail}};
    }
    lines.push_back(summary);
    return lines;
}

json document(const std::string& type, json body) {
    json out = {{"schema_version", kSchemaVersion}, {"type", type}};
    for (auto it = body.begin(); it != body.end(); ++it) out[it.key()] = it.value();
    return out;
}

void write_k_covers_csv(std::ostream& os, const KSetEnclosure& k0, const KSetEnclosure& k1) {
    os << "k,resolution,x_lo,x_hi,y_lo,y_hi,z_lo,z_hi\n";
    for (const KSetEnclosure* k : {&k0, &k1})
        for (const auto& c : k->cells)
            os << k->index << ',' << k->resolution << ',' << fmt(c.ix.lo()) << ',' << fmt(c.ix.hi()) << ','
               << fmt(c.iy.lo()) << ',' << fmt(c.iy.hi()) << ',' << fmt(c.iz.lo()) << ',' << fmt(c.iz.hi()) << '\n';
}

void write_orbit_csv(std::ostream& os, const OrbitRecord& o) {
    os << "step,x,y,z\n";
    long step = o.transient;
    for (const auto& s : o.states) os << ++step << ',' << fmt(s.x) << ',' << fmt(s.y) << ',' << fmt(s.z) << '\n';
    if (o.escape_step) os << "# escaped at step " << *o.escape_step << ": " << o.escape_reason << '\n';
}

void write_words_csv(std::ostream& os, const std::vector<WordTable>& tables) {
    os << "k,word,x,y,z,residual,realized,converged\n";
    for (const auto& t : tables)
        for (const auto& r : t.rows) {
            std::string realized;
            for (int s : r.realized) realized.push_back(static_cast<char>('0' + s));
            os << t.k << ',' << r.word.str() << ',' << fmt(r.point.x) << ',' << fmt(r.point.y) << ','
               << fmt(r.point.z) << ',' << fmt(r.residual) << ',' << realized << ',' << (r.converged ? 1 : 0)
               << '\n';
        }
}

void write_bifurcation_csv(std::ostream& os, const std::vector<BifurcationRow>& rows) {
    std::size_t width = 0;
    for (const auto& r : rows) width = std::max(width, r.z_values.size());
    os << "alpha,escaped,escape_step";
    for (std::size_t i = 0; i < width; ++i) os << ",z" << i;
    os << ",lyap1\n";
    for (const auto& r : rows) {
        os << fmt(r.alpha) << ',' << (r.escaped ? 1 : 0) << ',' << (r.escape_step ? std::to_string(*r.escape_step) : "");
        for (std::size_t i = 0; i < width; ++i) os << ',' << (i < r.z_values.size() ? fmt(r.z_values[i]) : "");
        os << ',' << fmt(r.lyap1) << '\n';
    }
}

}  // namespace triopoly
