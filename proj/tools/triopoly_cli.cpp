// triopoly: certification, search, horseshoe and dynamics workflows for the
// heterogeneous triopoly map.
//
// Exit codes: 0 certified / success, 1 falsified, 2 inconclusive or
// inapplicable, 3 usage or invalid input, 4 runtime failure.

#include <omp.h>

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "triopoly/serialize.hpp"

using namespace triopoly;

namespace {

enum Exit { kOk = 0, kFalsified = 1, kInconclusive = 2, kUsage = 3, kRuntime = 4 };

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Globals {
    std::string params, box, engine = "analytic", out, preset, config;
    double tol = 1e-8;
    std::size_t budget = 1'000'000;
    std::uint64_t seed = 1;
    int threads = 0;
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::map<std::string, std::string> read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config file '" + path + "'");
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw UsageError(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

// Output sink: --out path or stdout.
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw UsageError("cannot open '" + path + "' for writing");
        }
    }
    std::ostream& os() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

struct Context {
    Globals g;
    CLI::App* app = nullptr;

    Params params() const {
        if (!g.params.empty()) return parse_params(g.params);
        if (!g.preset.empty()) return Params::paper();
        throw UsageError("missing --params (or --preset, or params in --config)");
    }
    std::optional<Box> maybe_box() const {
        if (!g.box.empty()) return parse_box(g.box);
        if (g.preset == "paper") return Box::paper();
        if (g.preset == "paper-raw") {
            const auto v = Box::paper_raw_values();
            return Box(v[0], v[1], v[2], v[3], v[4], v[5]);
        }
        return std::nullopt;
    }
    Box box() const {
        auto b = maybe_box();
        if (!b) throw UsageError("missing --box (or --preset, or box in --config)");
        return *b;
    }
};

int exit_for(Verdict v) {
    switch (v) {
        case Verdict::Certified: return kOk;
        case Verdict::Falsified: return kFalsified;
        default: return kInconclusive;
    }
}

State parse_state(const std::string& text) {
    const auto v = parse_doubles(text, 3);
    return {v[0], v[1], v[2]};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Chaos certification and dynamics toolkit for a heterogeneous triopoly map"};
    app.require_subcommand(1);
    app.fallthrough();
    Context ctx;
    ctx.app = &app;
    Globals& g = ctx.g;

    auto* o_params = app.add_option("--params", g.params, "c1,c2,c3,alpha");
    auto* o_box = app.add_option("--box", g.box, "xl,xr,yl,yr,zl,zr");
    auto* o_tol = app.add_option("--tol", g.tol, "interval enclosure width / solver tolerance");
    auto* o_budget = app.add_option("--budget", g.budget, "subdivision or candidate budget");
    auto* o_seed = app.add_option("--seed", g.seed, "random seed");
    auto* o_engine = app.add_option("--engine", g.engine, "analytic|interval|both")
                         ->check(CLI::IsMember({"analytic", "interval", "both"}));
    auto* o_out = app.add_option("--out", g.out, "output file (default stdout)");
    auto* o_threads = app.add_option("--threads", g.threads, "maximum worker threads")->check(CLI::NonNegativeNumber);
    auto* o_preset = app.add_option("--preset", g.preset, "paper|paper-raw")
                         ->check(CLI::IsMember({"paper", "paper-raw"}));
    app.add_option("--config", g.config, "flat key = value file; flags override it");

    // certify
    auto* certify = app.add_subcommand("certify", "check (H1)-(H5) and (C1)-(C5) for a box");

    // search
    auto* search = app.add_subcommand("search", "search for boxes passing (H1)-(H5)");
    std::string strategy = "random";
    std::size_t keep = 10;
    double spread = 0.0;
    search->add_option("--strategy", strategy, "grid|random|refine")
        ->check(CLI::IsMember({"grid", "random", "refine"}));
    search->add_option("--keep", keep, "number of boxes to report");
    search->add_option("--spread", spread, "search within +-spread (relative) around --box instead of the default region")
        ->check(CLI::Range(0.0, 1.0));

    // horseshoe
    auto* horseshoe = app.add_subcommand("horseshoe", "K-set covers and path-stretching reports");
    int resolution = 64, paths = 100, vertices = 6;
    std::string report;
    horseshoe->add_option("--resolution", resolution, "grid cells per axis in each half-box")->check(CLI::PositiveNumber);
    horseshoe->add_option("--paths", paths, "random paths to test")->check(CLI::NonNegativeNumber);
    horseshoe->add_option("--vertices", vertices, "vertices per random path")->check(CLI::Range(2, 1000));
    horseshoe->add_option("--report", report, "stretching report JSON file");

    // periodic
    auto* periodic = app.add_subcommand("periodic", "periodic orbits for symbol words");
    std::string word;
    int max_k = 0;
    bool dedup = false;
    auto* o_word = periodic->add_option("--word", word, "symbol word over {0,1}");
    periodic->add_option("--max-k", max_k, "all words of length 1..k")->excludes(o_word)->check(CLI::Range(1, 6));
    periodic->add_flag("--dedup", dedup, "one word per rotation class");

    // simulate / lyapunov
    std::string start;
    long steps = 10000;
    int transient = 1000;
    double safety = 10.0;
    auto* simulate_cmd = app.add_subcommand("simulate", "orbit CSV");
    auto* lyapunov_cmd = app.add_subcommand("lyapunov", "Lyapunov spectrum CSV");
    for (auto* sc : {simulate_cmd, lyapunov_cmd}) {
        sc->add_option("--start", start, "x,y,z (default: Nash point + 1e-3)");
        sc->add_option("-n,--steps", steps, "recorded steps")->check(CLI::NonNegativeNumber);
        sc->add_option("--transient", transient, "discarded steps")->check(CLI::NonNegativeNumber);
        sc->add_option("--safety", safety, "escape threshold on |coordinate|")->check(CLI::PositiveNumber);
    }

    // bifurcate
    auto* bifurcate = app.add_subcommand("bifurcate", "bifurcation scan over alpha");
    double alpha_lo = 1.0, alpha_hi = 20.0;
    int samples = 200, record = 200;
    std::string policy = "nash";
    double offset = 1e-3;
    bifurcate->add_option("--alpha-lo", alpha_lo);
    bifurcate->add_option("--alpha-hi", alpha_hi);
    bifurcate->add_option("--samples", samples);
    bifurcate->add_option("--record", record, "asymptotic samples per alpha")->check(CLI::NonNegativeNumber);
    bifurcate->add_option("--transient", transient)->check(CLI::NonNegativeNumber);
    bifurcate->add_option("--policy", policy, "nash|random|fixed")->check(CLI::IsMember({"nash", "random", "fixed"}));
    bifurcate->add_option("--offset", offset, "initial offset from the Nash point");
    bifurcate->add_option("--start", start, "x,y,z for --policy fixed");
    bifurcate->add_option("--safety", safety)->check(CLI::PositiveNumber);

    // demo-logistic
    auto* logistic = app.add_subcommand("demo-logistic", "stretching certificates for the logistic map");
    double mu = 3.88;
    int grid = 200;
    logistic->add_option("--mu", mu);
    logistic->add_option("--grid", grid)->check(CLI::Range(2, 100000));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (!g.config.empty()) {
            const auto kv = read_config(g.config);
            const std::map<std::string, std::pair<CLI::Option*, std::string*>> strings{
                {"params", {o_params, &g.params}}, {"box", {o_box, &g.box}},      {"engine", {o_engine, &g.engine}},
                {"out", {o_out, &g.out}},          {"preset", {o_preset, &g.preset}}};
            for (const auto& [k, v] : kv) {
                if (auto it = strings.find(k); it != strings.end()) {
                    if (it->second.first->count() == 0) *it->second.second = v;
                } else if (k == "tol") {
                    if (o_tol->count() == 0) g.tol = std::stod(v);
                } else if (k == "budget") {
                    if (o_budget->count() == 0) g.budget = std::stoull(v);
                } else if (k == "seed") {
                    if (o_seed->count() == 0) g.seed = std::stoull(v);
                } else if (k == "threads") {
                    if (o_threads->count() == 0) g.threads = std::stoi(v);
                } else {
                    throw UsageError("unknown config key '" + k + "'");
                }
            }
            if (g.engine != "analytic" && g.engine != "interval" && g.engine != "both")
                throw UsageError("engine must be analytic, interval or both");
            if (!g.preset.empty() && g.preset != "paper" && g.preset != "paper-raw")
                throw UsageError("preset must be paper or paper-raw");
        }
        if (g.threads > 0) omp_set_num_threads(g.threads);

        if (certify->parsed()) {
            const Params p = ctx.params();
            const Box b = ctx.box();
            CertifyOptions opt;
            opt.engine = parse_engine(g.engine);
            opt.tol = g.tol;
            opt.budget = g.budget;
            const Certificate c = certify_box(p, b, opt);
            Sink sink(g.out);
            sink.os() << document("certificate", to_json(c)).dump(2) << '\n';
            return exit_for(c.verdict);
        }

        if (search->parsed()) {
            const Params p = ctx.params();
            SearchOptions opt;
            opt.strategy = parse_strategy(strategy);
            opt.budget = g.budget;
            opt.seed = g.seed;
            opt.keep = keep;
            if (spread > 0.0) opt.space = SearchSpace::around(ctx.box(), spread);
            const SearchResult r = search_boxes(p, opt);
            Sink sink(g.out);
            for (const auto& line : search_lines(r)) sink.os() << line.dump() << '\n';
            return kOk;
        }

        if (horseshoe->parsed()) {
            const Params p = ctx.params();
            const OrientedBox ob(ctx.box());
            require_certified(p, ob.box);
            const auto covers = build_K_enclosures(p, ob, resolution);
            {
                Sink sink(g.out);
                write_k_covers_csv(sink.os(), covers.first, covers.second);
            }
            if (!report.empty()) {
                std::mt19937_64 rng(g.seed);
                json reps = json::array();
                int stretched = 0;
                for (int i = 0; i < paths; ++i) {
                    const PathSample path = random_monotone_path(ob, vertices, rng);
                    const StretchReport sr = check_path_stretching(p, ob, path);
                    stretched += sr.stretched() ? 1 : 0;
                    reps.push_back(to_json(sr));
                }
                const bool disjoint = covers_disjoint(covers.first, covers.second);
                json body = {{"params", to_json(p)},
                             {"box", to_json(ob.box)},
                             {"resolution", resolution},
                             {"k0_cells", covers.first.cells.size()},
                             {"k1_cells", covers.second.cells.size()},
                             {"covers_disjoint", disjoint},
                             {"seed", g.seed},
                             {"paths", paths},
                             {"stretched", stretched},
                             {"reports", reps}};
                Sink sink(report);
                sink.os() << document("horseshoe", body).dump(2) << '\n';
                if (!disjoint || stretched != paths) return kInconclusive;
            }
            return kOk;
        }

        if (periodic->parsed()) {
            const Params p = ctx.params();
            const OrientedBox ob(ctx.box());
            std::vector<WordTable> tables;
            int missing = 0;
            if (!word.empty()) {
                WordTable t;
                t.k = static_cast<int>(word.size());
                t.rows.push_back(find_periodic_orbit(p, ob, SymbolWord::parse(word), g.tol));
                t.realized = t.rows.front().converged ? 1 : 0;
                tables.push_back(t);
            } else {
                if (max_k == 0) throw UsageError("periodic needs --word or --max-k");
                for (int k = 1; k <= max_k; ++k) tables.push_back(count_periodic_words(p, ob, k, g.tol, {}, dedup));
            }
            for (const auto& t : tables) missing += static_cast<int>(t.rows.size()) - t.realized;
            Sink sink(g.out);
            write_words_csv(sink.os(), tables);
            return missing == 0 ? kOk : kInconclusive;
        }

        if (simulate_cmd->parsed() || lyapunov_cmd->parsed()) {
            const Params p = ctx.params();
            SimulateOptions so;
            so.safety = safety;
            const State s0 = start.empty() ? nash_point(p) + State{1e-3, 1e-3, 1e-3} : parse_state(start);
            Sink sink(g.out);
            if (simulate_cmd->parsed()) {
                if (steps > std::numeric_limits<int>::max()) throw UsageError("--steps too large");
                write_orbit_csv(sink.os(), simulate(p, s0, static_cast<int>(steps), transient, so));
                return kOk;
            }
            const OrbitRecord warm = simulate(p, s0, 1, transient, so);
            if (warm.escape_step) {
                sink.os() << "lambda1,lambda2,lambda3,steps,complete\n";
                sink.os() << "nan,nan,nan,0,0\n";
                return kInconclusive;
            }
            const LyapunovResult ly = lyapunov_spectrum(p, warm.states.back(), steps, so);
            sink.os() << "lambda1,lambda2,lambda3,steps,complete\n";
            sink.os() << fmt(ly.exponents[0]) << ',' << fmt(ly.exponents[1]) << ',' << fmt(ly.exponents[2]) << ','
                      << ly.steps << ',' << (ly.complete ? 1 : 0) << '\n';
            return ly.complete ? kOk : kInconclusive;
        }

        if (bifurcate->parsed()) {
            const Params p = ctx.params();
            InitialPolicy ip;
            ip.offset = offset;
            ip.seed = g.seed;
            if (policy == "random") ip.kind = InitialPolicy::Kind::Random;
            if (policy == "fixed") {
                if (start.empty()) throw UsageError("--policy fixed needs --start");
                ip.kind = InitialPolicy::Kind::Fixed;
                ip.fixed = parse_state(start);
            }
            BifurcationOptions bo;
            bo.transient = transient;
            bo.record = record;
            bo.sim.safety = safety;
            Sink sink(g.out);
            write_bifurcation_csv(sink.os(), bifurcation_scan(p, alpha_lo, alpha_hi, samples, ip, bo));
            return kOk;
        }

        if (logistic->parsed()) {
            Sink sink(g.out);
            sink.os() << document("logistic-demo", to_json(logistic_sap_demo(mu, grid))).dump(2) << '\n';
            return kOk;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return kUsage;
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kRuntime;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kRuntime;
    }
    return kUsage;
}
