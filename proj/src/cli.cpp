#include <fstream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "qcorr/harness.hpp"

namespace qcorr {

namespace {

enum Exit { ok = 0, suite_failed = 1, bad_input = 2, unsupported = 3 };

struct OptFlags {
    std::uint64_t seed = 0;
    int grid = OptConfig{}.grid_points;
    int multistarts = OptConfig{}.multistarts;
    int refine_iters = OptConfig{}.refine_iters;
    double tol_opt = OptConfig{}.tol_opt;

    void attach(CLI::App* app) {
        app->add_option("--seed", seed, "optimizer seed");
        app->add_option("--grid", grid, "qubit chart grid points");
        app->add_option("--multistarts", multistarts, "random starts for d > 2 and POVM searches");
        app->add_option("--refine-iters", refine_iters, "simplex steps per refinement round");
        app->add_option("--tol-opt", tol_opt, "refinement stopping tolerance");
    }
    OptConfig cfg() const {
        OptConfig c;
        c.seed = seed;
        c.grid_points = grid;
        c.multistarts = multistarts;
        c.refine_iters = refine_iters;
        c.tol_opt = tol_opt;
        validate_config(c);
        return c;
    }
};

MeasureSide parse_side(const std::string& s) {
    if (s == "A") return MeasureSide::A;
    if (s == "AB") return MeasureSide::AB;
    throw DomainError("side must be A or AB");
}

// Writes to FILE, or to `out` when no file was given.
template <class F>
void emit(const std::string& path, std::ostream& out, F&& write) {
    if (path.empty()) return write(out);
    std::ofstream f(path);
    if (!f) throw DomainError("cannot write '" + path + "'");
    write(f);
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12e", v);
    return buf;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Quantum correlation measures toolkit", "qcorr"};
    app.require_subcommand(1);
    OptFlags opt;

    std::string state_file, measure, side = "A", route;
    auto* compute = app.add_subcommand("compute", "Evaluate one measure on a state file");
    compute->add_option("--state", state_file, "state JSON file")->required();
    compute->add_option("--measure", measure, "measure id")->required();
    compute->add_option("--side", side, "A or AB")->check(CLI::IsMember({"A", "AB"}));
    compute->add_option("--route", route, "computation route");
    opt.attach(compute);

    std::string family = "xy", measures, out_file;
    double step = 0.05;
    auto* scan = app.add_subcommand("scan", "Evaluate measures over the xy family grid (CSV)");
    scan->add_option("--family", family, "state family")->check(CLI::IsMember({"xy"}));
    scan->add_option("--step", step, "grid step");
    scan->add_option("--measures", measures, "comma-separated ids, optional @AB suffix")->required();
    scan->add_option("--out", out_file, "CSV output (default stdout)");
    opt.attach(scan);

    auto* regions = app.add_subcommand("regions", "Classify the xy family grid (CSV)");
    regions->add_option("--step", step, "grid step");
    regions->add_option("--out", out_file, "CSV output (default stdout)");
    opt.attach(regions);

    std::string suite;
    int corpus_size = 0;
    std::uint64_t suite_seed = 1;
    auto* verify = app.add_subcommand("verify", "Run a verification suite");
    verify->add_option("--suite", suite, "identities, requirements, wheel, distance_inequalities, regressions")
        ->required();
    verify->add_option("--corpus-size", corpus_size, "corpus size (default depends on the suite)");
    verify->add_option("--seed", suite_seed, "corpus seed");

    int da = 2, db = 2, rank = 0;
    std::uint64_t state_seed = 0;
    auto* random_state = app.add_subcommand("random-state", "Write a random bipartite state (JSON)");
    random_state->add_option("--da", da, "dimension of A");
    random_state->add_option("--db", db, "dimension of B");
    random_state->add_option("--rank", rank, "rank (default full)");
    random_state->add_option("--seed", state_seed, "seed");
    random_state->add_option("--out", out_file, "JSON output (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? ok : bad_input;
    }

    try {
        if (*compute) {
            BipartiteState s = load_state(state_file);
            MeasureRequest req{measure, parse_side(side), route, opt.cfg()};
            for (const auto& r : compute_measure(s, req)) out << report_to_json(r) << "\n";
            return ok;
        }
        if (*scan) {
            std::vector<MeasureRequest> reqs;
            std::vector<std::string> names;
            std::stringstream ss(measures);
            for (std::string item; std::getline(ss, item, ',');) {
                if (item.empty()) continue;
                MeasureRequest r;
                r.cfg = opt.cfg();
                std::size_t at = item.find('@');
                r.id = item.substr(0, at);
                if (at != std::string::npos) r.side = parse_side(item.substr(at + 1));
                reqs.push_back(r);
                names.push_back(item);
            }
            if (reqs.empty()) throw DomainError("--measures is empty");
            std::vector<FamilyPointXY> grid = family_grid(step);
            std::vector<std::vector<double>> values(grid.size());
            parallel_for(grid.size(), [&](std::size_t i) {
                BipartiteState s = family_xy(grid[i]);
                for (const auto& r : reqs) values[i].push_back(compute_measure(s, r).front().value);
            });
            emit(out_file, out, [&](std::ostream& o) {
                o << "x,y";
                for (const auto& n : names) o << "," << n;
                o << "\n";
                for (std::size_t i = 0; i < grid.size(); ++i) {
                    o << fmt(grid[i].x) << "," << fmt(grid[i].y);
                    for (double v : values[i]) o << "," << fmt(v);
                    o << "\n";
                }
            });
            return ok;
        }
        if (*regions) {
            std::vector<RegionPoint> pts = region_map(step, opt.cfg());
            emit(out_file, out, [&](std::ostream& o) { write_region_csv(pts, o); });
            if (!out_file.empty()) {
                std::map<std::string, int> counts;
                for (const auto& p : pts) ++counts[to_string(p.cls)];
                out << "{";
                bool first = true;
                for (const auto& [k, v] : counts) {
                    out << (first ? "" : ",") << "\"" << k << "\":" << v;
                    first = false;
                }
                out << "}\n";
            }
            return ok;
        }
        if (*verify) {
            SuiteConfig cfg;
            SuiteId id = parse_suite(suite);
            cfg.corpus_size = corpus_size > 0 ? corpus_size : default_corpus_size(id);
            cfg.seed = suite_seed;
            SuiteReport rep = run_suite(id, cfg);
            out << suite_report_to_json(rep) << "\n";
            return rep.failures.empty() ? ok : suite_failed;
        }
        if (*random_state) {
            if (da < 1 || db < 1) throw DomainError("--da and --db must be positive");
            int r = rank > 0 ? rank : da * db;
            if (r > da * db) throw DomainError("--rank exceeds da*db");
            BipartiteState s = random_bipartite(da, db, r, state_seed);
            emit(out_file, out, [&](std::ostream& o) { o << state_to_json(s) << "\n"; });
            return ok;
        }
    } catch (const InvalidState& e) {
        err << "invalid state (" << e.invariant() << "): " << e.what() << "\n";
        return bad_input;
    } catch (const Unsupported& e) {
        err << "unsupported: " << e.what() << "\n";
        return unsupported;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return bad_input;
    }
    return bad_input;
}

} // namespace qcorr
