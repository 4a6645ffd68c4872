#include <doctest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gen.hpp"
#include "qcorr/harness.hpp"
#include "qcorr/optimizer.hpp"

using namespace qcorr;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliRun {
    int code;
    std::string out, err;
};

CliRun cli(std::vector<std::string> args) {
    args.insert(args.begin(), "qcorr");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch_dir() {
    fs::path d = fs::temp_directory_path() / "qcorr_harness_tests";
    fs::create_directories(d);
    return d;
}

std::string write_file(const std::string& name, const std::string& text) {
    fs::path p = scratch_dir() / name;
    std::ofstream(p) << text;
    return p.string();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("state files round-trip") {
    gen::for_cases(10, 81, [](gen::Case& c) {
        BipartiteState s = c.bipartite(c.integer(1, 3), c.integer(1, 3));
        BipartiteState t = parse_state_json(state_to_json(s));
        CHECK(t.d_a() == s.d_a());
        CHECK(t.d_b() == s.d_b());
        CHECK(gen::max_abs(t.matrix() - s.matrix()) == 0.0);
    });
    std::string path = (scratch_dir() / "roundtrip.json").string();
    save_state(family_xy({0.3, 0.2}), path);
    CHECK(gen::max_abs(load_state(path).matrix() - family_xy({0.3, 0.2}).matrix()) == 0.0);
}

TEST_CASE("invalid state files name the invariant") {
    auto invariant_of = [](const std::string& text) {
        try {
            parse_state_json(text);
        } catch (const InvalidState& e) {
            return e.invariant();
        }
        return std::string("accepted");
    };
    CHECK(invariant_of("{not json") == "json");
    CHECK(invariant_of(R"({"d_a": 1})") == "schema");
    CHECK(invariant_of(R"({"d_a": 2, "d_b": 2, "matrix": [[{"re": 1, "im": 0}]]})") == "dimension");
    CHECK(invariant_of(R"({"d_a": 1, "d_b": 2, "matrix": [[{"re": 1, "im": 0}, {"re": 0, "im": 0}],
                                                            [{"re": 0, "im": 0}, {"re": 1, "im": 0}]]})") == "trace");
    CHECK(invariant_of(R"({"d_a": 1, "d_b": 2, "matrix": [[{"re": 1.5, "im": 0}, {"re": 0, "im": 0}],
                                                            [{"re": 0, "im": 0}, {"re": -0.5, "im": 0}]]})") == "psd");
    try {
        load_state((scratch_dir() / "missing.json").string());
        FAIL("missing file accepted");
    } catch (const InvalidState& e) {
        CHECK(e.invariant() == "file");
    }
}

TEST_CASE("compute command") {
    std::string bell = write_file("bell.json", state_to_json(max_entangled(2)));
    CliRun r = cli({"compute", "--state", bell, "--measure", "discord", "--side", "A"});
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["measure"] == "discord");
    CHECK(j["value"].get<double>() == doctest::Approx(1).epsilon(1e-6));
    CHECK(j["argmin"].is_array());

    std::array<double, 2> p{0.4, 0.6};
    std::vector<DensityMatrix> cond{random_density(2, 2, 3), random_density(2, 1, 4)};
    std::string cq = write_file("cq.json", state_to_json(classical_quantum(p, LocalBasis::computational(2), cond)));
    for (const char* m : {"discord", "geometric_bures", "mig_hellinger", "lqu", "negativity_of_quantumness"}) {
        CAPTURE(m);
        CliRun c = cli({"compute", "--state", cq, "--measure", m, "--side", "A"});
        REQUIRE(c.code == 0);
        CHECK(std::abs(json::parse(c.out)["value"].get<double>()) <= 1e-8);
    }

    std::string fam = write_file("fam.json", state_to_json(family_xy({0.3, 0.2})));
    CliRun both = cli({"compute", "--state", fam, "--measure", "negativity_of_quantumness", "--side", "A", "--route", "both"});
    REQUIRE(both.code == 0);
    std::istringstream lines(both.out);
    std::vector<double> vals;
    for (std::string line; std::getline(lines, line);)
        if (!line.empty()) vals.push_back(json::parse(line)["value"].get<double>());
    REQUIRE(vals.size() == 2);
    CHECK(std::abs(vals[0] - vals[1]) <= 2 * OptConfig{}.tol_opt);
}

TEST_CASE("exit codes") {
    std::string fam = write_file("fam.json", state_to_json(family_xy({0.3, 0.2})));
    CHECK(cli({"--help"}).code == 0);
    CHECK(cli({"compute", "--bogus"}).code == 2);

    std::string bad = write_file("bad.json", R"({"d_a": 1, "d_b": 2, "matrix": [[{"re": 1, "im": 0}, {"re": 0, "im": 0}],
                                                  [{"re": 0, "im": 0}, {"re": 1, "im": 0}]]})");
    CliRun r = cli({"compute", "--state", bad, "--measure", "discord", "--side", "A"});
    CHECK(r.code == 2);
    CHECK(r.err.find("trace") != std::string::npos);

    CHECK(cli({"compute", "--state", fam, "--measure", "no_such_measure", "--side", "A"}).code == 3);
    CHECK(cli({"compute", "--state", fam, "--measure", "lqu", "--side", "AB"}).code == 3);
    CHECK(cli({"compute", "--state", fam, "--measure", "geometric_s1", "--side", "AB"}).code == 3);
    CHECK(cli({"verify", "--suite", "regressions"}).code == 0);
    CHECK(cli({"verify", "--suite", "nonsense"}).code == 2);
}

TEST_CASE("CLI output is byte-stable") {
    std::string state = (scratch_dir() / "rs.json").string();
    REQUIRE(cli({"random-state", "--da", "2", "--db", "2", "--rank", "3", "--seed", "7", "--out", state}).code == 0);
    std::string first = read_file(state);
    REQUIRE(cli({"random-state", "--da", "2", "--db", "2", "--rank", "3", "--seed", "7", "--out", state}).code == 0);
    CHECK(read_file(state) == first);

    std::vector<std::string> args{"compute", "--state", state, "--measure", "discord", "--side", "AB", "--seed", "3"};
    CliRun a = cli(args), b = cli(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);

    std::string csv = (scratch_dir() / "scan.csv").string();
    std::vector<std::string> scan{"scan", "--family", "xy", "--step", "0.1", "--measures", "lqu,discord@AB", "--out", csv};
    REQUIRE(cli(scan).code == 0);
    std::string s1 = read_file(csv);
    REQUIRE(cli(scan).code == 0);
    CHECK(read_file(csv) == s1);
    CHECK(s1.rfind("x,y,lqu,discord@AB\n", 0) == 0);

    // Suite reports differ only in the timing field.
    auto strip = [](std::string out) {
        json j = json::parse(out);
        j.erase("wall_seconds");
        return j.dump();
    };
    CHECK(strip(cli({"verify", "--suite", "regressions"}).out) == strip(cli({"verify", "--suite", "regressions"}).out));
}

TEST_CASE("family grid and region map") {
    CHECK(family_grid(0.1).size() == 66);
    CHECK(family_grid(0.01).size() == 5151);
    CHECK_THROWS_AS(family_grid(0.2), DomainError);
    CHECK_THROWS_AS(family_grid(0), DomainError);

    std::vector<RegionPoint> pts = region_map(0.05);
    auto at = [&](double x, double y) {
        for (const auto& p : pts)
            if (std::abs(p.x - x) < 1e-9 && std::abs(p.y - y) < 1e-9) return p;
        FAIL("grid point missing");
        return pts.front();
    };
    CHECK(at(0, 0).cls == RegionClass::classical_cc);
    CHECK(at(1, 0).cls == RegionClass::product);
    CHECK(at(0, 1).cls == RegionClass::product);
    CHECK(at(0.45, 0.45).cls == RegionClass::entangled);
    CHECK(at(0.4, 0).cls == RegionClass::classical_cq_only);
    CHECK(at(0, 0.4).cls == RegionClass::classical_qc_only);
    CHECK(at(0.25, 0.25).cls == RegionClass::discordant_separable);
    for (const auto& p : pts) {
        CAPTURE(p.x);
        CAPTURE(p.y);
        bool axis = p.x < 1e-12 || p.y < 1e-12;
        bool classical = p.cls != RegionClass::entangled && p.cls != RegionClass::discordant_separable;
        CHECK(axis == classical);
    }

    std::ostringstream csv;
    write_region_csv(pts, csv);
    std::string text = csv.str();
    CHECK(text.rfind("x,y,class,negativity,discord_A\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == static_cast<long>(pts.size()) + 1);
}

TEST_CASE("suites") {
    CHECK(parse_suite("wheel") == SuiteId::wheel);
    CHECK_THROWS(parse_suite("nope"));
    CHECK(default_corpus_size(SuiteId::distance_inequalities) == 500);

    SuiteReport reg = run_suite(SuiteId::regressions, SuiteConfig{});
    CHECK(reg.failures.empty());
    CHECK(reg.expected.size() == 5);

    SuiteConfig small;
    small.corpus_size = 20;
    SuiteReport d = run_suite(SuiteId::distance_inequalities, small);
    CHECK(d.failures.empty());
    CHECK(d.cases > 0);
    json j = json::parse(suite_report_to_json(d));
    CHECK(j["suite"] == "distance_inequalities");
    CHECK(j["failures"].empty());

    // Same seed, same report (up to timing).
    SuiteReport d2 = run_suite(SuiteId::distance_inequalities, small);
    CHECK(d2.cases == d.cases);
}

TEST_CASE("parallel_for") {
    std::vector<int> out(100, 0);
    parallel_for(out.size(), [&](std::size_t i) { out[i] = static_cast<int>(i * i); });
    for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == static_cast<int>(i * i));
    CHECK_THROWS_AS(parallel_for(10, [](std::size_t i) {
                        if (i == 3) throw DomainError("boom");
                    }),
                    DomainError);
    CHECK(thread_count() >= 1);
}

TEST_CASE("fingerprints") {
    CHECK(fingerprint(family_xy({0.3, 0.2})) == fingerprint(family_xy({0.3, 0.2})));
    CHECK(fingerprint(family_xy({0.3, 0.2})) != fingerprint(family_xy({0.2, 0.3})));
}
