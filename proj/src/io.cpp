#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qcorr/harness.hpp"

namespace qcorr {

using nlohmann::json;

BipartiteState parse_state_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw InvalidState("json", std::string("state file is not valid JSON: ") + e.what());
    }
    auto need = [&](const char* key) -> const json& {
        if (!j.is_object() || !j.contains(key)) throw InvalidState("schema", std::string("missing field '") + key + "'");
        return j.at(key);
    };
    const json& jda = need("d_a");
    const json& jdb = need("d_b");
    const json& jm = need("matrix");
    if (!jda.is_number_integer() || !jdb.is_number_integer() || jda.get<long>() < 1 || jdb.get<long>() < 1)
        throw InvalidState("schema", "d_a and d_b must be positive integers");
    int da = jda.get<int>(), db = jdb.get<int>();
    int n = da * db;
    if (!jm.is_array() || static_cast<int>(jm.size()) != n)
        throw InvalidState("dimension", "matrix must have d_a*d_b rows");
    CMatrix m(n, n);
    for (int r = 0; r < n; ++r) {
        const json& row = jm[r];
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw InvalidState("dimension", "matrix row " + std::to_string(r) + " must have d_a*d_b entries");
        for (int c = 0; c < n; ++c) {
            const json& e = row[c];
            if (!e.is_object() || !e.contains("re") || !e.contains("im") || !e["re"].is_number() ||
                !e["im"].is_number())
                throw InvalidState("schema", "entries must be objects {\"re\": number, \"im\": number}");
            m(r, c) = cplx(e["re"].get<double>(), e["im"].get<double>());
        }
    }
    return BipartiteState(DensityMatrix(m), da, db);
}

BipartiteState load_state(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidState("file", "cannot read state file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_state_json(ss.str());
}

std::string state_to_json(const BipartiteState& s) {
    json rows = json::array();
    const CMatrix& m = s.matrix();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({{"re", m(r, c).real()}, {"im", m(r, c).imag()}});
        rows.push_back(std::move(row));
    }
    json j = {{"d_a", s.d_a()}, {"d_b", s.d_b()}, {"matrix", std::move(rows)}};
    return j.dump();
}

void save_state(const BipartiteState& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path + "'");
    out << state_to_json(s) << "\n";
}

namespace {

json matrix_json(const CMatrix& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({{"re", m(r, c).real()}, {"im", m(r, c).imag()}});
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

std::string report_to_json(const MeasureReport& r) {
    json arg = json::array();
    for (const auto& u : r.argmin) arg.push_back(matrix_json(u));
    json meta = json::object();
    for (const auto& [k, v] : r.metadata) meta[k] = v;
    json j = {
        {"measure", r.measure_id},
        {"side", to_string(r.side)},
        {"value", r.value},
        {"value_clamped", std::max(r.value, 0.0)},
        {"route", r.route},
        {"bound", r.bound == Bound::upper ? "upper" : "exact"},
        {"argmin", std::move(arg)},
        {"cfg",
         {{"grid_points", r.cfg.grid_points},
          {"multistarts", r.cfg.multistarts},
          {"refine_iters", r.cfg.refine_iters},
          {"tol_opt", r.cfg.tol_opt},
          {"seed", r.cfg.seed},
          {"seed_bases", r.cfg.seed_bases.size()}}},
        {"metadata", std::move(meta)},
    };
    return j.dump();
}

std::string suite_report_to_json(const SuiteReport& r) {
    auto failures = [](const std::vector<SuiteFailure>& fs) {
        json a = json::array();
        for (const auto& f : fs)
            a.push_back({{"state", f.state}, {"measure", f.measure}, {"relation", f.relation}, {"observed", f.observed}});
        return a;
    };
    json j = {{"suite", r.suite},
              {"cases", r.cases},
              {"failures", failures(r.failures)},
              {"expected_violations", failures(r.expected)},
              {"wall_seconds", r.wall_seconds}};
    return j.dump();
}

std::string fingerprint(const BipartiteState& s) {
    // FNV-1a over the entries rounded to 1e-12, stable across runs.
    std::uint64_t h = 1469598103934665603ULL;
    auto mixin = [&](long long v) {
        for (int b = 0; b < 8; ++b) {
            h ^= static_cast<std::uint64_t>((v >> (8 * b)) & 0xff);
            h *= 1099511628211ULL;
        }
    };
    mixin(s.d_a());
    mixin(s.d_b());
    const CMatrix& m = s.matrix();
    for (Eigen::Index i = 0; i < m.size(); ++i) {
        mixin(std::llround(m(i).real() * 1e12));
        mixin(std::llround(m(i).imag() * 1e12));
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace qcorr
