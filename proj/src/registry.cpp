#include "qcorr/harness.hpp"

namespace qcorr {

namespace {

DistanceId parse_distance(const std::string& name) {
    for (DistanceId id : {DistanceId::RE, DistanceId::S1, DistanceId::S2, DistanceId::Bures, DistanceId::Hellinger,
                          DistanceId::L1, DistanceId::ChernoffComplement})
        if (name == to_string(id)) return id;
    throw Unsupported("unknown distance '" + name + "'");
}

bool starts_with(const std::string& s, const char* prefix, std::string& rest) {
    std::string p(prefix);
    if (s.rfind(p, 0) != 0) return false;
    rest = s.substr(p.size());
    return true;
}

[[noreturn]] void bad_route(const MeasureRequest& r) {
    throw Unsupported("measure '" + r.id + "' has no route '" + r.route + "'");
}

void one_sided_only(const MeasureRequest& r) {
    if (r.side != MeasureSide::A) throw Unsupported("measure '" + r.id + "' is one-sided (side A)");
}

MeasurementClass parse_class(const MeasureRequest& r) {
    if (r.route.empty() || r.route == "lpm") return MeasurementClass::LPM;
    if (r.route == "lgm") return MeasurementClass::LGM;
    bad_route(r);
}

void no_route(const MeasureRequest& r) {
    if (!r.route.empty()) bad_route(r);
}

} // namespace

std::vector<std::string> measure_ids() {
    std::vector<std::string> ids;
    for (const char* d : {"re", "s1", "s2", "bures", "hellinger", "chernoff"}) ids.push_back(std::string("mig_") + d);
    for (const char* d : {"re", "s1", "s2", "bures", "hellinger"}) ids.push_back(std::string("geometric_") + d);
    for (const char* d : {"s1", "s2", "bures", "hellinger"}) ids.push_back(std::string("response_") + d);
    for (const char* m : {"discord", "classical_correlations", "deficit", "mid", "amid", "diagonal_discord",
                          "thermal_diagonal", "negativity_of_quantumness", "discriminating_strength", "lqu",
                          "interferometric_power"})
        ids.emplace_back(m);
    return ids;
}

std::vector<MeasureReport> compute_measure(const BipartiteState& s, const MeasureRequest& req) {
    const OptConfig& c = req.cfg;
    std::string rest;
    if (starts_with(req.id, "mig_", rest)) {
        no_route(req);
        return {mig(s, parse_distance(rest), req.side, c)};
    }
    if (starts_with(req.id, "geometric_", rest)) {
        GeometricMode mode = GeometricMode::exact;
        if (req.route == "best_effort")
            mode = GeometricMode::best_effort;
        else if (!req.route.empty() && req.route != "exact")
            bad_route(req);
        return {geometric(s, parse_distance(rest), req.side, c, mode)};
    }
    if (starts_with(req.id, "response_", rest)) {
        one_sided_only(req);
        ResponseRoute route = ResponseRoute::direct;
        if (req.route == "closed")
            route = ResponseRoute::closed;
        else if (!req.route.empty() && req.route != "direct")
            bad_route(req);
        return {unitary_response(s, parse_distance(rest), c, route)};
    }
    if (req.id == "discord") return {discord(s, req.side, parse_class(req), c)};
    if (req.id == "classical_correlations") return {classical_correlations(s, req.side, parse_class(req), c)};
    if (req.id == "deficit") return {deficit(s, req.side, parse_class(req), c)};
    const std::pair<const char*, FixedBasisMode> fixed[] = {{"mid", FixedBasisMode::MID},
                                                             {"amid", FixedBasisMode::AMID},
                                                             {"diagonal_discord", FixedBasisMode::diagonal_discord},
                                                             {"thermal_diagonal", FixedBasisMode::thermal_diagonal}};
    for (const auto& [name, mode] : fixed)
        if (req.id == name) {
            no_route(req);
            return {fixed_basis_informational(s, mode, c)};
        }
    if (req.id == "negativity_of_quantumness") {
        if (req.route.empty() || req.route == "activation")
            return {negativity_of_quantumness(s, req.side, NoQRoute::activation, c)};
        if (req.route == "l1") return {negativity_of_quantumness(s, req.side, NoQRoute::l1, c)};
        if (req.route == "both")
            return {negativity_of_quantumness(s, req.side, NoQRoute::activation, c),
                    negativity_of_quantumness(s, req.side, NoQRoute::l1, c)};
        bad_route(req);
    }
    if (req.id == "discriminating_strength") {
        one_sided_only(req);
        no_route(req);
        return {discriminating_strength(s, {}, c)};
    }
    if (req.id == "lqu") {
        one_sided_only(req);
        no_route(req);
        return {lqu(s, {}, c)};
    }
    if (req.id == "interferometric_power") {
        one_sided_only(req);
        no_route(req);
        return {interferometric_power(s, {}, c)};
    }
    throw Unsupported("unknown measure '" + req.id + "'");
}

} // namespace qcorr
