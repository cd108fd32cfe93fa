#include "bergman/report.hpp"

#include <cstdlib>
#include <ctime>

namespace bergman::cli {

std::string iso8601_timestamp() {
    std::time_t t;
    if (const char* env = std::getenv("SOURCE_DATE_EPOCH")) {
        t = static_cast<std::time_t>(std::strtoll(env, nullptr, 10));
    } else {
        t = std::time(nullptr);
    }
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

RunManifest make_manifest(std::string command, std::string domain,
                          std::map<std::string, std::string> parameters, std::uint64_t seed) {
    RunManifest m;
    m.command = std::move(command);
    m.domain = std::move(domain);
    m.parameters = std::move(parameters);
    m.seed = seed;
    m.timestamp = iso8601_timestamp();
    return m;
}

nlohmann::json to_json(const RunManifest& m) {
    return {{"command", m.command},
            {"domain", m.domain},
            {"parameters", m.parameters},
            {"seed", m.seed},
            {"tool_version", m.tool_version},
            {"timestamp", m.timestamp}};
}

nlohmann::json to_json(const mc::McEstimate& e) {
    return {{"value_re", e.value.real()},
            {"value_im", e.value.imag()},
            {"std_error", e.std_error},
            {"samples", e.samples},
            {"seed", e.seed}};
}

nlohmann::json to_json(const geometry::VolumeEstimate& v) {
    return {{"value", v.value}, {"std_error", v.std_error}, {"samples", v.samples}};
}

nlohmann::json to_json(const mc::IdentityReport& r) {
    nlohmann::json probes = nlohmann::json::array();
    for (const auto& p : r.probe_points) probes.push_back(p.str());
    nlohmann::json ratios = nlohmann::json::array();
    for (const auto& e : r.ratios) ratios.push_back(to_json(e));
    nlohmann::json out{{"alpha", r.alpha},
                       {"beta", r.beta},
                       {"probe_points", probes},
                       {"ratios", ratios},
                       {"coefficient_of_variation", r.coefficient_of_variation},
                       {"verdict", mc::verdict_str(r.verdict)}};
    if (!r.shell_partial_sums.empty()) {
        nlohmann::json shells = nlohmann::json::array();
        for (const auto& rows : r.shell_partial_sums) {
            nlohmann::json probe_rows = nlohmann::json::array();
            for (const auto& [depth, sum] : rows)
                probe_rows.push_back({{"depth", depth}, {"partial_sum", sum}});
            shells.push_back(probe_rows);
        }
        out["shell_partial_sums"] = shells;
    }
    return out;
}

nlohmann::json to_json(const compop::DiagnosticsReport& r) {
    nlohmann::json shells = nlohmann::json::array();
    for (const auto& s : r.shell_profile)
        shells.push_back({{"depth", s.depth},
                          {"max_ratio", s.max_ratio},
                          {"mean_mu_hat", s.mean_mu_hat},
                          {"mean_mu_tilde", s.mean_mu_tilde},
                          {"mean_f_r_beta", s.mean_f}});
    return {{"beta0", r.beta0},
            {"beta", r.beta},
            {"sup_ratio", r.sup_ratio},
            {"shell_profile", shells},
            {"verdict", compop::verdict_str(r.verdict)},
            {"warnings", r.warnings}};
}

nlohmann::json to_json(const compop::SelfMapValidation& v) {
    nlohmann::json out{{"passed", v.passed},
                       {"samples_checked", v.samples_checked},
                       {"note", v.note}};
    out["witness"] = v.witness ? nlohmann::json(v.witness->str()) : nlohmann::json(nullptr);
    out["witness_image"] =
        v.witness_image ? nlohmann::json(v.witness_image->str()) : nlohmann::json(nullptr);
    return out;
}

nlohmann::json to_json(const compop::CarlesonProfile& p) {
    nlohmann::json points = nlohmann::json::array();
    for (const auto& pt : p.points)
        points.push_back({{"z", pt.z.str()},
                          {"depth", pt.depth},
                          {"mu_tilde", to_json(pt.mu_tilde)},
                          {"mu_hat", to_json(pt.mu_hat)},
                          {"f_r_beta", to_json(pt.f_r)}});
    nlohmann::json shells = nlohmann::json::array();
    for (const auto& s : p.shells)
        shells.push_back({{"depth", s.depth},
                          {"mean_mu_tilde", s.mean_mu_tilde},
                          {"mean_mu_hat", s.mean_mu_hat},
                          {"mean_f_r_beta", s.mean_f},
                          {"fitted_c", s.fitted_c}});
    return {{"points", points}, {"shells", shells}};
}

}  // namespace bergman::cli
