// Command-line front end. Reports are JSON on stdout, logs go to stderr;
// exit codes are part of the contract (see README).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "bergman/compop.hpp"
#include "bergman/geometry.hpp"
#include "bergman/mc.hpp"
#include "bergman/report.hpp"
#include "bergman/selfcheck.hpp"

namespace {

using namespace bergman;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 64;

struct GlobalOpts {
    std::uint64_t samples = 1000000;
    std::uint64_t seed = 123456789;
    unsigned workers = 1;
    double tolerance = 0.03;
    bool compact_json = false;
    std::string csv_path;

    mc::McConfig mc() const { return {samples, seed, workers, tolerance}; }
};

void emit(const json& report, const GlobalOpts& g) {
    if (g.compact_json)
        std::cout << report.dump() << "\n";
    else
        std::cout << report.dump(2) << "\n";
}

void write_csv(const GlobalOpts& g, const std::string& header,
               const std::vector<std::string>& rows) {
    if (g.csv_path.empty()) return;
    std::ofstream out(g.csv_path);
    if (!out) throw Error("cannot open CSV path '" + g.csv_path + "'");
    out << header << "\n";
    for (const auto& row : rows) out << row << "\n";
}

std::map<std::string, std::string> base_params(const GlobalOpts& g) {
    return {{"samples", std::to_string(g.samples)},
            {"workers", std::to_string(g.workers)},
            {"tolerance", std::to_string(g.tolerance)}};
}

std::vector<CPoint> parse_point_list(const std::string& text) {
    std::vector<CPoint> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t semi = text.find(';', start);
        std::string part = text.substr(start, semi == std::string::npos ? semi : semi - start);
        if (!part.empty()) out.push_back(CPoint::parse(part));
        if (semi == std::string::npos) break;
        start = semi + 1;
    }
    if (out.empty()) throw Error("empty point list");
    return out;
}

int run_constants(const GlobalOpts& g, const std::string& domain_text) {
    auto spec = domains::DomainSpec::parse(domain_text);
    auto s = domains::structure_of(spec);
    json n = json::array(), d = json::array(), q = json::array();
    for (const auto& v : s.n) n.push_back(v.str());
    for (const auto& v : s.d) d.push_back(v.str());
    for (const auto& v : s.q) q.push_back(v.str());
    json report{{"manifest", cli::to_json(cli::make_manifest("constants", spec.str(), {}, g.seed))},
                {"beta_min", domains::beta_min(s).str()},
                {"beta_int", domains::beta_int(s).str()},
                {"structure", {{"l", s.rank}, {"n", n}, {"d", d}, {"q", q}}}};
    emit(report, g);
    return kExitOk;
}

int run_kernel(const GlobalOpts& g, const std::string& domain_text, const std::string& z_text,
               const std::string& w_text, double beta) {
    auto spec = domains::DomainSpec::parse(domain_text);
    CPoint z = CPoint::parse(z_text), w = CPoint::parse(w_text);
    Complex k = domains::kernel(spec, z, w);
    auto wp = domains::WeightParams::make(spec, beta);
    Complex kb = domains::weighted_kernel(spec, wp, z, w);
    auto params = base_params(g);
    params["z"] = z.str();
    params["w"] = w.str();
    params["beta"] = std::to_string(beta);
    json report{{"manifest", cli::to_json(cli::make_manifest("kernel", spec.str(), params, g.seed))},
                {"kernel_re", k.real()},
                {"kernel_im", k.imag()},
                {"beta", beta},
                {"c_beta", wp.c_beta},
                {"weighted_re", kb.real()},
                {"weighted_im", kb.imag()}};
    emit(report, g);
    return kExitOk;
}

int run_distance(const GlobalOpts& g, const std::string& domain_text, const std::string& z_text,
                 const std::string& w_text) {
    auto spec = domains::DomainSpec::parse(domain_text);
    CPoint z = CPoint::parse(z_text), w = CPoint::parse(w_text);
    auto params = base_params(g);
    params["z"] = z.str();
    params["w"] = w.str();
    json report{
        {"manifest", cli::to_json(cli::make_manifest("distance", spec.str(), params, g.seed))},
        {"distance", geometry::bergman_distance(spec, z, w)}};
    emit(report, g);
    return kExitOk;
}

int run_verify_identity(const GlobalOpts& g, const std::string& domain_text, double alpha,
                        double beta, const std::string& probes_text, bool divergence_probe) {
    auto spec = domains::DomainSpec::parse(domain_text);
    std::vector<CPoint> probes =
        probes_text.empty() ? mc::default_probes(spec) : parse_point_list(probes_text);
    auto report = mc::verify_culsiegel(spec, alpha, beta, probes, g.mc(), divergence_probe);
    auto params = base_params(g);
    params["alpha"] = std::to_string(alpha);
    params["beta"] = std::to_string(beta);
    params["divergence_probe"] = divergence_probe ? "true" : "false";
    json out{{"manifest",
              cli::to_json(cli::make_manifest("verify-identity", spec.str(), params, g.seed))}};
    out.update(cli::to_json(report));
    emit(out, g);
    if (!report.shell_partial_sums.empty()) {
        std::vector<std::string> rows;
        for (std::size_t p = 0; p < report.shell_partial_sums.size(); ++p)
            for (const auto& [depth, sum] : report.shell_partial_sums[p])
                rows.push_back(report.probe_points[p].str() + "," + std::to_string(depth) + "," +
                               std::to_string(sum));
        write_csv(g, "probe,depth,partial_sum", rows);
    } else {
        std::vector<std::string> rows;
        for (std::size_t p = 0; p < report.ratios.size(); ++p)
            rows.push_back(report.probe_points[p].str() + "," +
                           std::to_string(report.ratios[p].real()) + "," +
                           std::to_string(report.ratios[p].std_error));
        write_csv(g, "probe,ratio,std_error", rows);
    }
    switch (report.verdict) {
        case mc::IdentityReport::Verdict::ConstantConsistent: return kExitOk;
        case mc::IdentityReport::Verdict::Inconsistent: return 2;
        case mc::IdentityReport::Verdict::DivergenceSuspected: return 3;
    }
    return kExitRuntime;
}

int verdict_exit_code(compop::Verdict v) {
    switch (v) {
        case compop::Verdict::CompactConsistent: return 0;
        case compop::Verdict::NotCompact: return 2;
        case compop::Verdict::Inconclusive: return 3;
        case compop::Verdict::UnboundedSuspected: return 4;
        case compop::Verdict::BoundedOnly: return 6;
    }
    return kExitRuntime;
}

int run_compactness(const GlobalOpts& g, const std::string& domain_text,
                    const std::string& map_text, double beta0, double beta, int shells,
                    double deepest, double radius, double theta_lo, double theta_hi,
                    std::uint64_t profile_samples, int profile_points) {
    auto spec = domains::DomainSpec::parse(domain_text);
    auto phi = compop::parse_map(map_text, spec.ambient_dim());
    auto depths = compop::default_shell_depths(shells, deepest);
    compop::DiagnosticsThresholds th;
    th.theta_lo = theta_lo;
    th.theta_hi = theta_hi;

    auto params = base_params(g);
    params["map"] = map_text;
    params["beta0"] = std::to_string(beta0);
    params["beta"] = std::to_string(beta);
    params["shells"] = std::to_string(shells);
    params["radius"] = std::to_string(radius);
    auto manifest = cli::make_manifest("compactness", spec.str(), params, g.seed);

    compop::DiagnosticsReport report;
    try {
        report = compop::diagnose(spec, phi, beta0, beta, depths, radius, g.mc(), th,
                                  profile_samples, profile_points);
    } catch (const ImageOutsideDomain& e) {
        compop::SelfMapValidation failed;
        failed.passed = false;
        failed.witness = e.preimage;
        failed.witness_image = e.image;
        failed.note = "self-map validation failed";
        json out{{"manifest", cli::to_json(manifest)}, {"validation", cli::to_json(failed)}};
        emit(out, g);
        std::cerr << "self-map validation failed: " << e.what() << "\n";
        return 5;
    }
    json out{{"manifest", cli::to_json(manifest)}};
    out.update(cli::to_json(report));
    emit(out, g);
    std::vector<std::string> rows;
    for (const auto& s : report.shell_profile)
        rows.push_back(std::to_string(s.depth) + "," + std::to_string(s.max_ratio) + "," +
                       std::to_string(s.mean_mu_hat) + "," + std::to_string(s.mean_mu_tilde) + "," +
                       std::to_string(s.mean_f));
    write_csv(g, "depth,max_ratio,mean_mu_hat,mean_mu_tilde,mean_f_r_beta", rows);
    return verdict_exit_code(report.verdict);
}

int run_carleson(const GlobalOpts& g, const std::string& domain_text, const std::string& map_text,
                 double beta, double radius, int shells, int points_per_shell,
                 const std::string& points_text) {
    auto spec = domains::DomainSpec::parse(domain_text);
    auto phi = compop::parse_map(map_text, spec.ambient_dim());
    auto wp = domains::WeightParams::make(spec, beta);
    auto validation = compop::validate_self_map(
        spec, phi, g.mc().with_samples(std::min<std::uint64_t>(g.samples, 20000)));
    auto params = base_params(g);
    params["map"] = map_text;
    params["beta"] = std::to_string(beta);
    params["radius"] = std::to_string(radius);
    auto manifest = cli::make_manifest("carleson", spec.str(), params, g.seed);
    if (!validation.passed) {
        json out{{"manifest", cli::to_json(manifest)}, {"validation", cli::to_json(validation)}};
        emit(out, g);
        return 5;
    }

    compop::CarlesonProfile profile;
    if (!points_text.empty()) {
        for (const auto& z : parse_point_list(points_text))
            profile.points.push_back(compop::carleson_at(spec, wp, phi, z, radius, g.mc()));
    } else {
        profile = compop::carleson_profile(spec, wp, phi, radius,
                                           compop::default_shell_depths(shells), points_per_shell,
                                           g.mc());
    }
    json out{{"manifest", cli::to_json(manifest)}, {"validation", cli::to_json(validation)}};
    out.update(cli::to_json(profile));
    emit(out, g);
    std::vector<std::string> rows;
    for (const auto& pt : profile.points)
        rows.push_back("\"" + pt.z.str() + "\"," + std::to_string(pt.depth) + "," +
                       std::to_string(pt.mu_tilde.real()) + "," +
                       std::to_string(pt.mu_tilde.std_error) + "," +
                       std::to_string(pt.mu_hat.real()) + "," + std::to_string(pt.f_r.real()));
    write_csv(g, "z,depth,mu_tilde,mu_tilde_stderr,mu_hat,f_r_beta", rows);
    return kExitOk;
}

int run_selftest(const GlobalOpts& g, bool fast) {
    cli::SelftestOptions opt;
    opt.fast = fast;
    opt.seed = g.seed;
    opt.workers = g.workers;
    auto results = cli::run_selftest(opt);
    std::size_t passed = 0;
    std::size_t width = 0;
    for (const auto& res : results) width = std::max(width, res.name.size());
    for (const auto& res : results) {
        std::string pad(width - res.name.size(), ' ');
        std::cout << (res.passed ? "ok   " : "FAIL ") << res.name << pad << "  " << res.detail
                  << "\n";
        if (res.passed) ++passed;
    }
    std::cout << passed << "/" << results.size() << " checks passed\n";
    return passed == results.size() ? kExitOk : kExitRuntime;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bergman-kernel diagnostics on minimal bounded homogeneous domains"};
    app.require_subcommand(1);

    GlobalOpts g;
    if (const char* env = std::getenv("BERGMAN_SEED")) g.seed = std::strtoull(env, nullptr, 10);
    app.add_option("--samples", g.samples, "Monte Carlo sample budget")->capture_default_str();
    app.add_option("--seed", g.seed, "random seed (overrides BERGMAN_SEED)")
        ->capture_default_str();
    app.add_option("--workers", g.workers, "worker threads")->capture_default_str();
    app.add_option("--tolerance", g.tolerance, "relative tolerance / CV threshold")
        ->capture_default_str();
    app.add_flag("--json", g.compact_json, "compact single-line JSON on stdout");
    app.add_option("--csv", g.csv_path, "write per-row data to this CSV file");

    auto* constants = app.add_subcommand("constants", "structure data and weight constants");
    std::string domain_text;
    constants->add_option("domain", domain_text, "ball:<d> | polydisk:<m> | symmetric:r=,a=,b= | vinberg")
        ->required();

    auto* kernel = app.add_subcommand("kernel", "kernel and weighted kernel at a pair of points");
    std::string k_domain, k_z, k_w;
    double k_beta = 0.0;
    kernel->add_option("--domain", k_domain)->required();
    kernel->add_option("--z", k_z, "point, e.g. 0.5+0i,0.1-0.2i")->required();
    kernel->add_option("--w", k_w)->required();
    kernel->add_option("--beta", k_beta, "weight exponent")->capture_default_str();

    auto* distance = app.add_subcommand("distance", "Bergman distance between two points");
    std::string d_domain, d_z, d_w;
    distance->add_option("--domain", d_domain)->required();
    distance->add_option("--z", d_z)->required();
    distance->add_option("--w", d_w)->required();

    auto* verify = app.add_subcommand("verify-identity", "probe-independence of the transported integral");
    std::string v_domain, v_probes;
    double v_alpha = 1.0, v_beta = 0.0;
    bool v_divergence = false;
    verify->add_option("--domain", v_domain)->required();
    verify->add_option("--alpha", v_alpha)->required();
    verify->add_option("--beta", v_beta)->required();
    verify->add_option("--probes", v_probes, "semicolon-separated points");
    verify->add_flag("--divergence-probe", v_divergence,
                     "allow out-of-range alpha and report boundary partial sums");

    auto* compact = app.add_subcommand("compactness", "boundary verdict for a composition operator");
    std::string c_domain, c_map;
    double c_beta0 = 0.0, c_beta = 0.5, c_radius = 1.0, c_deepest = 1e-4;
    double c_theta_lo = 0.05, c_theta_hi = 0.5;
    int c_shells = 8, c_profile_points = 3;
    std::uint64_t c_profile_samples = 20000;
    compact->add_option("--domain", c_domain)->required();
    compact->add_option("--map", c_map, "self-map in the z1..zd grammar")->required();
    compact->add_option("--beta0", c_beta0, "weight where boundedness is assumed")->required();
    compact->add_option("--beta", c_beta, "target weight")->required();
    compact->add_option("--shells", c_shells, "number of boundary shells")->capture_default_str();
    compact->add_option("--depth", c_deepest, "deepest shell 1-|z|")->capture_default_str();
    compact->add_option("--radius", c_radius, "metric-ball radius r")->capture_default_str();
    compact->add_option("--theta-lo", c_theta_lo, "compact-consistent ratio threshold")
        ->capture_default_str();
    compact->add_option("--theta-hi", c_theta_hi, "not-compact ratio threshold")
        ->capture_default_str();
    compact->add_option("--profile-samples", c_profile_samples, "samples per profile point")
        ->capture_default_str();
    compact->add_option("--profile-points", c_profile_points, "points per shell in the profile")
        ->capture_default_str();

    auto* carleson = app.add_subcommand("carleson", "pull-back measure diagnostics per point");
    std::string ca_domain, ca_map, ca_points;
    double ca_beta = 0.0, ca_radius = 1.0;
    int ca_shells = 6, ca_pps = 3;
    carleson->add_option("--domain", ca_domain)->required();
    carleson->add_option("--map", ca_map)->required();
    carleson->add_option("--beta", ca_beta)->required();
    carleson->add_option("--radius", ca_radius)->capture_default_str();
    carleson->add_option("--shells", ca_shells)->capture_default_str();
    carleson->add_option("--points-per-shell", ca_pps)->capture_default_str();
    carleson->add_option("--points", ca_points, "explicit semicolon-separated points");

    auto* selftest = app.add_subcommand("selftest", "run the invariant suites");
    bool st_fast = false;
    selftest->add_flag("--fast", st_fast, "reduced suite");

    // allow the global flags to appear after the subcommand as well
    for (auto* sub : app.get_subcommands(nullptr)) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (constants->parsed()) return run_constants(g, domain_text);
        if (kernel->parsed()) return run_kernel(g, k_domain, k_z, k_w, k_beta);
        if (distance->parsed()) return run_distance(g, d_domain, d_z, d_w);
        if (verify->parsed())
            return run_verify_identity(g, v_domain, v_alpha, v_beta, v_probes, v_divergence);
        if (compact->parsed())
            return run_compactness(g, c_domain, c_map, c_beta0, c_beta, c_shells, c_deepest,
                                   c_radius, c_theta_lo, c_theta_hi, c_profile_samples,
                                   c_profile_points);
        if (carleson->parsed())
            return run_carleson(g, ca_domain, ca_map, ca_beta, ca_radius, ca_shells, ca_pps,
                                ca_points);
        if (selftest->parsed()) return run_selftest(g, st_fast);
    } catch (const BetaOutOfRange& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ParameterOutOfRange& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ArityMismatch& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitUsage;
}
