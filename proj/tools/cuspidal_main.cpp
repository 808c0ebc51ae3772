// Command-line driver: catalog enumeration, convergence sweeps, the
// Harish-Chandra transform, and the cross-module invariant suite, with
// JSON/CSV reports written for regression diffing.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "cuspidal/catalog.hpp"
#include "cuspidal/hc.hpp"
#include "cuspidal/integrate.hpp"
#include "cuspidal/report.hpp"
#include "cuspidal/verify.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitUsage = 64;

cuspidal::RadialProfile parse_profile(int n, const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos)
        throw CLI::ValidationError("--profile", "expected nu=<value> or m=<value>");
    const std::string key = spec.substr(0, eq);
    const double value = std::stod(spec.substr(eq + 1));
    if (key == "nu") return cuspidal::RadialProfile::power_nu(n, value);
    if (key == "m") return cuspidal::RadialProfile::schwartz_m(n, value);
    throw CLI::ValidationError("--profile", "unknown profile family '" + key + "'");
}

std::vector<double> parse_grid(const std::string& spec) {
    // "a:b:step" inclusive
    std::vector<double> out;
    const auto c1 = spec.find(':');
    const auto c2 = spec.find(':', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw CLI::ValidationError("--s", "expected a:b:step");
    const double a = std::stod(spec.substr(0, c1));
    const double b = std::stod(spec.substr(c1 + 1, c2 - c1 - 1));
    const double step = std::stod(spec.substr(c2 + 1));
    if (step <= 0 || b < a) throw CLI::ValidationError("--s", "bad grid");
    for (double s = a; s <= b + 1e-9; s += step) out.push_back(s);
    return out;
}

std::vector<double> parse_radii(const std::string& spec) {
    std::vector<double> out;
    if (spec.find(',') != std::string::npos) {
        size_t pos = 0;
        while (pos < spec.size()) {
            const auto next = spec.find(',', pos);
            out.push_back(std::stod(spec.substr(pos, next - pos)));
            if (next == std::string::npos) break;
            pos = next + 1;
        }
    } else {
        const auto colon = spec.find(':');
        if (colon == std::string::npos) throw CLI::ValidationError("--radii", "expected a:b or list");
        const double a = std::stod(spec.substr(0, colon));
        const double b = std::stod(spec.substr(colon + 1));
        for (double r = a; r <= b * (1 + 1e-12); r *= 2.0) out.push_back(r);
    }
    if (out.size() < 2) throw CLI::ValidationError("--radii", "need at least two radii");
    return out;
}

struct OutputOptions {
    std::string format = "json";
    std::string output; // file (json) or prefix (csv)
    std::string stamp;  // optional; absent keeps reports bit-stable
};

void attach_metadata(cuspidal::Report& rep, std::uint64_t seed, cuspidal::Json tolerances,
                     const OutputOptions& out) {
    cuspidal::Json meta = cuspidal::Json::object();
    meta.set("seed", static_cast<long long>(seed));
    meta.set("tolerances", std::move(tolerances));
    cuspidal::Json ver = cuspidal::Json::object();
    ver.set("cuspidal", kVersion);
    ver.set("report_schema", 1);
    meta.set("versions", std::move(ver));
    if (!out.stamp.empty()) meta.set("timestamp", out.stamp);
    rep.metadata = std::move(meta);
}

int emit(const cuspidal::Report& rep, const OutputOptions& out) {
    if (out.format == "json") {
        const std::string text = rep.to_json().dump();
        if (out.output.empty()) {
            std::cout << text;
        } else {
            std::ofstream f(out.output, std::ios::binary);
            if (!f) {
                std::cerr << "error: cannot open " << out.output << "\n";
                return kExitUsage;
            }
            f << text;
        }
        return kExitOk;
    }
    if (out.format == "csv") {
        if (out.output.empty()) {
            std::cerr << "error: --format csv requires --output PREFIX\n";
            return kExitUsage;
        }
        for (const auto& [type, arr] : rep.record_groups) {
            std::ofstream f(out.output + "_" + type + ".csv", std::ios::binary);
            f << rep.to_csv(type);
        }
        return kExitOk;
    }
    std::cerr << "error: unknown format '" << out.format << "'\n";
    return kExitUsage;
}

int cmd_catalog(int n, int rank, const OutputOptions& out) {
    using namespace cuspidal;
    Report rep;
    rep.command = "catalog";
    rep.parameters.set("n", n).set("rank", rank);
    Json& rows = rep.records("classes");
    const auto classes =
        enumerate_classes(n, rank == 1 ? SigmaRank::Rank1 : SigmaRank::Rank0);
    int hcomp_count = 0;
    for (const auto& p : classes) {
        Json row = Json::object();
        const Dims d = dims(p);
        const bool hc = is_h_compatible(p);
        hcomp_count += hc ? 1 : 0;
        row.set("k", p.k);
        if (p.rank == SigmaRank::Rank1) {
            row.set("l", p.l);
            row.set("h_compatible", hc);
            row.set("p_star", is_p_star(p));
            row.set("dim_n_cap_h", d.n_cap_h);
            row.set("dim_u", d.u);
            const auto dual = sigma_theta_dual(p);
            row.set("dual_k", dual.k);
            row.set("dual_l", dual.l);
        } else {
            row.set("h_compatible", hc);
            row.set("dim_n_cap_h", d.n_cap_h);
            row.set("dim_u", d.u);
        }
        rows.push(std::move(row));
    }
    rep.parameters.set("class_count", static_cast<long long>(classes.size()));
    rep.parameters.set("h_compatible_count", hcomp_count);
    attach_metadata(rep, 0, Json::object(), out);
    return emit(rep, out);
}

int cmd_convergence(int n, int k, std::optional<int> l, const std::string& profile_spec,
                    const std::string& radii_spec, std::uint64_t seed, bool with_mc,
                    const OutputOptions& out) {
    using namespace cuspidal;
    const RadialProfile prof = parse_profile(n, profile_spec);
    EngineConfig cfg;
    cfg.seed = seed;
    if (!radii_spec.empty()) cfg.radii = parse_radii(radii_spec);

    const ParabolicClass cls = l ? ParabolicClass::rank1(n, k, *l) : ParabolicClass::rank0(n, k);
    const Prediction pred = predicted_verdict(cls, prof);
    const IntegralVerdict v = l ? integrate_rank1(n, k, *l, prof, cfg)
                                : integrate_rank0(n, k, prof, cfg);

    Report rep;
    rep.command = "convergence";
    rep.parameters.set("n", n).set("k", k);
    if (l) rep.parameters.set("l", *l);
    rep.parameters.set("rank", l ? 1 : 0);
    rep.parameters.set("profile", prof.label());

    Json row = Json::object();
    row.set("status", to_string(v.status));
    row.set("prediction", to_string(pred));
    if (v.status == VerdictStatus::Convergent) {
        row.set("value", v.value);
        row.set("error_estimate", v.error_estimate);
    }
    if (!std::isnan(v.growth_exponent)) {
        row.set("growth_exponent", v.growth_exponent);
        row.set("fit_r2", v.fit_r2);
    }
    rep.records("verdict").push(std::move(row));
    Json& sched = rep.records("schedule");
    for (const auto& p : v.schedule) {
        Json srow = Json::object();
        srow.set("radius", p.radius);
        srow.set("truncated_value", p.value);
        sched.push(std::move(srow));
    }
    if (with_mc && v.status == VerdictStatus::Convergent) {
        const McResult mc = l ? mc_rank1(n, k, *l, prof, cfg) : mc_rank0(n, k, prof, cfg);
        Json mrow = Json::object();
        mrow.set("value", mc.value);
        mrow.set("std_error", mc.std_error);
        mrow.set("samples", static_cast<long long>(mc.samples));
        rep.records("monte_carlo").push(std::move(mrow));
    }

    Json tol = Json::object();
    tol.set("panel_rel_tol", cfg.panel_rel_tol);
    tol.set("schedule_rel_tol", cfg.schedule_rel_tol);
    tol.set("shrink_ratio", cfg.shrink_ratio);
    attach_metadata(rep, seed, std::move(tol), out);
    const int ec = emit(rep, out);
    if (ec != kExitOk) return ec;

    if (v.status == VerdictStatus::Inconclusive) return kExitInconclusive;
    const bool mismatch =
        (pred == Prediction::MustConverge && v.status != VerdictStatus::Convergent) ||
        (pred == Prediction::MustDiverge && v.status != VerdictStatus::Divergent);
    return mismatch ? kExitMismatch : kExitOk;
}

int cmd_hc(int n, int k, const std::string& profile_spec, const std::string& s_spec,
           int decay_power, double limit_tol, const OutputOptions& out) {
    using namespace cuspidal;
    const RadialProfile prof = parse_profile(n, profile_spec);
    const std::vector<double> grid = parse_grid(s_spec);
    const HcConfig cfg;

    const DecayReport dec = decay_check(n, k, prof, grid, decay_power, cfg);

    Report rep;
    rep.command = "hc";
    rep.parameters.set("n", n).set("k", k).set("profile", prof.label());
    rep.parameters.set("s_grid", s_spec);
    rep.parameters.set("decay_power", decay_power);

    Json& rows = rep.records("series");
    for (const auto& p : dec.points) {
        Json row = Json::object();
        row.set("s", p.s);
        row.set("value", p.value);
        row.set("weighted", p.weighted);
        rows.push(std::move(row));
    }
    Json drow = Json::object();
    drow.set("argmax_s", dec.argmax_s);
    drow.set("max_weighted", dec.max_weighted);
    drow.set("bounded", dec.bounded);
    rep.records("decay").push(std::move(drow));

    bool limit_ok = true;
    if (n % 2 == 1 && dec.limit_checked) {
        const double v_last = dec.points.back().value;
        const double rel = std::abs(v_last - dec.limit_value) / std::abs(dec.limit_value);
        Json lrow = Json::object();
        lrow.set("limit_rhs", dec.limit_value);
        lrow.set("value_at_s_max", v_last);
        lrow.set("rel_diff", rel);
        lrow.set("gap_decreasing", dec.limit_gap_decreasing);
        rep.records("limit").push(std::move(lrow));
        if (dec.points.back().s >= 6.0) limit_ok = rel <= limit_tol && dec.limit_gap_decreasing;
    }

    Json tol = Json::object();
    tol.set("rel_tol", cfg.rel_tol);
    tol.set("limit_tol", limit_tol);
    attach_metadata(rep, 0, std::move(tol), out);
    const int ec = emit(rep, out);
    if (ec != kExitOk) return ec;
    return limit_ok && dec.bounded ? kExitOk : kExitMismatch;
}

int cmd_verify(int n_max, std::uint64_t seed, bool quick, const OutputOptions& out) {
    using namespace cuspidal;
    VerifyOptions opt;
    opt.n_max = n_max;
    opt.seed = seed;
    if (quick) {
        opt.cosh_samples = 100;
        opt.orbit_samples = 2;
        opt.run_integrals = false;
    }
    const auto results = run_verify(opt);

    Report rep;
    rep.command = "verify";
    rep.parameters.set("n_max", n_max).set("quick", quick);
    Json& rows = rep.records("families");
    bool all_pass = true;
    for (const auto& r : results) {
        all_pass = all_pass && r.pass;
        Json row = Json::object();
        row.set("family", r.name);
        row.set("pass", r.pass);
        row.set("detail", r.detail);
        rows.push(std::move(row));
        std::cerr << (r.pass ? "PASS " : "FAIL ") << r.name << " (" << r.detail << ")\n";
    }
    attach_metadata(rep, seed, Json::object(), out);
    const int ec = emit(rep, out);
    if (ec != kExitOk) return ec;
    if (!all_pass) {
        for (const auto& r : results)
            if (!r.pass) std::cerr << "failing family: " << r.name << "\n";
    }
    return all_pass ? kExitOk : kExitMismatch;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Minimal parabolic classification and cuspidal integral checks for X_n"};
    app.require_subcommand(1);
    app.fallthrough(); // global output options may follow the subcommand

    OutputOptions out;
    app.add_option("--format", out.format, "Output format: json or csv")->capture_default_str();
    app.add_option("--output", out.output, "Output file (json) or prefix (csv)");
    app.add_option("--stamp", out.stamp, "Optional timestamp string copied into metadata");

    int cat_n = 5, cat_rank = 1;
    auto* cat = app.add_subcommand("catalog", "Enumerate parabolic classes");
    cat->add_option("--n", cat_n, "Dimension n >= 3")->required()->check(CLI::Range(3, 64));
    cat->add_option("--rank", cat_rank, "Sigma-parabolic rank (0 or 1)")->check(CLI::Range(0, 1));

    int cv_n = 5, cv_k = 3;
    std::optional<int> cv_l;
    std::string cv_profile = "nu=-1.25", cv_radii;
    std::uint64_t cv_seed = 0x2545F4914F6CDD1Dull;
    bool cv_mc = false;
    auto* cv = app.add_subcommand("convergence", "Evaluate a cuspidal integral");
    cv->add_option("--n", cv_n)->required()->check(CLI::Range(3, 16));
    cv->add_option("--k", cv_k)->required();
    cv->add_option("--l", cv_l, "Rank-1 second index; omit for a rank-0 class");
    cv->add_option("--profile", cv_profile, "nu=<v> or m=<v>")->capture_default_str();
    cv->add_option("--radii", cv_radii, "Truncation schedule, list or a:b doubling");
    cv->add_option("--seed", cv_seed, "Monte-Carlo seed");
    cv->add_flag("--mc", cv_mc, "Attach a Monte-Carlo cross-check record");

    int hc_n = 3, hc_k = 2, hc_N = 2;
    std::string hc_profile = "nu=-1", hc_s = "-6:8:1";
    double hc_limit_tol = 0.02;
    auto* hc = app.add_subcommand("hc", "Harish-Chandra transform series");
    hc->add_option("--n", hc_n)->required()->check(CLI::Range(3, 16));
    hc->add_option("--k", hc_k)->required();
    hc->add_option("--profile", hc_profile)->capture_default_str();
    hc->add_option("--s", hc_s, "Grid a:b:step")->capture_default_str();
    hc->add_option("--decay-power", hc_N, "Weight power N in (1+|s|)^N")->capture_default_str();
    hc->add_option("--limit-tol", hc_limit_tol)->capture_default_str();

    int vf_nmax = 6;
    std::uint64_t vf_seed = 0x2545F4914F6CDD1Dull;
    bool vf_quick = false;
    auto* vf = app.add_subcommand("verify", "Run the invariant suite");
    vf->add_option("--n-max", vf_nmax)->check(CLI::Range(3, 16))->capture_default_str();
    vf->add_option("--seed", vf_seed)->capture_default_str();
    vf->add_flag("--quick", vf_quick, "Skip the schedule-based integral families");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
            return app.exit(e);
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (cat->parsed()) return cmd_catalog(cat_n, cat_rank, out);
        if (cv->parsed())
            return cmd_convergence(cv_n, cv_k, cv_l, cv_profile, cv_radii, cv_seed, cv_mc, out);
        if (hc->parsed()) return cmd_hc(hc_n, hc_k, hc_profile, hc_s, hc_N, hc_limit_tol, out);
        if (vf->parsed()) return cmd_verify(vf_nmax, vf_seed, vf_quick, out);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMismatch;
    }
    return kExitUsage;
}
