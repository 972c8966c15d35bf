// soc: batch experiment runner for norm-controlled power-series functor
// calculus. Each subcommand reads a JSON config, runs one experiment, and
// writes a CSV artifact plus a run manifest. Identical (config, seed) pairs
// produce byte-identical CSV output.
//
// Exit codes: 0 success, 2 violated precondition or invalid config,
// 3 resource cap exceeded, 1 anything else.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "soc/soc.hpp"

namespace {

constexpr const char* kToolVersion = "0.1.0";

using soc::json;

struct RunContext {
    std::string subcommand;
    json config;
    std::string config_text;
    std::string out_path;
    std::uint64_t seed = 0;
    // CLI overrides
    std::string convention_flag;
    double kpl_flag = -1.0;
};

soc::SumConvention parse_convention(const std::string& s) {
    if (s == "layer_sum") return soc::SumConvention::layer_sum;
    if (s == "layer_max") return soc::SumConvention::layer_max;
    throw soc::validation_error("unknown convention '" + s + "' (layer_sum|layer_max)");
}

soc::TowerConfig tower_config_from(const json& params, const RunContext& ctx) {
    soc::TowerConfig cfg;
    cfg.n_max = params.value("n_max", 16);
    cfg.radius_window = params.value("radius_window", 6);
    std::string conv = params.value("convention", std::string("layer_sum"));
    if (!ctx.convention_flag.empty()) conv = ctx.convention_flag;
    cfg.convention = parse_convention(conv);
    cfg.tol = params.value("tol", 1e-12);
    // radius_estimate only needs the window; keep n_max >= window for validity.
    if (cfg.n_max < cfg.radius_window) cfg.n_max = cfg.radius_window;
    return cfg;
}

soc::Phi phi_from(const json& j) {
    soc::require_keys(j, {"kind"}, {"c", "coeffs"}, "phi");
    soc::Phi phi;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "linear") {
        phi.kind = soc::PhiKind::linear;
    } else if (kind == "exponential" || kind == "exp") {
        phi.kind = soc::PhiKind::exponential;
    } else if (kind == "polynomial") {
        phi.kind = soc::PhiKind::polynomial;
    } else {
        throw soc::validation_error("phi: unknown kind '" + kind + "'");
    }
    phi.c = j.value("c", 1.0);
    if (j.contains("coeffs")) phi.coeffs = j.at("coeffs").get<std::vector<double>>();
    return phi;
}

std::vector<soc::DenseMatrix> inputs_from(const json& config) {
    std::vector<soc::DenseMatrix> inputs;
    for (const json& m : config.at("inputs")) inputs.push_back(soc::matrix_from_json(m));
    return inputs;
}

// --- subcommand runners; each returns (csv text, summary json) -------------

struct RunResult {
    std::string csv;
    json summary;
};

RunResult run_radius(const RunContext& ctx) {
    const json params = ctx.config.value("params", json::object());
    soc::require_keys(params, {}, {"n_max", "radius_window", "convention", "tol"}, "params");
    const auto f = soc::functor_from_json(ctx.config.at("functor"));
    const auto cfg = tower_config_from(params, ctx);
    const auto est = soc::radius_estimate(f, cfg);

    soc::CsvWriter csv({"n", "abs_coeff", "root", "estimate"});
    for (int n = 1; n <= f.truncation(); ++n) {
        const double c = f.coeff(n);
        if (c == 0.0) continue;
        const double root = std::exp(std::log(std::abs(c)) / n);
        csv.row(n, std::abs(c), root, soc::per_degree_radius(c, n));
    }
    json summary;
    summary["estimate"] = std::isinf(est.estimate) ? json("inf") : json(est.estimate);
    summary["eventually_zero"] = est.eventually_zero;
    return {csv.str(), summary};
}

RunResult run_remainder(const RunContext& ctx) {
    const json params = ctx.config.at("params");
    soc::require_keys(params, {"r"}, {"n_max", "radius_window", "convention", "tol"}, "params");
    const auto f = soc::functor_from_json(ctx.config.at("functor"));
    const auto cfg = tower_config_from(params, ctx);
    const double r = params.at("r").get<double>();

    soc::CsvWriter csv({"n", "remainder"});
    bool beyond = false;
    for (int n = 0; n <= cfg.n_max; ++n) {
        const auto rem = soc::remainder_norm(f, n, r, cfg);
        beyond = beyond || rem.beyond_radius;
        csv.row(n, rem.value);
    }
    json summary;
    summary["beyond_radius"] = beyond;
    summary["r"] = r;
    return {csv.str(), summary};
}

RunResult run_convergence(const RunContext& ctx) {
    const json params = ctx.config.at("params");
    soc::require_keys(params, {"s"}, {"n_max", "radius_window", "convention", "tol"}, "params");
    const auto f = soc::functor_from_json(ctx.config.at("functor"));
    const auto a = soc::matrix_from_json(ctx.config.at("matrix"));
    const auto cfg = tower_config_from(params, ctx);
    const double s = params.at("s").get<double>();
    const auto table = soc::convergence_experiment(f, a, s, cfg);

    soc::CsvWriter csv({"n", "remainder", "bound", "ratio"});
    for (const auto& row : table.rows) csv.row(row.n, row.remainder, row.bound, row.ratio);
    json summary;
    summary["c_s"] = table.c_s;
    summary["spectral_size"] = table.spectral_size;
    summary["s"] = table.s;
    return {csv.str(), summary};
}

RunResult run_cross_effect(const RunContext& ctx) {
    const json params = ctx.config.value("params", json::object());
    soc::require_keys(params, {}, {"n_max", "tol"}, "params");
    const auto f = soc::functor_from_json(ctx.config.at("functor"));
    const auto inputs = inputs_from(ctx.config);
    const int n_max = params.value("n_max", f.truncation());
    const double tol = params.value("tol", 1e-9);
    const auto report = soc::build_cross_effect_report(f, inputs, n_max, tol);

    soc::CsvWriter csv({"degree", "dim", "norm", "radius", "negligible"});
    for (const auto& d : report.per_degree) {
        csv.row(d.degree, d.dim, d.norm, d.radius, d.radius <= tol);
    }
    json summary;
    summary["arity"] = report.arity;
    summary["total_norm"] = report.total_norm;
    summary["negligible"] = report.negligible;
    return {csv.str(), summary};
}

RunResult run_plethysm(const RunContext& ctx) {
    const json params = ctx.config.at("params");
    soc::require_keys(params, {"outer", "inner"}, {"n_max"}, "params");
    const auto a = soc::symseq_from_json(params.at("outer"));
    const auto b = soc::symseq_from_json(params.at("inner"));
    const int n_max = params.value("n_max", std::min(a.max_degree, soc::kPartitionCap));
    const auto out = soc::plethysm(a, b, n_max);

    soc::CsvWriter csv({"degree", "dim", "weight"});
    for (int n = 0; n <= out.max_degree; ++n) csv.row(n, out.at(n).dim, out.at(n).weight);
    json summary;
    summary["max_degree"] = out.max_degree;
    summary["reduced"] = out.reduced;
    return {csv.str(), summary};
}

RunResult run_chain_rule(const RunContext& ctx) {
    const json params = ctx.config.at("params");
    soc::require_keys(params, {"inner"}, {"n_max"}, "params");
    const auto f = soc::functor_from_json(ctx.config.at("functor"));
    const auto g = soc::functor_from_json(params.at("inner"));
    const int n_max = params.value("n_max", 8);
    const auto composed = soc::compose_coeffs(f, g, n_max);
    const auto oracle = soc::scalar_compose_oracle(f.coeffs, g.coeffs, n_max);

    soc::CsvWriter csv({"n", "coeff", "oracle", "abs_diff"});
    double max_diff = 0.0;
    for (int n = 0; n <= n_max; ++n) {
        const double diff = std::abs(composed.coeff(n) - oracle[static_cast<std::size_t>(n)]);
        max_diff = std::max(max_diff, diff);
        csv.row(n, composed.coeff(n), oracle[static_cast<std::size_t>(n)], diff);
    }
    json summary;
    summary["max_abs_diff"] = max_diff;
    return {csv.str(), summary};
}

RunResult run_excision(const RunContext& ctx) {
    const json params = ctx.config.at("params");
    soc::require_keys(params, {"n"}, {"samples", "dim", "scale", "tol", "degree_cap"}, "params");
    const auto f = soc::functor_from_json(ctx.config.at("functor"));
    const int n = params.at("n").get<int>();
    const int samples = params.value("samples", 10);
    const std::size_t dim = params.value("dim", 2);
    const double scl = params.value("scale", 0.8);
    const double tol = params.value("tol", 1e-9);
    const int degree_cap = params.value("degree_cap", 0);

    soc::Rng rng(ctx.seed == 0 ? 0x50c0ffee : ctx.seed);
    std::vector<std::vector<soc::DenseMatrix>> tuples;
    for (int s = 0; s < samples; ++s) {
        std::vector<soc::DenseMatrix> tuple;
        for (int i = 0; i <= n; ++i) tuple.push_back(soc::random_normal_matrix(rng, dim, scl));
        tuples.push_back(std::move(tuple));
    }
    const auto report = soc::excision_check(f, n, tuples, tol, degree_cap);

    soc::CsvWriter csv(
        {"sample", "max_radius", "max_norm", "threshold", "negligible", "norm_bounded", "agree"});
    for (const auto& s : report.samples) {
        csv.row(s.index, s.max_radius, s.max_norm, s.norm_threshold, s.negligible, s.norm_bounded,
                s.agree);
    }
    json summary;
    summary["equivalence_holds"] = report.equivalence_holds;
    summary["degree_cap"] = report.degree_cap;
    return {csv.str(), summary};
}

RunResult run_stability(const RunContext& ctx) {
    const json params = ctx.config.at("params");
    soc::require_keys(params, {"inner"}, {"n_max", "kpl", "radius_window"}, "params");
    const auto f = soc::functor_from_json(ctx.config.at("functor"));
    const auto g = soc::functor_from_json(params.at("inner"));
    const int n_max = params.value("n_max", 12);
    double kpl = params.value("kpl", 1.0);
    if (ctx.kpl_flag > 0.0) kpl = ctx.kpl_flag;

    const auto pf = soc::fit_growth_profile(f);
    const auto pg = soc::fit_growth_profile(g);
    const double gamma = soc::composition_gamma(pf, pg, kpl);
    const auto composed = soc::compose_coeffs(f, g, n_max);

    soc::CsvWriter csv({"n", "gamma", "coeff", "bound", "ratio"});
    double c_prime = 0.0;
    for (int n = 0; n <= n_max; ++n) {
        const double coeff = std::abs(composed.coeff(n));
        const double bound = std::pow(gamma, n);
        const double ratio = bound > 0.0 ? coeff / bound : 0.0;
        c_prime = std::max(c_prime, ratio);
        csv.row(n, gamma, coeff, bound, ratio);
    }
    soc::TowerConfig cfg;
    cfg.radius_window = params.value("radius_window", 6);
    cfg.n_max = std::max(n_max, cfg.radius_window);
    const auto est = soc::radius_estimate(composed, cfg);
    json summary;
    summary["gamma"] = gamma;
    summary["c_prime"] = c_prime;
    summary["radius_estimate"] =
        std::isinf(est.estimate) ? json("inf") : json(est.estimate);
    summary["radius_lower_bound"] = 1.0 / gamma;
    summary["outer_profile"] = {{"C", pf.C}, {"rho", pf.rho}};
    summary["inner_profile"] = {{"C", pg.C}, {"rho", pg.rho}};
    return {csv.str(), summary};
}

RunResult run_admissibility(const RunContext& ctx) {
    const json params = ctx.config.at("params");
    soc::require_keys(params, {"phi"}, {"tol", "samples", "dim", "scale"}, "params");
    const auto f = soc::functor_from_json(ctx.config.at("functor"));
    const auto phi = phi_from(params.at("phi"));
    const double tol = params.value("tol", 1e-9);

    std::vector<soc::DenseMatrix> inputs;
    if (ctx.config.contains("inputs")) {
        inputs = inputs_from(ctx.config);
    } else {
        soc::Rng rng(ctx.seed == 0 ? 0xad1555u : ctx.seed);
        const int samples = params.value("samples", 5);
        const std::size_t dim = params.value("dim", 3);
        const double scl = params.value("scale", 0.8);
        for (int s = 0; s < samples; ++s) inputs.push_back(soc::random_normal_matrix(rng, dim, scl));
    }
    const auto report = soc::admissibility_check(f, inputs, phi, tol);

    soc::CsvWriter csv({"sample", "spectral_size", "lhs", "rhs", "pass"});
    for (const auto& s : report.samples) csv.row(s.id, s.spectral_size, s.lhs, s.rhs, s.pass);
    json summary;
    summary["all_pass"] = report.all_pass;
    summary["phi"] = soc::to_string(report.phi);
    return {csv.str(), summary};
}

RunResult run_reconstruct(const RunContext& ctx) {
    const json params = ctx.config.at("params");
    soc::require_keys(params, {"n_max"}, {"probes"}, "params");
    const auto f = soc::functor_from_json(ctx.config.at("functor"));
    const int n_max = params.at("n_max").get<int>();
    std::vector<double> probes;
    if (params.contains("probes")) {
        probes = params.at("probes").get<std::vector<double>>();
    } else {
        for (int i = 0; i <= n_max; ++i) probes.push_back(0.1 * (i + 1));
    }
    const auto rec = soc::reconstruct_roundtrip(f, probes, n_max);

    soc::CsvWriter csv({"n", "original", "recovered", "abs_error"});
    double max_err = 0.0;
    for (int n = 0; n <= n_max; ++n) {
        const double err = std::abs(rec.coeff(n) - f.coeff(n));
        max_err = std::max(max_err, err);
        csv.row(n, f.coeff(n), rec.coeff(n), err);
    }
    json summary;
    summary["max_abs_error"] = max_err;
    return {csv.str(), summary};
}

// ---------------------------------------------------------------------------

RunResult dispatch(const RunContext& ctx) {
    if (ctx.subcommand == "radius") return run_radius(ctx);
    if (ctx.subcommand == "remainder") return run_remainder(ctx);
    if (ctx.subcommand == "convergence") return run_convergence(ctx);
    if (ctx.subcommand == "cross-effect") return run_cross_effect(ctx);
    if (ctx.subcommand == "plethysm") return run_plethysm(ctx);
    if (ctx.subcommand == "chain-rule") return run_chain_rule(ctx);
    if (ctx.subcommand == "excision") return run_excision(ctx);
    if (ctx.subcommand == "stability") return run_stability(ctx);
    if (ctx.subcommand == "admissibility") return run_admissibility(ctx);
    if (ctx.subcommand == "reconstruct") return run_reconstruct(ctx);
    throw soc::validation_error("unknown subcommand '" + ctx.subcommand + "'");
}

int run(RunContext& ctx, const std::string& config_path) {
    const auto t0 = std::chrono::steady_clock::now();
    ctx.config_text = soc::read_file(config_path);
    ctx.config = json::parse(ctx.config_text);
    soc::require_keys(ctx.config,
                      {"subcommand"},
                      {"functor", "matrix", "inputs", "params", "seed", "output_path"},
                      "config");
    const std::string declared = ctx.config.at("subcommand").get<std::string>();
    if (declared != ctx.subcommand) {
        throw soc::validation_error("config declares subcommand '" + declared +
                                    "' but '" + ctx.subcommand + "' was invoked");
    }
    if (ctx.seed == 0) ctx.seed = ctx.config.value("seed", std::uint64_t{0});
    if (ctx.out_path.empty()) {
        ctx.out_path = ctx.config.value("output_path", "soc_" + ctx.subcommand + ".csv");
    }

    const RunResult result = dispatch(ctx);
    soc::write_file(ctx.out_path, result.csv);

    const auto t1 = std::chrono::steady_clock::now();
    json manifest;
    manifest["tool"] = "soc";
    manifest["version"] = kToolVersion;
    manifest["subcommand"] = ctx.subcommand;
    manifest["config_hash"] = soc::fnv1a_hex(ctx.config_text);
    manifest["seed"] = ctx.seed;
    manifest["output"] = ctx.out_path;
    manifest["wall_time_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    manifest["summary"] = result.summary;
    soc::write_file(ctx.out_path + ".manifest.json", manifest.dump(2) + "\n");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"norm-controlled power-series functor calculus experiments"};
    app.require_subcommand(1);

    const std::vector<std::string> names = {
        "radius",   "remainder", "convergence",  "cross-effect", "plethysm",
        "chain-rule", "excision", "stability", "admissibility", "reconstruct"};

    RunContext ctx;
    std::string config_path;
    for (const std::string& name : names) {
        CLI::App* sub = app.add_subcommand(name, name + " experiment");
        sub->add_option("--config", config_path, "experiment config JSON")->required();
        sub->add_option("--out", ctx.out_path, "output CSV path (overrides config)");
        sub->add_option("--seed", ctx.seed, "seed override");
        sub->add_option("--convention", ctx.convention_flag, "layer_sum|layer_max override");
        sub->add_option("--kpl", ctx.kpl_flag, "plethysm constant override");
        sub->callback([&ctx, name]() { ctx.subcommand = name; });
    }

    CLI11_PARSE(app, argc, argv);

    try {
        return run(ctx, config_path);
    } catch (const soc::capacity_error& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return 3;
    } catch (const soc::contract_violation& e) {
        std::cerr << "precondition violated: " << e.what() << "\n";
        return 2;
    } catch (const soc::validation_error& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const soc::conditioning_error& e) {
        std::cerr << "conditioning error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "invalid config JSON: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
