#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <lw/harness.hpp>
#include <lw/io.hpp>

namespace {

using lw::json;

lw::Basis load_basis(const std::string& spec, int n) {
    if (spec == "canonical" || spec.empty()) return lw::Basis::canonical(n);
    return lw::basis_from_json(lw::load_json_file(spec));
}

lw::IndexCover load_cover(const std::string& spec, int n) {
    if (spec.size() > 5 && spec.substr(spec.size() - 5) == ".json")
        return lw::cover_from_json(lw::load_json_file(spec));
    return lw::named_cover(spec, n);
}

lw::Polytope load_body(const std::string& spec) {
    if (spec.size() > 5 && spec.substr(spec.size() - 5) == ".json")
        return lw::body_from_json(lw::load_json_file(spec));
    return lw::named_body(spec);
}

// statement id -> evaluator; accepts the long names and short aliases
lw::VerificationReport run_statement(const std::string& stmt, int variant,
                                     const lw::Polytope& K, const lw::Basis& B,
                                     const lw::IndexCover& c, std::uint64_t seed,
                                     std::uint64_t mc_samples) {
    auto is = [&](const char* a, const char* b = "") { return stmt == a || stmt == b; };
    if (is("affine-bt", "thm1.4")) return lw::eval_affine_bt(K, B, c, variant);
    if (is("local-lw", "thm1.5")) return lw::eval_local_lw(K, B, c, variant);
    if (is("dual-bt", "thm1.6")) return lw::eval_dual_bt(K, B, c, variant);
    if (is("restricted-dual", "thm1.7")) return lw::eval_restricted_dual(K, B, c, variant, false);
    if (is("restricted-dual-centered", "thm5.4"))
        return lw::eval_restricted_dual(K, B, c, variant, true);
    if (is("gn", "thm4.2")) return lw::eval_gn(lw::make_indicator(K), B, c, variant);
    if (is("gn-cone")) return lw::eval_gn(lw::make_cone(K), B, c, variant);
    // the remaining statements all act on the norm-exponential of K,
    // which needs the origin interior to K
    const lw::LogConcaveFn fe = lw::make_exp_norm(K);
    if (is("functional-bt", "thm4.3")) return lw::eval_functional_bt(fe, B, c, variant);
    if (is("functional-local", "thm4.5")) return lw::eval_functional_local(fe, B, c, variant);
    if (is("reverse-powers", "thm5.1"))
        return lw::eval_reverse_family(fe, B, c, lw::ReverseKind::Powers, variant);
    if (is("reverse-restrict", "thm5.2"))
        return lw::eval_reverse_family(fe, B, c, lw::ReverseKind::NoPowers, variant);
    if (is("reverse-centered", "thm5.3"))
        return lw::eval_reverse_family(fe, B, c, lw::ReverseKind::Centered, variant);
    if (is("min-corollary", "cor4.4")) {
        std::vector<lw::LogConcaveFn> fs;
        for (int j = 0; j < c.m(); ++j)
            fs.push_back(lw::project_fn(fe, lw::ineqdetail::variant_subspace(B, c, j, variant,
                                                                            false)));
        return lw::eval_min_corollary(fs, B, c, variant, seed, mc_samples);
    }
    throw std::invalid_argument("unknown statement '" + stmt + "'");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"affine Loomis-Whitney / Bollobas-Thomason verification toolkit"};
    app.require_subcommand(1);

    bool as_json = false;
    std::uint64_t seed = 1;
    int threads = 1;
    double tol = 1e-6;
    std::uint64_t mc_samples = 1000000;
    app.add_flag("--json", as_json, "machine-readable JSON output");
    app.add_option("--seed", seed, "seed for all stochastic output");
    app.add_option("--threads", threads, "worker cap (reserved)");
    app.add_option("--tol", tol, "verification tolerance");
    app.add_option("--mc-samples", mc_samples, "Monte-Carlo sample count");

    // constants
    auto* cmd_constants = app.add_subcommand("constants", "BL constants for a basis and cover");
    std::string opt_basis = "canonical", opt_cover = "lw", opt_body = "cube3", opt_stmt;
    int opt_n = 3, opt_variant = 1;
    bool opt_centered = false;
    cmd_constants->add_option("--basis", opt_basis, "basis JSON file or 'canonical'");
    cmd_constants->add_option("--cover", opt_cover, "cover JSON file or named cover");
    cmd_constants->add_option("--n", opt_n, "ambient dimension (for named inputs)");

    // verify
    auto* cmd_verify = app.add_subcommand("verify", "verify one statement on one instance");
    cmd_verify->add_option("--statement", opt_stmt, "statement id")->required();
    cmd_verify->add_option("--variant", opt_variant, "variant 1-4");
    cmd_verify->add_option("--body", opt_body, "body JSON file or named body");
    cmd_verify->add_option("--basis", opt_basis, "basis JSON file or 'canonical'");
    cmd_verify->add_option("--cover", opt_cover, "cover JSON file or named cover");

    // suite
    auto* cmd_suite = app.add_subcommand("suite", "batch verification across the catalog");
    std::string opt_config;
    cmd_suite->add_option("--config", opt_config, "suite config JSON file");

    // covers
    auto* cmd_covers = app.add_subcommand("covers", "enumerate equal-weight uniform covers");
    int opt_k = 2, opt_m = 3;
    cmd_covers->add_option("--n", opt_n, "ground dimension")->required();
    cmd_covers->add_option("--k", opt_k, "memberships per index");
    cmd_covers->add_option("--m", opt_m, "number of subsets");

    // oracle
    auto* cmd_oracle = app.add_subcommand("oracle", "Monte-Carlo volume versus exact");
    cmd_oracle->add_option("--body", opt_body, "body JSON file or named body");

    // tightness
    auto* cmd_tight = app.add_subcommand("tightness", "local search minimizing the ratio");
    int opt_restarts = 20, opt_iters = 60;
    cmd_tight->add_option("--statement", opt_stmt, "statement id")->required();
    cmd_tight->add_option("--variant", opt_variant, "variant 1-4");
    cmd_tight->add_option("--n", opt_n, "ambient dimension");
    cmd_tight->add_option("--cover", opt_cover, "cover JSON file or named cover");
    cmd_tight->add_option("--restarts", opt_restarts, "search restarts");
    cmd_tight->add_option("--iters", opt_iters, "iterations per restart");
    (void)opt_centered;

    // let the global flags (--json, --seed, ...) appear after a subcommand
    for (auto* sc : app.get_subcommands([](const CLI::App*) { return true; }))
        sc->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_constants->parsed()) {
            const lw::IndexCover c = load_cover(opt_cover, opt_n);
            const lw::Basis B = load_basis(opt_basis, c.n);
            json out = {{"n", c.n},
                        {"bl1", lw::bl1(B, c)},
                        {"bl2", lw::bl2(B, c)},
                        {"p", c.p().value()}};
            if (c.covers_all()) out["duality_residual"] = lw::bl_duality_residual(B, c);
            std::cout << out.dump(2) << "\n";
            return 0;
        }
        if (cmd_verify->parsed()) {
            const lw::Polytope K = load_body(opt_body);
            const lw::IndexCover c = load_cover(opt_cover, K.dim);
            const lw::Basis B = load_basis(opt_basis, K.dim);
            const auto r = run_statement(opt_stmt, opt_variant, K, B, c, seed, mc_samples);
            if (as_json)
                std::cout << lw::report_to_json(r).dump(2) << "\n";
            else
                std::cout << r.statement << " v" << r.variant << "  ratio " << r.ratio
                          << (r.degenerate ? "  (degenerate)" : "") << "\n";
            const double band = r.mc_sigma > 0 ? 3.0 * r.mc_sigma / std::max(r.lhs, 1e-300) : 0.0;
            return (r.degenerate || r.ratio >= 1.0 - tol - band) ? 0 : 2;
        }
        if (cmd_suite->parsed()) {
            lw::SuiteConfig cfg;
            cfg.seed = seed;
            cfg.tol = tol;
            cfg.mc_samples = mc_samples;
            if (!opt_config.empty()) {
                const json j = lw::load_json_file(opt_config);
                cfg.seed = j.value("seed", cfg.seed);
                cfg.dims = j.value("dims", cfg.dims);
                cfg.bodies_per_dim = j.value("bodies_per_dim", cfg.bodies_per_dim);
                cfg.cond_cap = j.value("basis_condition_cap", cfg.cond_cap);
                cfg.tol = j.value("tol", cfg.tol);
                cfg.include_mc = j.value("include_mc", cfg.include_mc);
                cfg.mc_samples = j.value("mc_samples", cfg.mc_samples);
            }
            const auto rep = lw::run_suite(cfg);
            json minr = json::object();
            for (const auto& [k, v] : rep.min_ratio) minr[k] = v;
            json out = {{"records", rep.records.size()},
                        {"failures", rep.failures},
                        {"degenerate", rep.degenerate},
                        {"digest", rep.digest},
                        {"min_ratio", minr}};
            if (as_json) {
                json lines = json::array();
                for (const auto& rec : rep.records) {
                    json r = lw::report_to_json(rec.report);
                    r["instance_seed"] = rec.instance_seed;
                    r["n"] = rec.n;
                    r["status"] = rec.status;
                    lines.push_back(r);
                }
                out["reports"] = lines;
            }
            std::cout << out.dump(2) << "\n";
            return rep.failures == 0 ? 0 : 2;
        }
        if (cmd_covers->parsed()) {
            json out = json::array();
            for (const auto& c : lw::enumerate_equal_weight_covers(opt_n, opt_k, opt_m))
                out.push_back(lw::cover_to_json(c));
            std::cout << out.dump(2) << "\n";
            return 0;
        }
        if (cmd_oracle->parsed()) {
            const lw::Polytope K = load_body(opt_body);
            const double exact = lw::volume(K);
            const auto mc = lw::mc_volume(K, seed, mc_samples);
            json out = {{"exact", exact},
                        {"mc", mc.estimate},
                        {"std_error", mc.std_error},
                        {"sigmas", std::abs(mc.estimate - exact) / std::max(mc.std_error, 1e-300)}};
            std::cout << out.dump(2) << "\n";
            return 0;
        }
        if (cmd_tight->parsed()) {
            const lw::IndexCover c = load_cover(opt_cover, opt_n);
            const std::string stmt = opt_stmt;
            const int variant = opt_variant;
            const std::uint64_t s2 = seed, ms = mc_samples;
            auto eval = [&](const lw::Polytope& K, const lw::Basis& B) {
                return run_statement(stmt, variant, K, B, c, s2, ms);
            };
            const auto res = lw::tightness_search(eval, opt_n, seed, opt_restarts, opt_iters, tol);
            json out = {{"best_ratio", res.best_ratio},
                        {"suspect", res.suspect},
                        {"trace", res.trace},
                        {"body", lw::body_to_json(res.body)},
                        {"basis", lw::basis_to_json(res.basis)}};
            std::cout << out.dump(2) << "\n";
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
