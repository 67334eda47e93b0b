// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Budgets are wall-clock and part of the criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <lw/constants.hpp>
#include <lw/covers.hpp>
#include <lw/functional.hpp>
#include <lw/harness.hpp>
#include <lw/inequalities.hpp>
#include <lw/linalg.hpp>
#include <lw/polytope.hpp>
#include <lw/rng.hpp>

using namespace lw;
using Clock = std::chrono::steady_clock;

static int g_failures = 0;

static double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

static void report(const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] %-28s %s\n", pass ? "PASS" : "FAIL", name.c_str(), detail.c_str());
    if (!pass) ++g_failures;
}

// all equal-weight covers of [n] with at most 4 subsets
static std::vector<IndexCover> small_covers(int n) {
    std::vector<IndexCover> out;
    for (int m = 1; m <= 4; ++m)
        for (int k = 1; k <= m; ++k) {
            std::vector<IndexCover> cs;
            try {
                cs = enumerate_equal_weight_covers(n, k, m);
            } catch (const std::invalid_argument&) {
                continue;
            }
            out.insert(out.end(), cs.begin(), cs.end());
        }
    return out;
}

static void criterion_duality() {
    const auto t0 = Clock::now();
    double worst = 0.0;
    Rng rng(0xd0a1);
    std::vector<std::vector<IndexCover>> covers = {small_covers(2), small_covers(3),
                                                   small_covers(4)};
    for (int i = 0; i < 1000; ++i) {
        const int n = 2 + i % 3;
        const Basis B = random_basis(rng, n, 20.0);
        for (const auto& c : covers[n - 2])
            worst = std::max(worst, bl_duality_residual(B, c));
    }
    const double dt = seconds_since(t0);
    char buf[160];
    std::snprintf(buf, sizeof buf, "max residual %.3e over 1000 bases (%.1fs)", worst, dt);
    report("duality", worst < 1e-8 && dt < 10.0, buf);
}

static void criterion_equality_cases() {
    const auto t0 = Clock::now();
    double worst = 0.0;
    auto track = [&](const VerificationReport& r) {
        worst = std::max(worst, std::abs(r.ratio - 1.0));
    };
    track(eval_affine_bt(standard_body(BodyKind::Cube, 3), Basis::canonical(3), lw_cover(3), 1));
    for (int n : {2, 3})
        track(eval_dual_bt(standard_body(BodyKind::Cross, n), Basis::canonical(n), lw_cover(n),
                           1));
    Rng rng(0xb0c5);
    for (int n : {2, 3, 4}) {
        Vec lo(n), hi(n);
        for (int i = 0; i < n; ++i) {
            const double s = 0.5 + rng.uniform();
            lo(i) = -0.3 * s;
            hi(i) = 1.1 * s;
        }
        const Polytope box = box_body(lo, hi);
        for (const auto& c : small_covers(n))
            for (int v = 1; v <= 4; ++v) track(eval_affine_bt(box, Basis::canonical(n), c, v));
    }
    const double dt = seconds_since(t0);
    char buf[160];
    std::snprintf(buf, sizeof buf, "max |ratio-1| = %.3e on extremal bodies (%.1fs)", worst, dt);
    report("equality-cases", worst <= 1e-9 && dt < 30.0, buf);
}

static void criterion_master_suite() {
    const auto t0 = Clock::now();
    SuiteConfig cfg;
    cfg.seed = 20260826;
    cfg.dims = {2, 3};
    cfg.bodies_per_dim = 50;
    cfg.include_mc = true;
    cfg.mc_samples = 200000;
    BatchReport low = run_suite(cfg);
    cfg.dims = {4};
    cfg.bodies_per_dim = 10;
    BatchReport high = run_suite(cfg);
    int fails = low.failures + high.failures;
    std::size_t records = low.records.size() + high.records.size();
    for (const auto* rep : {&low, &high})
        for (const auto& rec : rep->records)
            if (rec.status == "mc-resample") ++fails;
    const double dt = seconds_since(t0);
    char buf[160];
    std::snprintf(buf, sizeof buf, "%zu checks, %d failures, %d degenerate (%.1fs)", records,
                  fails, low.degenerate + high.degenerate, dt);
    report("master-suite", fails == 0 && dt < 300.0, buf);
}

static void criterion_reduction_chain() {
    const auto t0 = Clock::now();
    double worst = 0.0;
    auto rel = [](double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); };
    for (int n : {2, 3})
        for (int b = 0; b < 20; ++b) {
            const RandomInstance inst = random_instance(7000 + 64 * n + b, n, 30.0);
            const LogConcaveFn fe = make_exp_norm(inst.body);
            const IndexCover c = lw_cover(n);
            std::vector<int> g1;
            for (int i = 1; i < n; ++i) g1.push_back(i);
            const IndexCover rc = partition_cover(n, g1);
            for (int v = 1; v <= 4; ++v) {
                worst = std::max(worst, rel(eval_functional_bt(fe, inst.basis, c, v).ratio,
                                            eval_affine_bt(inst.body, inst.basis, c, v).ratio));
                worst = std::max(
                    worst, rel(eval_reverse_family(fe, inst.basis, c, ReverseKind::Powers, v).ratio,
                               eval_dual_bt(inst.body, inst.basis, c, v).ratio));
                worst = std::max(worst,
                                 rel(eval_functional_local(fe, inst.basis, rc, v).ratio,
                                     eval_local_lw(inst.body, inst.basis, rc, v).ratio));
            }
        }
    const double dt = seconds_since(t0);
    char buf[160];
    std::snprintf(buf, sizeof buf, "max relative gap %.3e over 40 bodies (%.1fs)", worst, dt);
    report("reduction-chain", worst <= 1e-9, buf);
}

static void criterion_marginal_product() {
    double worst = 0.0;
    for (int n = 2; n <= 5; ++n) {
        const VerificationReport r = bobkov_nazarov_check(n);
        const double bound = factorial(n) / std::pow(double(n), n);
        worst = std::max(worst, std::abs(r.lhs - bound) / bound);
        worst = std::max(worst, std::abs(r.ratio - 1.0));
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "max deviation %.3e from n!/n^n, n = 2..5", worst);
    report("marginal-product", worst <= 1e-9, buf);
}

static void criterion_berwald() {
    const std::vector<double> grid = {-0.5, -0.25, 0.5, 1.0, 2.0, 3.0, 5.0};
    Rng rng(0xbe49);
    double worst_mono = 0.0;
    int checked = 0;
    while (checked < 100) {
        const int pieces = 1 + int(rng.uniform() * 4);
        ConcavePL h;
        for (int i = 0; i < pieces; ++i) {
            h.a.push_back(rng.uniform() < 0.2 ? 0.0 : 0.1 + 2.0 * rng.uniform());
            h.b.push_back(rng.uniform() < 0.3 ? 0.0 : 2.0 * rng.uniform());
        }
        try {
            h.validate();
        } catch (const std::invalid_argument&) {
            continue;
        }
        BerwaldReport rep = berwald_monotone_check(h, grid);
        worst_mono = std::max(worst_mono, rep.max_violation / std::max(1.0, rep.values.front()));
        ++checked;
    }
    double worst_id = 0.0;
    const ConcavePL ident{{0.0}, {1.0}};
    for (double g : grid) worst_id = std::max(worst_id, std::abs(berwald_phi(ident, g) - 1.0));
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "monotonicity slack %.3e over 100 profiles, identity gap %.3e", worst_mono,
                  worst_id);
    report("berwald-monotone", worst_mono <= 1e-8 && worst_id <= 1e-10, buf);
}

static void criterion_gl_invariance() {
    double worst = 0.0;
    Rng rng(0x61aa);
    for (int n : {2, 3})
        for (int inst_idx = 0; inst_idx < 3; ++inst_idx) {
            const RandomInstance inst = random_instance(4100 + 16 * n + inst_idx, n, 30.0);
            const IndexCover c = lw_cover(n);
            const double base = eval_affine_bt(inst.body, inst.basis, c, 2).ratio;
            for (int t = 0; t < 20; ++t) {
                const Basis T = random_basis(rng, n, 15.0);
                const Polytope TK = apply_linear(inst.body, T.M);
                const Basis TB(T.M * inst.basis.M);
                const double r = eval_affine_bt(TK, TB, c, 2).ratio;
                worst = std::max(worst, std::abs(r - base) / base);
            }
        }
    char buf[160];
    std::snprintf(buf, sizeof buf, "max relative drift %.3e under 120 linear maps", worst);
    report("gl-invariance", worst <= 1e-6, buf);
}

static void criterion_mc_volume() {
    const auto t0 = Clock::now();
    int bad = 0;
    double worst_pull = 0.0;
    for (int n : {2, 3})
        for (int b = 0; b < 5; ++b) {
            const RandomInstance inst = random_instance(9200 + 32 * n + b, n, 30.0);
            const double exact = volume(inst.body);
            const McEstimate est = mc_volume(inst.body, 777 + b, 1000000);
            const double pull = std::abs(est.estimate - exact) / est.std_error;
            worst_pull = std::max(worst_pull, pull);
            if (pull > 3.0) ++bad;
        }
    const double dt = seconds_since(t0);
    char buf[160];
    std::snprintf(buf, sizeof buf, "worst pull %.2f sigma over 10 bodies at 1e6 samples (%.1fs)",
                  worst_pull, dt);
    report("mc-volume", bad == 0, buf);
}

int main() {
    criterion_duality();
    criterion_equality_cases();
    criterion_master_suite();
    criterion_reduction_chain();
    criterion_marginal_product();
    criterion_berwald();
    criterion_gl_invariance();
    criterion_mc_volume();
    if (g_failures == 0) {
        std::printf("acceptance: all 8 criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criteria failed\n", g_failures);
    return 1;
}
