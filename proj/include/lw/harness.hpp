#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "lw/functional.hpp"
#include "lw/inequalities.hpp"
#include "lw/polytope.hpp"
#include "lw/rng.hpp"

namespace lw {

struct RandomInstance {
    std::uint64_t seed = 0;
    int n = 0;
    Polytope body;
    Basis basis{Mat::Identity(1, 1)};
    std::vector<IndexCover> covers;            // covers of [n]
    std::vector<IndexCover> restricted_covers; // covers of S, |S| < n
};

inline Basis random_basis(Rng& rng, int n, double cond_cap = 50.0) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        Mat M(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) M(i, j) = rng.normal();
        Eigen::JacobiSVD<Mat> svd(M);
        const double cond = svd.singularValues()(0) / svd.singularValues()(n - 1);
        if (cond <= cond_cap) return Basis(M);
    }
    throw std::runtime_error("random_basis: condition cap unreachable");
}

inline RandomInstance random_instance(std::uint64_t seed, int n, double cond_cap = 50.0) {
    if (n < 2 || n > 6) throw std::invalid_argument("random_instance: n must be in [2, 6]");
    RandomInstance inst;
    inst.seed = seed;
    inst.n = n;
    inst.body = random_polytope(seed, n, 2 * n + 6, RandomShape::Gaussian, true);
    Rng rng(Rng(seed).derive(0xba5e));
    inst.basis = random_basis(rng, n, cond_cap);
    inst.covers.push_back(lw_cover(n));
    inst.covers.push_back(partition_cover(n));
    if (n <= 4)
        for (const auto& c : enumerate_equal_weight_covers(n, 2, 3)) {
            inst.covers.push_back(c);
            if (inst.covers.size() >= 5) break;
        }
    std::vector<int> g1;
    for (int i = 1; i < n; ++i) g1.push_back(i);
    inst.restricted_covers.push_back(partition_cover(n, g1));
    if (n >= 3) inst.restricted_covers.push_back(partition_cover(n, {1, 2}));
    return inst;
}

struct SuiteConfig {
    std::uint64_t seed = 1;
    std::vector<int> dims = {2, 3};
    int bodies_per_dim = 50;
    double cond_cap = 50.0;
    double tol = 1e-6;
    bool include_mc = false; // Monte-Carlo-backed statements (slower)
    std::uint64_t mc_samples = 200000;
};

struct BatchRecord {
    std::uint64_t instance_seed = 0;
    int n = 0;
    VerificationReport report;
    std::string status; // "ok" | "degenerate" | "mc-resample" | "fail"
};

struct BatchReport {
    std::vector<BatchRecord> records;
    std::map<std::string, double> min_ratio;
    int failures = 0;
    int degenerate = 0;
    std::uint64_t digest = 0;
};

namespace harnessdetail {

inline void push(BatchReport& out, const RandomInstance& inst, VerificationReport r,
                 double tol) {
    BatchRecord rec;
    rec.instance_seed = inst.seed;
    rec.n = inst.n;
    if (r.degenerate) {
        rec.status = "degenerate";
        out.degenerate++;
    } else if (r.mc_sigma > 0.0) {
        const double band = 3.0 * r.mc_sigma / std::max(r.lhs, 1e-300);
        rec.status = (r.ratio >= 1.0 - tol - band) ? "ok" : "mc-resample";
    } else {
        rec.status = (r.ratio >= 1.0 - tol) ? "ok" : "fail";
    }
    if (rec.status == "fail") out.failures++;
    if (!r.degenerate) {
        auto it = out.min_ratio.find(r.statement);
        if (it == out.min_ratio.end() || r.ratio < it->second) out.min_ratio[r.statement] = r.ratio;
    }
    rec.report = std::move(r);
    out.records.push_back(std::move(rec));
}

} // namespace harnessdetail

/// Evaluate the full statement catalog on one instance.
inline void run_catalog(BatchReport& out, const RandomInstance& inst, const SuiteConfig& cfg) {
    const Polytope& K = inst.body;
    const Basis& B = inst.basis;
    const LogConcaveFn fe = make_exp_norm(K);
    const LogConcaveFn fc = make_cone(K);
    const LogConcaveFn fi = make_indicator(K);
    for (std::size_t ci = 0; ci < inst.covers.size(); ++ci) {
        const auto& c = inst.covers[ci];
        for (int v = 1; v <= 4; ++v) {
            harnessdetail::push(out, inst, eval_affine_bt(K, B, c, v), cfg.tol);
            harnessdetail::push(out, inst, eval_dual_bt(K, B, c, v), cfg.tol);
            harnessdetail::push(out, inst, eval_functional_bt(fe, B, c, v), cfg.tol);
            harnessdetail::push(out, inst, eval_functional_bt(fc, B, c, v), cfg.tol);
            if (c.p() != Rational{1}) {
                harnessdetail::push(out, inst, eval_gn(fc, B, c, v), cfg.tol);
                harnessdetail::push(out, inst, eval_gn(fi, B, c, v), cfg.tol);
            }
            harnessdetail::push(out, inst, eval_reverse_family(fe, B, c, ReverseKind::Powers, v),
                                cfg.tol);
            harnessdetail::push(out, inst, eval_reverse_family(fe, B, c, ReverseKind::NoPowers, v),
                                cfg.tol);
            harnessdetail::push(out, inst, eval_reverse_family(fc, B, c, ReverseKind::NoPowers, v),
                                cfg.tol);
            bool equal_weights = true;
            for (const auto& w : c.weights) equal_weights &= (w == c.weights[0]);
            if (equal_weights)
                harnessdetail::push(out, inst,
                                    eval_reverse_family(fe, B, c, ReverseKind::Centered, v),
                                    cfg.tol);
            if (cfg.include_mc && ci == 0) { // MC-backed statement once per instance
                std::vector<LogConcaveFn> fs;
                for (int j = 0; j < c.m(); ++j) {
                    const Subspace F = ineqdetail::variant_subspace(B, c, j, v, false);
                    fs.push_back(project_fn(fe, F));
                }
                harnessdetail::push(out, inst,
                                    eval_min_corollary(fs, B, c, v, inst.seed + v, cfg.mc_samples),
                                    cfg.tol);
            }
        }
    }
    for (const auto& c : inst.restricted_covers) {
        for (int v = 1; v <= 4; ++v) {
            harnessdetail::push(out, inst, eval_local_lw(K, B, c, v), cfg.tol);
            harnessdetail::push(out, inst, eval_functional_local(fe, B, c, v), cfg.tol);
            harnessdetail::push(out, inst, eval_functional_local(fc, B, c, v), cfg.tol);
            if (c.d() <= 3) {
                harnessdetail::push(out, inst, eval_restricted_dual(K, B, c, v, false), cfg.tol);
                try {
                    harnessdetail::push(out, inst, eval_restricted_dual(K, B, c, v, true),
                                        cfg.tol);
                } catch (const std::invalid_argument&) {
                    // max section away from the origin: statement does not apply
                }
            }
        }
    }
}

inline BatchReport run_suite(const SuiteConfig& cfg) {
    BatchReport out;
    for (int n : cfg.dims)
        for (int b = 0; b < cfg.bodies_per_dim; ++b) {
            const std::uint64_t seed = Rng(cfg.seed).derive(std::uint64_t(n) << 32 | unsigned(b));
            run_catalog(out, random_instance(seed, n, cfg.cond_cap), cfg);
        }
    std::ostringstream ss;
    for (const auto& rec : out.records)
        ss << rec.instance_seed << '|' << rec.report.statement << '|' << rec.report.variant << '|'
           << rec.status << '|' << rec.report.ratio << '\n';
    out.digest = fnv1a(ss.str());
    return out;
}

// ---------------------------------------------------------------------------

struct TightnessResult {
    double best_ratio = 1e300;
    std::vector<double> trace; // best-so-far per iteration, non-increasing
    Polytope body;
    Basis basis{Mat::Identity(1, 1)};
    bool suspect = false; // ratio < 1 - tol found (numerical, not a counterexample)
};

/// Local search minimizing the verification ratio (probing sharpness).
template <class EvalFn>
TightnessResult tightness_search(const EvalFn& eval, int n, std::uint64_t seed, int restarts = 20,
                                 int iters = 60, double tol = 1e-6) {
    TightnessResult best;
    for (int r = 0; r < restarts; ++r) {
        RandomInstance inst = random_instance(Rng(seed).derive(r), n);
        Rng rng(Rng(seed).derive(1000 + r));
        Polytope body = inst.body;
        Basis basis = inst.basis;
        double cur;
        try {
            cur = eval(body, basis).ratio;
        } catch (const std::exception&) {
            continue;
        }
        for (int it = 0; it < iters; ++it) {
            Polytope pb = body;
            Basis pbasis = basis;
            if (rng.uniform() < 0.5) {
                Mat V = body.verts;
                const double s = 0.05 * body.diameter;
                for (int c2 = 0; c2 < V.cols(); ++c2)
                    for (int r2 = 0; r2 < n; ++r2) V(r2, c2) += s * rng.normal();
                try {
                    pb = make_polytope(V);
                } catch (const std::exception&) {
                    continue;
                }
                if (!contains(pb, Vec::Zero(n))) continue;
            } else {
                Mat M = basis.M;
                for (int c2 = 0; c2 < n; ++c2)
                    for (int r2 = 0; r2 < n; ++r2) M(r2, c2) += 0.02 * rng.normal();
                try {
                    pbasis = Basis(M);
                } catch (const std::exception&) {
                    continue;
                }
            }
            try {
                const double cand = eval(pb, pbasis).ratio;
                if (cand > 0.0 && cand < cur) {
                    cur = cand;
                    body = pb;
                    basis = pbasis;
                }
            } catch (const std::exception&) {
            }
            if (cur < best.best_ratio) {
                best.best_ratio = cur;
                best.body = body;
                best.basis = basis;
            }
            best.trace.push_back(best.best_ratio);
        }
    }
    best.suspect = best.best_ratio < 1.0 - tol;
    return best;
}

} // namespace lw
