#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lw/constants.hpp"
#include "lw/covers.hpp"
#include "lw/inequalities.hpp"
#include "lw/polytope.hpp"
#include "lw/report.hpp"
#include "lw/rng.hpp"

namespace lw {

enum class FnFamily { Indicator, ExpNorm, Cone, Blackbox };

/// A log-concave function living on a subspace (its carrier) of some
/// ambient space. The closed-form families are parameterized by a body
/// expressed in carrier coordinates:
///   indicator(K), exp_norm(K) = e^{-||x||_K}, cone(K) = (1 - ||x||_K)_+.
struct LogConcaveFn {
    FnFamily family = FnFamily::Indicator;
    Polytope body;    // carrier coordinates
    Subspace carrier; // subspace of the ambient space
    double sup = 1.0; // ||f||_inf (caller-supplied for blackbox)
    std::function<double(const Vec&)> eval; // blackbox, carrier coordinates
    Vec box_lo, box_hi;                     // blackbox support box

    int dim() const { return carrier.dim(); }
};

inline double fn_value(const LogConcaveFn& f, const Vec& x) {
    if (f.dim() == 0) return f.sup; // 0-dimensional carrier: constant at the origin
    switch (f.family) {
        case FnFamily::Indicator: return contains(f.body, x, 1e-12 * std::max(f.body.diameter, 1.0)) ? 1.0 : 0.0;
        case FnFamily::ExpNorm: return std::exp(-minkowski_functional(f.body, x));
        case FnFamily::Cone: return std::max(0.0, 1.0 - minkowski_functional(f.body, x));
        case FnFamily::Blackbox: return f.eval(x);
    }
    throw std::logic_error("fn_value: unknown family");
}

inline LogConcaveFn make_indicator(const Polytope& K) {
    return {FnFamily::Indicator, K, Subspace::full(K.dim), 1.0, {}, {}, {}};
}
inline LogConcaveFn make_exp_norm(const Polytope& K) {
    if (K.b.minCoeff() <= 0) throw std::invalid_argument("make_exp_norm: 0 must be interior to K");
    return {FnFamily::ExpNorm, K, Subspace::full(K.dim), 1.0, {}, {}, {}};
}
inline LogConcaveFn make_cone(const Polytope& K) {
    if (K.b.minCoeff() <= 0) throw std::invalid_argument("make_cone: 0 must be interior to K");
    return {FnFamily::Cone, K, Subspace::full(K.dim), 1.0, {}, {}, {}};
}
inline LogConcaveFn make_blackbox(std::function<double(const Vec&)> eval, const Vec& lo,
                                  const Vec& hi, double sup, const Subspace& carrier) {
    LogConcaveFn f;
    f.family = FnFamily::Blackbox;
    f.carrier = carrier;
    f.sup = sup;
    f.eval = std::move(eval);
    f.box_lo = lo;
    f.box_hi = hi;
    return f;
}

namespace fndetail {

inline Polytope project_body(const Polytope& K, const Mat& frame) {
    Mat pts = frame.transpose() * K.verts;
    return make_polytope(pts);
}

/// H in ambient coordinates -> the same subspace expressed in the carrier
/// frame of f; H must be contained in the carrier.
inline Mat carrier_frame_of(const LogConcaveFn& f, const Subspace& H) {
    Mat local = f.carrier.frame.transpose() * H.frame; // carrier-coords frame
    if (H.dim() == 0) return local;
    Mat back = f.carrier.frame * local;
    if ((back - H.frame).cwiseAbs().maxCoeff() > 1e-8)
        throw std::invalid_argument("subspace is not contained in the function's carrier");
    return local;
}

} // namespace fndetail

/// Shadow/projection (P_H f)(x) = sup over the fiber through x. Closed-form
/// families project onto the same family over the projected body.
inline LogConcaveFn project_fn(const LogConcaveFn& f, const Subspace& H) {
    if (f.family == FnFamily::Blackbox) {
        // approximate: inner maximization over a fixed quadrature grid on fibers
        const Mat local = fndetail::carrier_frame_of(f, H);
        const int k = f.dim() - static_cast<int>(local.cols());
        Subspace Hc;
        Hc.ambient = f.dim();
        Hc.frame = local;
        const Subspace Fc = orth_complement(Hc);
        LogConcaveFn g;
        g.family = FnFamily::Blackbox;
        g.carrier = H;
        g.sup = f.sup;
        const Vec lo = f.box_lo, hi = f.box_hi;
        auto base = f.eval;
        g.eval = [base, local, Fc, lo, hi, k](const Vec& y) {
            double best = 0.0;
            Rng rng(0x9e3779b97f4a7c15ull);
            const int samples = 1 << 10;
            for (int s = 0; s < samples; ++s) {
                Vec z(k);
                for (int i = 0; i < k; ++i) z(i) = rng.uniform(-1.0, 1.0);
                Vec x = local * y + Fc.frame * (z * (hi - lo).norm());
                if (((x - lo).array() < 0).any() || ((x - hi).array() > 0).any()) continue;
                best = std::max(best, base(x));
            }
            return best;
        };
        g.box_lo = local.transpose() * lo;
        g.box_hi = local.transpose() * hi;
        return g;
    }
    const Mat local = fndetail::carrier_frame_of(f, H);
    LogConcaveFn g;
    g.family = f.family;
    g.carrier = H;
    g.sup = f.sup;
    if (H.dim() > 0) g.body = fndetail::project_body(f.body, local);
    return g;
}

/// Exact integral of f^k restricted to a linear subspace of the carrier
/// (spanned by `frame` in carrier coordinates); frame with 0 columns means
/// the zero subspace, full square frame means the whole carrier.
inline double power_integral_on(const LogConcaveFn& f, double k, const Mat& frame) {
    const int r = static_cast<int>(frame.cols());
    if (k <= 0) throw std::invalid_argument("power_integral_on: power must be positive");
    if (f.dim() == 0) return std::pow(f.sup, k); // point mass at the origin
    double secK; // |K ∩ span(frame)|, r-dimensional
    if (r == 0) {
        secK = contains(f.body, Vec::Zero(f.dim()), 1e-12) ? 1.0 : 0.0;
    } else if (r == f.dim()) {
        secK = volume(f.body);
    } else {
        Subspace S;
        S.ambient = f.dim();
        S.frame = frame;
        secK = section_volume(f.body, S);
    }
    switch (f.family) {
        case FnFamily::Indicator: return secK;
        case FnFamily::ExpNorm: return std::tgamma(r + 1.0) * secK / std::pow(k, r);
        case FnFamily::Cone:
            return secK * std::tgamma(r + 1.0) * std::tgamma(k + 1.0) / std::tgamma(k + r + 1.0);
        case FnFamily::Blackbox:
            throw std::invalid_argument("power_integral_on: no closed form for blackbox");
    }
    throw std::logic_error("power_integral_on: unknown family");
}

inline McEstimate mc_integrate(const LogConcaveFn& f, std::uint64_t seed = 1,
                               std::uint64_t samples = 1000000) {
    if (f.box_lo.size() == 0) throw std::invalid_argument("mc_integrate: blackbox needs a support box");
    const int q = f.dim();
    double boxvol = 1.0;
    for (int i = 0; i < q; ++i) boxvol *= f.box_hi(i) - f.box_lo(i);
    Rng rng(seed);
    double sum = 0.0, sumsq = 0.0;
    for (std::uint64_t s = 0; s < samples; ++s) {
        Vec x(q);
        for (int i = 0; i < q; ++i) x(i) = rng.uniform(f.box_lo(i), f.box_hi(i));
        const double v = f.eval(x);
        sum += v;
        sumsq += v * v;
    }
    const double mean = sum / double(samples);
    const double var = std::max(0.0, sumsq / double(samples) - mean * mean);
    return {boxvol * mean, boxvol * std::sqrt(var / double(samples))};
}

inline double integrate(const LogConcaveFn& f) {
    if (f.family == FnFamily::Blackbox) return mc_integrate(f).estimate;
    Mat full = Mat::Identity(f.dim(), f.dim());
    return power_integral_on(f, 1.0, full);
}

/// Integral of the restriction of f to the subspace H (through 0) of the
/// ambient space; H must be contained in the carrier.
inline double restrict_integrate(const LogConcaveFn& f, const Subspace& H) {
    if (f.family == FnFamily::Blackbox)
        throw std::invalid_argument("restrict_integrate: blackbox not supported");
    return power_integral_on(f, 1.0, fndetail::carrier_frame_of(f, H));
}

inline double lp_norm(const LogConcaveFn& f, double p) {
    if (p < 1.0) throw std::invalid_argument("lp_norm: p must be >= 1");
    if (f.family == FnFamily::Blackbox) {
        LogConcaveFn g = f;
        auto base = f.eval;
        g.eval = [base, p](const Vec& x) { return std::pow(base(x), p); };
        return std::pow(mc_integrate(g).estimate, 1.0 / p);
    }
    Mat full = Mat::Identity(f.dim(), f.dim());
    return std::pow(power_integral_on(f, p, full), 1.0 / p);
}

// ---------------------------------------------------------------------------
// Functional theorem evaluators. All take f on a full n-dimensional carrier.

namespace fndetail {

inline void require_full_carrier(const LogConcaveFn& f, const Basis& B, const char* who) {
    if (f.dim() != B.dim() || f.carrier.dim() != f.carrier.ambient)
        throw std::invalid_argument(std::string(who) + ": f must live on the full ambient space");
}

} // namespace fndetail

/// Sobolev-type projection inequality: ||f||_p (or ||f||_{p/(p-1)}) against
/// BL^{1/p} * prod ||P_F_j f||_1^{p_j/p}.
inline VerificationReport eval_gn(const LogConcaveFn& f, const Basis& B, const IndexCover& c,
                                  int variant) {
    validate(c);
    fndetail::require_full_carrier(f, B, "eval_gn");
    if (!c.covers_all()) throw std::invalid_argument("eval_gn: cover must cover [n]");
    if (c.p() == Rational{1})
        throw std::invalid_argument("eval_gn: p = 1 covers are outside the theorem (needs p > 1)");
    if (f.family == FnFamily::ExpNorm)
        throw std::invalid_argument("eval_gn: f must have compact support (exp_norm rejected)");
    const double p = c.p().value();
    const double bl = bl_for_variant(B, c, variant);
    const double lhs = lp_norm(f, ineqdetail::lhs_power_first(variant) ? p : p / (p - 1.0));
    double lg = std::log(bl) / p;
    bool degen = false;
    for (int j = 0; j < c.m(); ++j) {
        const Subspace F = ineqdetail::variant_subspace(B, c, j, variant, false);
        const double v = integrate(project_fn(f, F));
        if (v <= 0.0) { degen = true; break; }
        lg += c.weights[j].value() / p * std::log(v);
    }
    return ineqdetail::make_report("thm-gn", variant, lhs, degen ? 0.0 : std::exp(lg),
                                   std::pow(bl, 1.0 / p), false);
}

/// Log-concave projection inequality with factorial constants:
/// ||f||_inf^a ||f||_1^b <= BL * n!-prefactor * prod ||P_F_j f||_1^{p_j}.
inline VerificationReport eval_functional_bt(const LogConcaveFn& f, const Basis& B,
                                             const IndexCover& c, int variant) {
    validate(c);
    fndetail::require_full_carrier(f, B, "eval_functional_bt");
    if (!c.covers_all()) throw std::invalid_argument("eval_functional_bt: cover must cover [n]");
    const int n = B.dim();
    const double p = c.p().value();
    const double bl = bl_for_variant(B, c, variant);
    const double pre = prefactor({Theorem::FunctionalBT, variant}, n, c);
    const double mass = integrate(f);
    const bool pf = ineqdetail::lhs_power_first(variant);
    const double lhs = std::pow(f.sup, pf ? p - 1.0 : 1.0) * std::pow(mass, pf ? 1.0 : p - 1.0);
    double lg = std::log(bl * pre);
    bool degen = mass <= 0.0;
    std::string note;
    const CoverStats st = cover_stats(c);
    for (int j = 0; j < c.m(); ++j) {
        const int dj = (variant % 2 == 1) ? st.dj[j] : st.dtilde[j];
        if (c.weights[j].value() * dj > n + 1e-12)
            note = "side condition p_j d_j <= n violated for subset " + std::to_string(j + 1);
    }
    for (int j = 0; j < c.m() && !degen; ++j) {
        const Subspace F = ineqdetail::variant_subspace(B, c, j, variant, false);
        const double v = integrate(project_fn(f, F));
        if (v <= 0.0) { degen = true; break; }
        lg += c.weights[j].value() * std::log(v);
    }
    auto r = ineqdetail::make_report("thm-functional-bt", variant, lhs,
                                     degen ? 0.0 : std::exp(lg), bl * pre, false);
    r.degenerate |= degen;
    if (!note.empty()) r.notes = note;
    return r;
}

/// Min-of-pullbacks corollary: one function per subset, each living on its
/// variant subspace. LHS by Monte-Carlo, RHS in closed form.
inline VerificationReport eval_min_corollary(const std::vector<LogConcaveFn>& fs, const Basis& B,
                                             const IndexCover& c, int variant,
                                             std::uint64_t seed = 7,
                                             std::uint64_t samples = 200000) {
    validate(c);
    if (!c.covers_all()) throw std::invalid_argument("eval_min_corollary: cover must cover [n]");
    if (static_cast<int>(fs.size()) != c.m())
        throw std::invalid_argument("eval_min_corollary: need one function per subset");
    const int n = B.dim();
    const double p = c.p().value();
    const double bl = bl_for_variant(B, c, variant);
    const double pre = prefactor({Theorem::MinCorollary, variant}, n, c);
    std::vector<Subspace> F;
    for (int j = 0; j < c.m(); ++j) {
        F.push_back(ineqdetail::variant_subspace(B, c, j, variant, false));
        if (!F[j].same_as(fs[j].carrier))
            throw std::invalid_argument("eval_min_corollary: f_j must live on its variant subspace");
    }

    double lg = std::log(bl * pre);
    bool degen = false;
    for (int j = 0; j < c.m(); ++j) {
        const double v = integrate(fs[j]) / fs[j].sup;
        if (v <= 0.0) { degen = true; break; }
        lg += c.weights[j].value() * std::log(v);
    }

    // the integrand in ambient coordinates
    auto min_val = [&](const Vec& x) {
        double v = 1e300;
        for (int j = 0; j < c.m(); ++j)
            v = std::min(v, fn_value(fs[j], fs[j].carrier.coords(x)) / fs[j].sup);
        return v;
    };

    bool compact = true;
    double maxrad = 0.0;
    for (const auto& f : fs) {
        if (f.family == FnFamily::ExpNorm) compact = false;
        double r = 0.0;
        if (f.family == FnFamily::Blackbox) {
            if (f.box_lo.size() == 0)
                throw std::invalid_argument("eval_min_corollary: blackbox needs a support box");
            r = std::max(f.box_lo.cwiseAbs().maxCoeff(), f.box_hi.cwiseAbs().maxCoeff()) *
                std::sqrt(double(f.dim()));
        } else {
            for (int v = 0; v < f.body.verts.cols(); ++v)
                r = std::max(r, f.body.verts.col(v).norm());
        }
        maxrad = std::max(maxrad, r);
    }
    // lambda_min of sum p_j P_{F_j}: any x with min_j f_j > 0 has some
    // |P_j x| comparable to |x|, giving a support (or decay) radius.
    Mat Q = Mat::Zero(n, n);
    for (int j = 0; j < c.m(); ++j)
        Q += c.weights[j].value() * F[j].frame * F[j].frame.transpose();
    const double lmin = Eigen::SelfAdjointEigenSolver<Mat>(Q).eigenvalues().minCoeff();
    if (lmin <= 1e-12) throw std::invalid_argument("eval_min_corollary: subspaces do not span");
    const double scale = maxrad * std::sqrt(p / lmin);

    Rng rng(seed);
    double sum = 0.0, sumsq = 0.0, weight_scale;
    if (compact) {
        const double R = scale * 1.0000001;
        weight_scale = std::pow(2.0 * R, n);
        for (std::uint64_t s = 0; s < samples; ++s) {
            Vec x(n);
            for (int i = 0; i < n; ++i) x(i) = rng.uniform(-R, R);
            const double v = min_val(x);
            sum += v;
            sumsq += v * v;
        }
    } else {
        // importance sample with a product-Laplace density that decays
        // slower than the integrand in every direction
        const double lam = 1.0 / (scale * std::sqrt(double(n)));
        weight_scale = 1.0;
        for (std::uint64_t s = 0; s < samples; ++s) {
            Vec x(n);
            double logq = 0.0;
            for (int i = 0; i < n; ++i) {
                const double u = rng.uniform(-1.0, 1.0);
                const double t = -std::log(1.0 - std::abs(u) + 1e-300) / lam;
                x(i) = (u < 0 ? -t : t);
                logq += std::log(lam / 2.0) - lam * t;
            }
            const double v = min_val(x) * std::exp(-logq);
            sum += v;
            sumsq += v * v;
        }
    }
    const double mean = sum / double(samples);
    const double var = std::max(0.0, sumsq / double(samples) - mean * mean);
    const double est = weight_scale * mean;
    const double sig = weight_scale * std::sqrt(var / double(samples));

    const bool pf = ineqdetail::lhs_power_first(variant);
    const double e = pf ? 1.0 : p - 1.0;
    auto r = ineqdetail::make_report("cor-min", variant, std::pow(est, e),
                                     degen ? 0.0 : std::exp(lg), bl * pre, false);
    r.degenerate |= degen;
    r.mc_sigma = (est > 0.0) ? e * std::pow(est, e - 1.0) * sig : sig;
    return r;
}

/// Restricted functional inequality over a cover of S, |S| = d < n:
/// ||P_{H^perp} f||_1^a ||f||_1^b against the d!-based constant.
inline VerificationReport eval_functional_local(const LogConcaveFn& f, const Basis& B,
                                                const IndexCover& c, int variant) {
    validate(c);
    fndetail::require_full_carrier(f, B, "eval_functional_local");
    const int n = B.dim();
    if (c.d() >= n) throw std::invalid_argument("eval_functional_local: need |S| = d < n");
    const double p = c.p().value();
    const double bl = bl_for_variant(B, c, variant);
    const double pre = prefactor({Theorem::FunctionalLocal, variant}, n, c);
    const Subspace Hperp = orth_complement(span_of(B, c.S));
    const double projH = integrate(project_fn(f, Hperp));
    const double mass = integrate(f);
    const bool pf = ineqdetail::lhs_power_first(variant);
    const double lhs = std::pow(projH, pf ? p - 1.0 : 1.0) * std::pow(mass, pf ? 1.0 : p - 1.0);
    double lg = std::log(bl * pre);
    bool degen = mass <= 0.0 || projH <= 0.0;
    for (int j = 0; j < c.m() && !degen; ++j) {
        const Subspace F = ineqdetail::variant_subspace(B, c, j, variant, true);
        const double v = integrate(project_fn(f, F));
        if (v <= 0.0) { degen = true; break; }
        lg += c.weights[j].value() * std::log(v);
    }
    auto r = ineqdetail::make_report("thm-functional-local", variant, lhs,
                                     degen ? 0.0 : std::exp(lg), bl * pre, false);
    r.degenerate |= degen;
    return r;
}

enum class ReverseKind { Powers, NoPowers, Centered };

/// The reverse (lower-bound) family for covers of [n]:
///  - Powers:   int f^n  >= (1/BL) * prod d_j^{p_j d_j}/n^n * prod (int_F f^{d_j})^{p_j}
///  - NoPowers: sup/mass form with restrictions instead of powers
///  - Centered: equal weights, f(0) = ||f||_inf, Gamma-based constant
inline VerificationReport eval_reverse_family(const LogConcaveFn& f, const Basis& B,
                                              const IndexCover& c, ReverseKind kind,
                                              int variant) {
    validate(c);
    fndetail::require_full_carrier(f, B, "eval_reverse_family");
    if (!c.covers_all()) throw std::invalid_argument("eval_reverse_family: cover must cover [n]");
    if (f.family == FnFamily::Blackbox)
        throw std::invalid_argument("eval_reverse_family: closed-form family required");
    const int n = B.dim();
    const double p = c.p().value();
    const double bl = bl_for_variant(B, c, variant);
    const CoverStats st = cover_stats(c);
    const bool pf = ineqdetail::lhs_power_first(variant);

    Theorem thm = Theorem::ReversePowers;
    if (kind == ReverseKind::NoPowers) thm = Theorem::ReverseNoPowers;
    if (kind == ReverseKind::Centered) {
        thm = Theorem::ReverseCentered;
        const double at0 = fn_value(f, Vec::Zero(n));
        if (std::abs(at0 - f.sup) > 1e-9 * std::max(f.sup, 1.0))
            throw std::invalid_argument("eval_reverse_family: centered family needs f(0) = ||f||_inf");
    }
    const double pre = prefactor({thm, variant}, n, c);

    double lhs;
    if (kind == ReverseKind::Powers) {
        const double full = power_integral_on(f, double(n), Mat::Identity(n, n));
        lhs = std::pow(full, pf ? 1.0 : p - 1.0);
    } else {
        const double mass = integrate(f);
        lhs = std::pow(f.sup, pf ? p - 1.0 : 1.0) * std::pow(mass, pf ? 1.0 : p - 1.0);
    }

    double lg = std::log(pre / bl);
    bool degen = lhs <= 0.0;
    for (int j = 0; j < c.m() && !degen; ++j) {
        const Subspace F = ineqdetail::variant_subspace(B, c, j, variant, false);
        const Mat frame = fndetail::carrier_frame_of(f, F);
        double v;
        if (kind == ReverseKind::Powers) {
            const int dj = pf ? st.dj[j] : st.dtilde[j];
            if (dj == 0) { v = 1.0; }
            else v = power_integral_on(f, double(dj), frame);
        } else {
            v = power_integral_on(f, 1.0, frame);
        }
        if (v <= 0.0) { degen = true; break; }
        lg += c.weights[j].value() * std::log(v);
    }
    auto r = ineqdetail::make_report(kind == ReverseKind::Powers
                                         ? "thm-reverse-powers"
                                         : (kind == ReverseKind::NoPowers ? "thm-reverse-restrict"
                                                                          : "thm-reverse-centered"),
                                     variant, lhs, degen ? 0.0 : std::exp(lg), pre / bl, true);
    r.degenerate |= degen;
    return r;
}

// ---------------------------------------------------------------------------
// Berwald's moment functional for concave h on [0, infinity).

/// Concave piecewise-linear h given as the minimum of affine pieces
/// a_i + b_i t with b_i >= 0 (so h stays positive on (0, inf)).
struct ConcavePL {
    std::vector<double> a, b;

    double operator()(double t) const {
        double v = 1e300;
        for (std::size_t i = 0; i < a.size(); ++i) v = std::min(v, a[i] + b[i] * t);
        return v;
    }
    void validate() const {
        if (a.empty() || a.size() != b.size())
            throw std::invalid_argument("ConcavePL: need matching nonempty piece lists");
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] < -1e-15 || b[i] < 0)
                throw std::invalid_argument("ConcavePL: pieces must satisfy a >= 0, b >= 0");
        if ((*this)(1.0) <= 0 && (*this)(100.0) <= 0)
            throw std::invalid_argument("ConcavePL: h must be positive somewhere");
    }
    /// breakpoints (pairwise piece intersections) within [0, T], sorted
    std::vector<double> knots(double T) const {
        std::vector<double> ks{0.0, T};
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = i + 1; j < a.size(); ++j) {
                if (std::abs(b[i] - b[j]) < 1e-14) continue;
                const double t = (a[j] - a[i]) / (b[i] - b[j]);
                if (t > 1e-14 && t < T) ks.push_back(t);
            }
        std::sort(ks.begin(), ks.end());
        ks.erase(std::unique(ks.begin(), ks.end(),
                             [](double x, double y) { return std::abs(x - y) < 1e-13; }),
                 ks.end());
        return ks;
    }
};

namespace fndetail {

/// adaptive Simpson on a smooth segment
template <class F>
double adaptive_simpson(const F& g, double lo, double hi, double tol, int depth = 0) {
    const double mid = 0.5 * (lo + hi);
    const double fl = g(lo), fm = g(mid), fh = g(hi);
    const double whole = (hi - lo) / 6.0 * (fl + 4.0 * fm + fh);
    const double lm = 0.5 * (lo + mid), rm = 0.5 * (mid + hi);
    const double left = (mid - lo) / 6.0 * (fl + 4.0 * g(lm) + fm);
    const double right = (hi - mid) / 6.0 * (fm + 4.0 * g(rm) + fh);
    if (depth > 48 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(g, lo, mid, tol / 2, depth + 1) +
           adaptive_simpson(g, mid, hi, tol / 2, depth + 1);
}

} // namespace fndetail

/// Phi_gamma(h) = ((1/Gamma(1+gamma)) int_0^inf h^gamma e^{-t} dt)^{1/gamma}.
inline double berwald_phi(const ConcavePL& h, double gamma) {
    if (gamma <= -1.0) throw std::invalid_argument("berwald_phi: gamma must exceed -1");
    if (gamma == 0.0) throw std::invalid_argument("berwald_phi: gamma = 0 not supported");
    h.validate();
    const double T = 60.0;
    const auto ks = h.knots(T);
    double integral = 0.0;
    const double tol = 1e-12;
    for (std::size_t s = 0; s + 1 < ks.size(); ++s) {
        const double lo = ks[s], hi = ks[s + 1];
        if (gamma < 0.0 && s == 0 && h(0.0) < 1e-14) {
            // h = b t on [0, t1]: substitute t = u^{1/(1+gamma)} so the
            // integrand loses its endpoint singularity
            const double slope = h(hi) / hi;
            const double q = 1.0 / (1.0 + gamma);
            const double ulim = std::pow(hi, 1.0 + gamma);
            auto g = [&](double u) { return std::exp(-std::pow(u, q)); };
            integral += std::pow(slope, gamma) * q *
                        fndetail::adaptive_simpson(g, 0.0, ulim, tol);
            continue;
        }
        auto g = [&](double t) { return std::pow(h(t), gamma) * std::exp(-t); };
        integral += fndetail::adaptive_simpson(g, lo, hi, tol);
    }
    // linear tail beyond T: h = a + b t with b >= 0; expand to machine tail
    {
        auto g = [&](double t) { return std::pow(h(t), gamma) * std::exp(-t); };
        integral += fndetail::adaptive_simpson(g, T, T + 40.0, tol);
    }
    return std::pow(integral / std::tgamma(1.0 + gamma), 1.0 / gamma);
}

struct BerwaldReport {
    std::vector<double> gammas, values;
    double max_violation = 0.0;
    bool monotone = false;
};

inline BerwaldReport berwald_monotone_check(const ConcavePL& h, const std::vector<double>& grid) {
    BerwaldReport rep;
    rep.gammas = grid;
    for (double g : grid) rep.values.push_back(berwald_phi(h, g));
    for (std::size_t i = 0; i + 1 < rep.values.size(); ++i)
        rep.max_violation = std::max(rep.max_violation, rep.values[i + 1] - rep.values[i]);
    rep.monotone = rep.max_violation <= 1e-8 * std::max(1.0, rep.values.front());
    return rep;
}

// ---------------------------------------------------------------------------

/// Product of coordinate-hyperplane marginals of the extremal unconditional
/// density e^{-2 (n!)^{1/n} max_j |x_j|} against its sharp lower bound n!/n^n,
/// plus a perturbed density that must sit strictly above the bound.
inline VerificationReport bobkov_nazarov_check(int n) {
    if (n < 2 || n > 6) throw std::invalid_argument("bobkov_nazarov_check: n must be in [2, 6]");
    const double cc = 1.0 / (2.0 * std::pow(factorial(n), 1.0 / double(n)));
    Vec lo = Vec::Constant(n, -cc), hi = Vec::Constant(n, cc);
    const LogConcaveFn f = make_exp_norm(box_body(lo, hi));
    double product = 1.0;
    for (int j = 0; j < n; ++j) {
        Mat frame(n, n - 1);
        int col = 0;
        for (int i = 0; i < n; ++i)
            if (i != j) frame.col(col++) = Vec::Unit(n, i);
        product *= power_integral_on(f, 1.0, frame);
    }
    const double bound = factorial(n) / std::pow(double(n), n);
    auto r = ineqdetail::make_report("bobkov-nazarov", 1, product, bound, bound, true);

    // perturbed unconditional density with mass 1 and p(0) = 1:
    // e^{-2 ||x||_1} (cross-polytope norm), whose marginal product is 1
    const LogConcaveFn g = make_exp_norm(apply_linear(standard_body(BodyKind::Cross, n),
                                                      Mat::Identity(n, n) * 0.5));
    double pert = 1.0;
    for (int j = 0; j < n; ++j) {
        Mat frame(n, n - 1);
        int col = 0;
        for (int i = 0; i < n; ++i)
            if (i != j) frame.col(col++) = Vec::Unit(n, i);
        pert *= power_integral_on(g, 1.0, frame);
    }
    if (pert < bound * (1.0 - 1e-9)) {
        r.ratio = pert / bound;
        r.notes = "perturbed density violates the bound";
    } else {
        r.notes = "perturbed product " + std::to_string(pert);
    }
    return r;
}

} // namespace lw
