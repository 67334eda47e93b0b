#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "lw/constants.hpp"
#include "lw/covers.hpp"
#include "lw/polytope.hpp"
#include "lw/report.hpp"

namespace lw {

/// span{w_k : k in idx}; empty index set spans {0}.
inline Subspace span_of(const Basis& B, const std::vector<int>& idx) {
    if (idx.empty()) return Subspace::zero(B.dim());
    return span_subspace(detail::pick(B, idx));
}

namespace ineqdetail {

/// The subspace each variant projects onto / sections with, for subset j.
/// Odd variants use the "tilde-perp"/"as spanned" pair, even ones swap;
/// restricted variants 3 and 4 add H^perp.
inline Subspace variant_subspace(const Basis& B, const IndexCover& c, int j, int variant,
                                 bool restricted) {
    const auto& S = c.S;
    const auto& Sj = c.subsets[j];
    const std::vector<int> comp = detail::set_minus(S, Sj);
    switch (variant) {
        case 1: return orth_complement(span_of(B, comp));
        case 2: return orth_complement(span_of(B, Sj));
        case 3: {
            Subspace Hj = span_of(B, Sj);
            if (!restricted) return Hj;
            return subspace_sum(Hj, orth_complement(span_of(B, S)));
        }
        case 4: {
            Subspace Ht = span_of(B, comp);
            if (!restricted) return Ht;
            return subspace_sum(Ht, orth_complement(span_of(B, S)));
        }
    }
    throw std::invalid_argument("variant must be in 1..4");
}

inline bool lhs_power_first(int variant) { return variant == 1 || variant == 3; }

inline VerificationReport make_report(std::string statement, int variant, double easy,
                                      double bound, double constant, bool geq) {
    VerificationReport r;
    r.statement = std::move(statement);
    r.variant = variant;
    r.constant = constant;
    r.lhs = easy;
    r.rhs = bound;
    if (easy <= 0.0 || bound <= 0.0) {
        r.degenerate = true;
        r.notes = "zero volume on one side";
        return r;
    }
    r.ratio = geq ? easy / bound : bound / easy;
    return r;
}

} // namespace ineqdetail

/// Affine Bollobas-Thomason: |K|^e <= BL * prod |P_F_j K|^{p_j}.
inline VerificationReport eval_affine_bt(const Polytope& K, const Basis& B, const IndexCover& c,
                                         int variant) {
    validate(c);
    if (!c.covers_all()) throw std::invalid_argument("eval_affine_bt: cover must cover [n]");
    const double bl = bl_for_variant(B, c, variant);
    const double p = c.p().value();
    const double volK = volume(K);
    double lg = std::log(bl);
    bool degen = false;
    for (int j = 0; j < c.m(); ++j) {
        const Subspace F = ineqdetail::variant_subspace(B, c, j, variant, false);
        const double v = projection_volume(K, F);
        if (v <= 0.0) { degen = true; break; }
        lg += c.weights[j].value() * std::log(v);
    }
    const double e = ineqdetail::lhs_power_first(variant) ? 1.0 : p - 1.0;
    auto r = ineqdetail::make_report("thm-affine-bt", variant, std::pow(volK, e),
                                     degen ? 0.0 : std::exp(lg), bl, false);
    r.degenerate |= degen;
    return r;
}

/// Restricted/local Loomis-Whitney:
/// |P_{H^perp}K|^{a} |K|^{b} <= BL * binomial prefactor * prod |P_F_j K|^{p_j}.
inline VerificationReport eval_local_lw(const Polytope& K, const Basis& B, const IndexCover& c,
                                        int variant) {
    validate(c);
    const int n = B.dim();
    if (c.d() >= n) throw std::invalid_argument("eval_local_lw: need |S| = d < n");
    const double bl = bl_for_variant(B, c, variant);
    const double pre = prefactor({Theorem::LocalLW, variant}, n, c);
    const double p = c.p().value();
    const Subspace Hperp = orth_complement(span_of(B, c.S));
    const double projH = projection_volume(K, Hperp);
    const double volK = volume(K);
    double lg = std::log(bl * pre);
    bool degen = projH <= 0.0;
    for (int j = 0; j < c.m() && !degen; ++j) {
        const Subspace F = ineqdetail::variant_subspace(B, c, j, variant, true);
        const double v = projection_volume(K, F);
        if (v <= 0.0) { degen = true; break; }
        lg += c.weights[j].value() * std::log(v);
    }
    const bool pf = ineqdetail::lhs_power_first(variant);
    const double lhs = degen ? 0.0
                             : std::pow(projH, pf ? p - 1.0 : 1.0) * std::pow(volK, pf ? 1.0 : p - 1.0);
    auto r = ineqdetail::make_report("thm-local-lw", variant, lhs, degen ? 0.0 : std::exp(lg),
                                     bl * pre, false);
    r.degenerate |= degen;
    return r;
}

/// Dual Bollobas-Thomason: |K|^e >= (1/BL) * factorial prefactor * prod |K cap F_j|^{p_j}.
inline VerificationReport eval_dual_bt(const Polytope& K, const Basis& B, const IndexCover& c,
                                       int variant) {
    validate(c);
    if (!c.covers_all()) throw std::invalid_argument("eval_dual_bt: cover must cover [n]");
    if (!contains(K, Vec::Zero(K.dim)))
        throw std::invalid_argument("eval_dual_bt: origin must be inside K");
    const double bl = bl_for_variant(B, c, variant);
    const double pre = prefactor({Theorem::DualBT, variant}, B.dim(), c);
    const double p = c.p().value();
    const double volK = volume(K);
    double lg = std::log(pre / bl);
    bool degen = false;
    for (int j = 0; j < c.m(); ++j) {
        const Subspace F = ineqdetail::variant_subspace(B, c, j, variant, false);
        const double v = section_volume(K, F);
        if (v <= 0.0) { degen = true; break; }
        lg += c.weights[j].value() * std::log(v);
    }
    const double e = ineqdetail::lhs_power_first(variant) ? 1.0 : p - 1.0;
    auto r = ineqdetail::make_report("thm-dual-bt", variant, std::pow(volK, e),
                                     degen ? 0.0 : std::exp(lg), pre / bl, true);
    r.degenerate |= degen;
    return r;
}

/// Restricted dual: max-section (or origin-section in centered mode) version.
inline VerificationReport eval_restricted_dual(const Polytope& K, const Basis& B,
                                               const IndexCover& c, int variant,
                                               bool centered_mode = false) {
    validate(c);
    const int n = B.dim();
    if (c.d() >= n) throw std::invalid_argument("eval_restricted_dual: need |S| = d < n");
    const Subspace H = span_of(B, c.S);
    const Subspace Hperp = orth_complement(H);
    double maxsec;
    if (centered_mode) {
        for (int j = 1; j < c.m(); ++j)
            if (c.weights[j] != c.weights[0])
                throw std::invalid_argument("eval_restricted_dual: centered mode needs equal weights");
        const double at0 = section_volume(K, Hperp);
        const double best = max_parallel_section(K, H).value;
        if (best > at0 * (1.0 + 1e-6))
            throw std::invalid_argument(
                "eval_restricted_dual: max section not attained at the origin");
        maxsec = at0;
    } else {
        maxsec = max_parallel_section(K, H).value;
    }
    const double bl = bl_for_variant(B, c, variant);
    const double pre = prefactor(
        {centered_mode ? Theorem::RestrictedDualCentered : Theorem::RestrictedDual, variant}, n, c);
    const double p = c.p().value();
    const double volK = volume(K);
    double lg = std::log(pre / bl);
    bool degen = maxsec <= 0.0;
    for (int j = 0; j < c.m() && !degen; ++j) {
        const Subspace F = ineqdetail::variant_subspace(B, c, j, variant, true);
        const double v = section_volume(K, F);
        if (v <= 0.0) { degen = true; break; }
        lg += c.weights[j].value() * std::log(v);
    }
    const bool pf = ineqdetail::lhs_power_first(variant);
    const double lhs = degen ? 0.0
                             : std::pow(maxsec, pf ? p - 1.0 : 1.0) * std::pow(volK, pf ? 1.0 : p - 1.0);
    auto r = ineqdetail::make_report(centered_mode ? "thm-restricted-dual-centered"
                                                   : "thm-restricted-dual",
                                     variant, lhs, degen ? 0.0 : std::exp(lg), pre / bl, true);
    r.degenerate |= degen;
    return r;
}

/// Max-section bound through the centroid:
/// max_x |K cap (x + H^perp)| <= ((n+1)/(n-d+1))^{n-d} |K cap H^perp|.
inline VerificationReport eval_fradelizi_bound(const Polytope& K, const Subspace& H) {
    const int n = K.dim, d = H.dim();
    if (centroid(K).norm() > 1e-6 * std::max(K.diameter, 1.0))
        throw std::invalid_argument("eval_fradelizi_bound: K must be centred (centroid at 0)");
    const Subspace Hperp = orth_complement(H);
    const double maxsec = max_parallel_section(K, H).value;
    const double at0 = section_volume(K, Hperp);
    const double factor = std::pow(double(n + 1) / double(n - d + 1), double(n - d));
    auto r = ineqdetail::make_report("fradelizi-max-section", 1, factor * at0, maxsec,
                                     factor, true);
    return r;
}

/// The classical catalog, each evaluated as a specialization of the
/// general evaluators with canonical data. Returns one report per entry,
/// tagged with the hosting theorem in `notes`.
inline std::vector<VerificationReport> eval_classics(const Polytope& K) {
    const int n = K.dim;
    const Basis E = Basis::canonical(n);
    std::vector<VerificationReport> out;
    auto tag = [&](VerificationReport r, const std::string& name, const std::string& host) {
        r.statement = name;
        r.notes = "via " + host;
        out.push_back(std::move(r));
    };
    if (n >= 2) {
        tag(eval_affine_bt(K, E, lw_cover(n), 1), "classic-loomis-whitney", "thm-affine-bt v1");
        if (contains(K, Vec::Zero(n)))
            tag(eval_dual_bt(K, E, lw_cover(n), 1), "classic-meyer-dual", "thm-dual-bt v1");
    }
    if (n >= 3) {
        // a non-trivial equal-weight cover beyond Loomis-Whitney
        for (const auto& c : enumerate_equal_weight_covers(n, 2, 3)) {
            tag(eval_affine_bt(K, E, c, 3), "classic-bollobas-thomason", "thm-affine-bt v3");
            if (contains(K, Vec::Zero(n)))
                tag(eval_dual_bt(K, E, c, 3), "classic-dual-bollobas-thomason", "thm-dual-bt v3");
            break;
        }
    }
    if (n >= 3) {
        const IndexCover pc = partition_cover(n, {1, 2});
        tag(eval_local_lw(K, E, pc, 1), "classic-local-lw", "thm-local-lw v1");
        // skew two-vector variant: w1 = e1, w2 at angle pi/3 in the (e1,e2)-plane
        Mat M = Mat::Identity(n, n);
        M(0, 1) = 0.5;
        M(1, 1) = std::sqrt(3.0) / 2.0;
        tag(eval_local_lw(K, Basis(M), pc, 1), "classic-local-lw-skew", "thm-local-lw v1");
        // equal-weight restricted cover, projections onto H_j^perp
        tag(eval_local_lw(K, E, pc, 2), "classic-restricted-bgl", "thm-local-lw v2");
        // dual restricted version when the max section sits at the origin
        try {
            tag(eval_restricted_dual(K, E, pc, 1, true), "classic-dual-restricted",
                "thm-restricted-dual-centered v1");
        } catch (const std::invalid_argument&) {
            // max section away from 0: statement does not apply to this body
        }
    }
    return out;
}

} // namespace lw
