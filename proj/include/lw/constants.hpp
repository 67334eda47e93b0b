#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "lw/covers.hpp"
#include "lw/linalg.hpp"

namespace lw {

inline double factorial(int k) {
    if (k < 0 || k > 20) throw std::invalid_argument("factorial: argument out of range");
    double r = 1.0;
    for (int i = 2; i <= k; ++i) r *= i;
    return r;
}

inline double binomial(int n, int k) {
    if (k < 0 || k > n || n > 20) throw std::invalid_argument("binomial: argument out of range");
    return factorial(n) / (factorial(k) * factorial(n - k));
}

namespace detail {
inline std::vector<Vec> pick(const Basis& B, const std::vector<int>& idx) {
    std::vector<Vec> vs;
    for (int i : idx) vs.push_back(B.vector(i - 1)); // 1-based indices
    return vs;
}
inline std::vector<int> set_minus(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}
} // namespace detail

/// Wedge over {w_k : k in idx} with the empty-wedge-equals-1 convention.
inline double wedge_over(const Basis& B, const std::vector<int>& idx) {
    return wedge(detail::pick(B, idx));
}

/// BL1 = prod_j |wedge_{k in S\S_j} w_k|^{p_j} / |wedge_{i in S} w_i|^{p-1}.
/// Evaluated in log space; weights are exact rationals.
inline double bl1(const Basis& B, const IndexCover& c) {
    validate(c);
    const double wS = wedge_over(B, c.S);
    if (wS <= 0.0) throw std::invalid_argument("bl1: {w_k : k in S} linearly dependent");
    double lg = -(c.p().value() - 1.0) * std::log(wS);
    for (int j = 0; j < c.m(); ++j) {
        const double wj = wedge_over(B, detail::set_minus(c.S, c.subsets[j]));
        if (wj <= 0.0) throw std::invalid_argument("bl1: dependent complement system");
        lg += c.weights[j].value() * std::log(wj);
    }
    return std::exp(lg);
}

/// BL2 = prod_j |wedge_{k in S_j} w_k|^{p_j} / |wedge_{i in S} w_i|.
inline double bl2(const Basis& B, const IndexCover& c) {
    validate(c);
    const double wS = wedge_over(B, c.S);
    if (wS <= 0.0) throw std::invalid_argument("bl2: {w_k : k in S} linearly dependent");
    double lg = -std::log(wS);
    for (int j = 0; j < c.m(); ++j) {
        const double wj = wedge_over(B, c.subsets[j]);
        if (wj <= 0.0) throw std::invalid_argument("bl2: dependent subset system");
        lg += c.weights[j].value() * std::log(wj);
    }
    return std::exp(lg);
}

/// BL1 of the dual basis equals BL2 of the primal basis on covers of [n];
/// also checks, per j, |wedge_{k not in S_j} v_k| = |wedge_{k in S_j} w_k| / |wedge w_i|.
/// Returns the maximum relative residual.
inline double bl_duality_residual(const Basis& B, const IndexCover& c) {
    if (!c.covers_all()) throw std::invalid_argument("bl_duality_residual: cover must cover [n]");
    const Basis D = dual_basis(B);
    const double lhs = bl1(D, c), rhs = bl2(B, c);
    double res = std::abs(lhs - rhs) / rhs;
    const double wAll = wedge_over(B, c.S);
    for (int j = 0; j < c.m(); ++j) {
        const double lv = wedge_over(D, detail::set_minus(c.S, c.subsets[j]));
        const double rw = wedge_over(B, c.subsets[j]) / wAll;
        res = std::max(res, std::abs(lv - rw) / rw);
    }
    return res;
}

enum class Theorem {
    AffineBT,        // four affine Bollobas-Thomason inequalities
    LocalLW,         // four restricted/local inequalities
    DualBT,          // four dual inequalities
    RestrictedDual,  // four restricted dual inequalities
    RestrictedDualCentered, // Gamma-based constants, max section at 0
    GagliardoNirenberg,
    FunctionalBT,
    MinCorollary,
    FunctionalLocal,
    ReversePowers,   // powered reverse family
    ReverseNoPowers, // restriction-based reverse family
    ReverseCentered, // Gamma-based reverse family
};

struct PrefactorSpec {
    Theorem theorem;
    int variant; // 1..4
};

/// The combinatorial constant of the named theorem/variant, excluding the
/// BL factor (which depends on the basis). `n` is the ambient dimension
/// (or, for restricted/centered families, unused where the cover carries d).
inline double prefactor(const PrefactorSpec& spec, int n, const IndexCover& c) {
    if (spec.variant < 1 || spec.variant > 4)
        throw std::invalid_argument("prefactor: variant must be in 1..4");
    const CoverStats st = cover_stats(c);
    const double p = st.p.value();
    const int d = st.d, m = c.m();
    double lg = 0.0;
    auto pw = [&](int j) { return c.weights[j].value(); };
    switch (spec.theorem) {
        case Theorem::AffineBT:
            return 1.0;
        case Theorem::LocalLW:
            // odd variants: prod C(n-d+d_j, d_j)^{p_j} / C(n, d)
            // even variants: prod C(n-d_j, n-d)^{p_j} / C(n, d)^{p-1}
            if (spec.variant % 2 == 1) {
                for (int j = 0; j < m; ++j) lg += pw(j) * std::log(binomial(n - d + st.dj[j], st.dj[j]));
                lg -= std::log(binomial(n, d));
            } else {
                for (int j = 0; j < m; ++j) lg += pw(j) * std::log(binomial(n - st.dj[j], n - d));
                lg -= (p - 1.0) * std::log(binomial(n, d));
            }
            return std::exp(lg);
        case Theorem::DualBT:
            if (spec.variant % 2 == 1) {
                for (int j = 0; j < m; ++j) lg += pw(j) * std::log(factorial(st.dj[j]));
                lg -= std::log(factorial(n));
            } else {
                for (int j = 0; j < m; ++j) lg += pw(j) * std::log(factorial(st.dtilde[j]));
                lg -= (p - 1.0) * std::log(factorial(n));
            }
            return std::exp(lg);
        case Theorem::RestrictedDual:
        case Theorem::ReversePowers: {
            // dual restricted constants d_j^{p_j d_j} / d^d (with n in the
            // ambient reverse family); d here is the cover's ground dimension
            const int dd = (spec.theorem == Theorem::ReversePowers) ? n : d;
            if (spec.variant % 2 == 1) {
                for (int j = 0; j < m; ++j) lg += pw(j) * st.dj[j] * std::log(double(st.dj[j]));
                lg -= dd * std::log(double(dd));
            } else {
                for (int j = 0; j < m; ++j)
                    if (st.dtilde[j] > 0) lg += pw(j) * st.dtilde[j] * std::log(double(st.dtilde[j]));
                lg -= dd * (p - 1.0) * std::log(double(dd));
            }
            return std::exp(lg);
        }
        case Theorem::ReverseNoPowers:
            return prefactor({Theorem::ReversePowers, spec.variant}, n, c);
        case Theorem::RestrictedDualCentered:
        case Theorem::ReverseCentered: {
            // prod (d_j!)^{p/m} / Gamma(1 + q m / p)^{p/m}, q the carrier dim
            for (int j = 1; j < m; ++j)
                if (c.weights[j] != c.weights[0])
                    throw std::invalid_argument("prefactor: centered family needs equal weights");
            const int q = (spec.theorem == Theorem::ReverseCentered) ? n : d;
            const double pm = p / m;
            if (spec.variant % 2 == 1) {
                for (int j = 0; j < m; ++j) lg += pm * std::log(factorial(st.dj[j]));
                lg -= pm * std::lgamma(1.0 + q * m / p);
            } else {
                for (int j = 0; j < m; ++j) lg += pm * std::log(factorial(st.dtilde[j]));
                lg -= pm * std::lgamma(1.0 + q * m * (p - 1.0) / p);
            }
            return std::exp(lg);
        }
        case Theorem::FunctionalBT:
        case Theorem::GagliardoNirenberg:
        case Theorem::MinCorollary:
            // n! / prod (d_j!)^{p_j} for odd, (n!)^{p-1} / prod (dtilde_j!)^{p_j} for even
            if (spec.theorem == Theorem::GagliardoNirenberg) return 1.0;
            if (spec.variant % 2 == 1) {
                lg = std::log(factorial(n));
                for (int j = 0; j < m; ++j) lg -= pw(j) * std::log(factorial(st.dj[j]));
            } else {
                lg = (p - 1.0) * std::log(factorial(n));
                for (int j = 0; j < m; ++j) lg -= pw(j) * std::log(factorial(st.dtilde[j]));
            }
            return std::exp(lg);
        case Theorem::FunctionalLocal:
            // d! / prod (d_j!)^{p_j} for odd, (d!)^{p-1} / prod(dtilde_j!)^{p_j} for even
            if (spec.variant % 2 == 1) {
                lg = std::log(factorial(d));
                for (int j = 0; j < m; ++j) lg -= pw(j) * std::log(factorial(st.dj[j]));
            } else {
                lg = (p - 1.0) * std::log(factorial(d));
                for (int j = 0; j < m; ++j) lg -= pw(j) * std::log(factorial(st.dtilde[j]));
            }
            return std::exp(lg);
    }
    throw std::invalid_argument("prefactor: unknown theorem");
}

/// The BL factor used by a given variant: odd variants pair with the subsets
/// spanned "as stated" (BL1 for 1, BL2 for 3), even ones swap.
inline double bl_for_variant(const Basis& B, const IndexCover& c, int variant) {
    switch (variant) {
        case 1: return bl1(B, c);
        case 2: return bl2(B, c);
        case 3: return bl2(B, c);
        case 4: return bl1(B, c);
    }
    throw std::invalid_argument("bl_for_variant: variant must be in 1..4");
}

} // namespace lw
