#pragma once

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "lw/rational.hpp"

namespace lw {

/// Uniform cover of a ground set S subset of [n] with positive rational
/// weights: for every i in S, sum_j p_j * chi_{S_j}(i) = 1 exactly.
/// Indices are 1-based throughout, matching common convention.
struct IndexCover {
    int n = 0;
    std::vector<int> S;                  // sorted ground set
    std::vector<std::vector<int>> subsets; // each sorted, subset of S
    std::vector<Rational> weights;

    int m() const { return static_cast<int>(subsets.size()); }
    int d() const { return static_cast<int>(S.size()); }
    bool covers_all() const { return d() == n; }

    Rational p() const {
        Rational s{0};
        for (const auto& w : weights) s = s + w;
        return s;
    }

    void canonicalize() {
        std::sort(S.begin(), S.end());
        for (auto& s : subsets) std::sort(s.begin(), s.end());
        // covers compared as multisets of (subset, weight) pairs
        std::vector<std::size_t> idx(subsets.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            if (subsets[a] != subsets[b]) return subsets[a] < subsets[b];
            return weights[a].num * weights[b].den < weights[b].num * weights[a].den;
        });
        std::vector<std::vector<int>> ss;
        std::vector<Rational> ww;
        for (auto i : idx) { ss.push_back(subsets[i]); ww.push_back(weights[i]); }
        subsets = std::move(ss);
        weights = std::move(ww);
    }

    bool same_as(const IndexCover& o) const {
        IndexCover a = *this, b = o;
        a.canonicalize();
        b.canonicalize();
        return a.n == b.n && a.S == b.S && a.subsets == b.subsets && a.weights == b.weights;
    }
};

/// Exact-rational uniform-cover check; throws naming the first bad index.
inline void validate(const IndexCover& c) {
    if (c.subsets.empty()) throw std::invalid_argument("cover: needs at least one subset");
    if (c.subsets.size() != c.weights.size())
        throw std::invalid_argument("cover: subsets/weights length mismatch");
    for (const auto& w : c.weights)
        if (!(Rational{0} < w)) throw std::invalid_argument("cover: weights must be positive");
    std::set<int> ground(c.S.begin(), c.S.end());
    for (int i : c.S)
        if (i < 1 || i > c.n) throw std::invalid_argument("cover: ground set index out of range");
    for (const auto& s : c.subsets) {
        if (s.empty()) throw std::invalid_argument("cover: empty subset");
        for (int i : s)
            if (!ground.count(i)) throw std::invalid_argument("cover: subset not contained in S");
    }
    for (int i : c.S) {
        Rational sum{0};
        for (int j = 0; j < c.m(); ++j)
            if (std::binary_search(c.subsets[j].begin(), c.subsets[j].end(), i))
                sum = sum + c.weights[j];
        if (sum != Rational{1})
            throw std::invalid_argument("cover: index " + std::to_string(i) +
                                        " has weight sum " + sum.str());
    }
}

/// (S \ S_1, ..., S \ S_m) with weights p_j / (p - 1).
inline IndexCover complement_cover(const IndexCover& c) {
    validate(c);
    const Rational p = c.p();
    if (!(Rational{1} < p))
        throw std::domain_error("complement_cover: p = 1 (partition), weights degenerate");
    IndexCover out;
    out.n = c.n;
    out.S = c.S;
    for (int j = 0; j < c.m(); ++j) {
        std::vector<int> comp;
        std::set_difference(c.S.begin(), c.S.end(), c.subsets[j].begin(), c.subsets[j].end(),
                            std::back_inserter(comp));
        if (comp.empty())
            throw std::domain_error("complement_cover: S_j = S yields empty complement subset");
        out.subsets.push_back(std::move(comp));
        out.weights.push_back(c.weights[j] / (p - Rational{1}));
    }
    validate(out);
    return out;
}

struct CoverStats {
    Rational p;
    int d;
    std::vector<int> dj;
    std::vector<int> dtilde; // n - d_j for full covers, d - d_j for restricted ones
};

inline CoverStats cover_stats(const IndexCover& c) {
    validate(c);
    CoverStats s;
    s.p = c.p();
    s.d = c.d();
    for (const auto& sub : c.subsets) {
        const int dj = static_cast<int>(sub.size());
        s.dj.push_back(dj);
        s.dtilde.push_back(c.covers_all() ? c.n - dj : s.d - dj);
    }
    return s;
}

/// All covers of [n] by m nonempty subsets with weights 1/k, each index in
/// exactly k subsets; deduplicated up to reordering of subsets.
inline std::vector<IndexCover> enumerate_equal_weight_covers(int n, int k, int m) {
    if (n > 8 || m > 6) throw std::invalid_argument("enumerate: bounded to n <= 8, m <= 6");
    if (k < 1 || k >= m * n) throw std::invalid_argument("enumerate: need 1 <= k < m*n");
    if (k > m) return {};
    std::vector<IndexCover> out;
    std::set<std::vector<std::vector<int>>> seen;
    // For each index choose which k of the m subsets contain it.
    std::vector<std::vector<int>> choices; // k-subsets of [0, m)
    {
        std::vector<int> pick(k);
        std::function<void(int, int)> rec = [&](int start, int depth) {
            if (depth == k) { choices.push_back(pick); return; }
            for (int j = start; j < m; ++j) { pick[depth] = j; rec(j + 1, depth + 1); }
        };
        rec(0, 0);
    }
    std::vector<std::vector<int>> subsets(m);
    std::function<void(int)> rec = [&](int i) {
        if (i == n) {
            for (const auto& s : subsets)
                if (s.empty()) return;
            auto canon = subsets;
            std::sort(canon.begin(), canon.end());
            if (!seen.insert(canon).second) return;
            IndexCover c;
            c.n = n;
            for (int x = 1; x <= n; ++x) c.S.push_back(x);
            c.subsets = canon;
            c.weights.assign(m, Rational{1, k});
            validate(c);
            out.push_back(std::move(c));
            return;
        }
        for (const auto& ch : choices) {
            for (int j : ch) subsets[j].push_back(i + 1);
            rec(i + 1);
            for (int j : ch) subsets[j].pop_back();
        }
    };
    rec(0);
    return out;
}

/// The Loomis-Whitney cover: S_j = [n] \ {j}, p_j = 1/(n-1).
inline IndexCover lw_cover(int n) {
    IndexCover c;
    c.n = n;
    for (int i = 1; i <= n; ++i) c.S.push_back(i);
    for (int j = 1; j <= n; ++j) {
        std::vector<int> s;
        for (int i = 1; i <= n; ++i)
            if (i != j) s.push_back(i);
        c.subsets.push_back(std::move(s));
        c.weights.push_back(Rational{1, n - 1});
    }
    return c;
}

/// Partition of a ground set into singletons, all weights 1.
inline IndexCover partition_cover(int n, std::vector<int> ground = {}) {
    IndexCover c;
    c.n = n;
    if (ground.empty())
        for (int i = 1; i <= n; ++i) ground.push_back(i);
    std::sort(ground.begin(), ground.end());
    c.S = ground;
    for (int i : ground) {
        c.subsets.push_back({i});
        c.weights.push_back(Rational{1});
    }
    return c;
}

} // namespace lw
