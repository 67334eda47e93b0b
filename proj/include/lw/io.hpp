#pragma once

#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "lw/covers.hpp"
#include "lw/functional.hpp"
#include "lw/linalg.hpp"
#include "lw/polytope.hpp"
#include "lw/rational.hpp"

namespace lw {

using json = nlohmann::json;

// Basis: {"n": int, "vectors": [[...], ...]} (one entry per basis vector)
inline json basis_to_json(const Basis& B) {
    json vecs = json::array();
    for (int j = 0; j < B.dim(); ++j) {
        json v = json::array();
        for (int i = 0; i < B.dim(); ++i) v.push_back(B.M(i, j));
        vecs.push_back(v);
    }
    return {{"n", B.dim()}, {"vectors", vecs}};
}

inline Basis basis_from_json(const json& j) {
    const int n = j.at("n").get<int>();
    const auto& vecs = j.at("vectors");
    if (static_cast<int>(vecs.size()) != n)
        throw std::invalid_argument("basis_from_json: need n vectors");
    Mat M(n, n);
    for (int c = 0; c < n; ++c) {
        if (static_cast<int>(vecs[c].size()) != n)
            throw std::invalid_argument("basis_from_json: vector length mismatch");
        for (int r = 0; r < n; ++r) M(r, c) = vecs[c][r].get<double>();
    }
    return Basis(M);
}

// Cover: {"n": int, "S": [...], "subsets": [[...], ...], "weights": [[num, den], ...]}
inline json cover_to_json(const IndexCover& c) {
    json w = json::array();
    for (const auto& r : c.weights) w.push_back({r.num, r.den});
    return {{"n", c.n}, {"S", c.S}, {"subsets", c.subsets}, {"weights", w}};
}

inline IndexCover cover_from_json(const json& j) {
    IndexCover c;
    c.n = j.at("n").get<int>();
    c.S = j.at("S").get<std::vector<int>>();
    c.subsets = j.at("subsets").get<std::vector<std::vector<int>>>();
    for (const auto& w : j.at("weights"))
        c.weights.push_back(Rational{w.at(0).get<std::int64_t>(), w.at(1).get<std::int64_t>()});
    validate(c);
    return c;
}

// Body: {"kind": "cube"|"centered_cube"|"cross"|"simplex"|"vrep"|"hrep"|"random", ...}
inline Polytope body_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "cube") return standard_body(BodyKind::Cube, j.at("n").get<int>());
    if (kind == "centered_cube") return standard_body(BodyKind::CenteredCube, j.at("n").get<int>());
    if (kind == "cross") return standard_body(BodyKind::Cross, j.at("n").get<int>());
    if (kind == "simplex") return standard_body(BodyKind::Simplex, j.at("n").get<int>());
    if (kind == "vrep") {
        const auto& vs = j.at("vertices");
        const int n = static_cast<int>(vs.at(0).size());
        Mat V(n, vs.size());
        for (std::size_t c = 0; c < vs.size(); ++c)
            for (int r = 0; r < n; ++r) V(r, c) = vs[c][r].get<double>();
        return make_polytope(V);
    }
    if (kind == "hrep") {
        const auto& hs = j.at("halfspaces");
        const int n = static_cast<int>(hs.at(0).at("a").size());
        Mat A(hs.size(), n);
        Vec b(hs.size());
        for (std::size_t r = 0; r < hs.size(); ++r) {
            for (int c = 0; c < n; ++c) A(r, c) = hs[r].at("a")[c].get<double>();
            b(r) = hs[r].at("b").get<double>();
        }
        return polytope_from_halfspaces(A, b);
    }
    if (kind == "random") {
        const int n = j.at("n").get<int>();
        const std::uint64_t seed = j.value("seed", 1);
        const int pts = j.value("points", 2 * n + 6);
        const std::string shape = j.value("shape", "gaussian");
        const bool centered = j.value("centered", true);
        return random_polytope(seed, n, pts,
                               shape == "ball" ? RandomShape::Ball : RandomShape::Gaussian,
                               centered);
    }
    throw std::invalid_argument("body_from_json: unknown kind '" + kind + "'");
}

inline json body_to_json(const Polytope& P) {
    json vs = json::array();
    for (int c = 0; c < P.verts.cols(); ++c) {
        json v = json::array();
        for (int r = 0; r < P.dim; ++r) v.push_back(P.verts(r, c));
        vs.push_back(v);
    }
    return {{"kind", "vrep"}, {"vertices", vs}};
}

// Function: {"family": "indicator"|"exp_norm"|"cone", "body": <body>}
inline LogConcaveFn function_from_json(const json& j) {
    const std::string fam = j.at("family").get<std::string>();
    const Polytope K = body_from_json(j.at("body"));
    if (fam == "indicator") return make_indicator(K);
    if (fam == "exp_norm") return make_exp_norm(K);
    if (fam == "cone") return make_cone(K);
    throw std::invalid_argument("function_from_json: unknown family '" + fam + "'");
}

/// Built-in named bodies: cube3, centered_cube4, cross2, simplex5, ...
inline Polytope named_body(const std::string& name) {
    auto split = [&](const std::string& prefix, BodyKind kind, Polytope* out) {
        if (name.rfind(prefix, 0) != 0) return false;
        const std::string tail = name.substr(prefix.size());
        if (tail.empty() || tail.find_first_not_of("0123456789") != std::string::npos) return false;
        *out = standard_body(kind, std::stoi(tail));
        return true;
    };
    Polytope P;
    if (split("centered_cube", BodyKind::CenteredCube, &P)) return P;
    if (split("cube", BodyKind::Cube, &P)) return P;
    if (split("cross", BodyKind::Cross, &P)) return P;
    if (split("simplex", BodyKind::Simplex, &P)) return P;
    throw std::invalid_argument("named_body: unknown body '" + name + "'");
}

/// Built-in named covers for ambient dimension n:
///   lw           the hyperplane cover  S_j = [n] \ {j}, p_j = 1/(n-1)
///   partition    singletons of [n], weight 1
///   partition-12 singletons of the listed ground indices (digits)
///   bt-k2-m3     first enumerated equal-weight cover with k=2, m=3
inline IndexCover named_cover(const std::string& name, int n) {
    if (name == "lw") return lw_cover(n);
    if (name == "partition") return partition_cover(n);
    if (name.rfind("partition-", 0) == 0) {
        std::vector<int> ground;
        for (char ch : name.substr(10)) {
            if (ch < '1' || ch > '9') throw std::invalid_argument("named_cover: bad ground index");
            ground.push_back(ch - '0');
        }
        return partition_cover(n, ground);
    }
    if (name.rfind("bt-k", 0) == 0) {
        const auto mpos = name.find("-m");
        if (mpos == std::string::npos) throw std::invalid_argument("named_cover: expected bt-k<k>-m<m>");
        const int k = std::stoi(name.substr(4, mpos - 4));
        const int m = std::stoi(name.substr(mpos + 2));
        auto cs = enumerate_equal_weight_covers(n, k, m);
        if (cs.empty()) throw std::invalid_argument("named_cover: no such cover exists");
        return cs.front();
    }
    throw std::invalid_argument("named_cover: unknown cover '" + name + "'");
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file '" + path + "'");
    json j;
    in >> j;
    return j;
}

inline json report_to_json(const VerificationReport& r) {
    return {{"statement", r.statement}, {"variant", r.variant},   {"lhs", r.lhs},
            {"rhs", r.rhs},             {"ratio", r.ratio},       {"constant", r.constant},
            {"mc_sigma", r.mc_sigma},   {"degenerate", r.degenerate},
            {"inputs_digest", r.inputs_digest},                   {"notes", r.notes}};
}

} // namespace lw
