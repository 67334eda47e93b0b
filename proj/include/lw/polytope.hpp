#pragma once

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "lw/linalg.hpp"
#include "lw/rng.hpp"

namespace lw {

struct FlatInputError : std::runtime_error {
    int affine_dim;
    FlatInputError(int ad, int d)
        : std::runtime_error("hull: input is flat (affine dimension " + std::to_string(ad) +
                             " < " + std::to_string(d) + ")"),
          affine_dim(ad) {}
};

struct Facet {
    std::vector<int> verts; // d point indices
    Vec normal;             // unit outward normal, normal . x <= offset inside
    double offset = 0.0;
};

struct HullResult {
    Mat vertices;              // d x V extreme points
    std::vector<Facet> facets; // indices into `vertices`
    double diameter = 0.0;
};

namespace hulldetail {

inline Vec facet_plane(const Mat& pts, const std::vector<int>& vs, const Vec& inside, double& offset) {
    const int d = static_cast<int>(pts.rows());
    Mat E(d, d - 1);
    for (int i = 1; i < d; ++i) E.col(i - 1) = pts.col(vs[i]) - pts.col(vs[0]);
    Eigen::JacobiSVD<Mat> svd(E, Eigen::ComputeFullU);
    Vec n = svd.matrixU().col(d - 1);
    offset = n.dot(pts.col(vs[0]));
    if (n.dot(inside) > offset) { n = -n; offset = -offset; }
    return n;
}

} // namespace hulldetail

/// Incremental beneath-beyond convex hull, simplicial facets, d in [2, 6].
/// Input is pre-shuffled by a fixed seeded permutation; deterministic.
inline HullResult convex_hull(const Mat& points) {
    const int d = static_cast<int>(points.rows());
    const int N = static_cast<int>(points.cols());
    if (d < 2 || d > 6) throw std::invalid_argument("hull: dimension must be in [2, 6]");
    if (N < d + 1) throw FlatInputError(N - 1, d);

    Vec lo = points.rowwise().minCoeff(), hi = points.rowwise().maxCoeff();
    const double diam = std::max((hi - lo).norm(), 1e-300);
    const double eps = 1e-9 * diam;

    std::vector<int> order(N);
    std::iota(order.begin(), order.end(), 0);
    {
        Rng rng(0x5eedULL);
        for (int i = N - 1; i > 0; --i) std::swap(order[i], order[rng.uniform_int(0, i)]);
    }

    // initial affinely independent set, greedy farthest-residual
    std::vector<int> init{order[0]};
    Mat F(d, d); // orthonormal directions of the affine hull
    int rank = 0;
    while (rank < d) {
        int best = -1;
        double bestr = eps;
        Vec bestu;
        for (int idx : order) {
            Vec u = points.col(idx) - points.col(init[0]);
            u -= F.leftCols(rank) * (F.leftCols(rank).transpose() * u);
            if (u.norm() > bestr) { bestr = u.norm(); best = idx; bestu = u; }
        }
        if (best < 0) throw FlatInputError(rank, d);
        init.push_back(best);
        F.col(rank++) = bestu / bestu.norm();
    }

    struct F_ {
        std::vector<int> verts;
        Vec normal;
        double offset;
        std::vector<int> neighbors; // facet ids, one per opposite vertex
        std::vector<int> outside;
        bool alive = true;
    };
    std::vector<F_> fs;

    Vec inside = Vec::Zero(d);
    for (int v : init) inside += points.col(v);
    inside /= double(init.size());

    // d+1 initial facets, each omitting one simplex vertex
    for (int skip = 0; skip <= d; ++skip) {
        F_ f;
        for (int i = 0; i <= d; ++i)
            if (i != skip) f.verts.push_back(init[i]);
        f.normal = hulldetail::facet_plane(points, f.verts, inside, f.offset);
        for (int i = 0; i <= d; ++i)
            if (i != skip) f.neighbors.push_back(-1);
        fs.push_back(std::move(f));
    }
    // neighbors[i] is the facet not containing verts[i]
    for (int a = 0; a <= d; ++a) {
        std::vector<int> nb(d);
        for (int i = 0; i < d; ++i) {
            const int v = fs[a].verts[i];
            for (int b = 0; b <= d; ++b) {
                if (b == a) continue;
                if (std::find(fs[b].verts.begin(), fs[b].verts.end(), v) == fs[b].verts.end()) {
                    nb[i] = b;
                    break;
                }
            }
        }
        fs[a].neighbors = nb;
    }

    auto dist = [&](const F_& f, int pidx) { return f.normal.dot(points.col(pidx)) - f.offset; };

    for (int idx : order) {
        if (std::find(init.begin(), init.end(), idx) != init.end()) continue;
        for (auto& f : fs)
            if (f.alive && dist(f, idx) > eps) { f.outside.push_back(idx); break; }
    }

    std::deque<int> active;
    for (int i = 0; i < static_cast<int>(fs.size()); ++i)
        if (!fs[i].outside.empty()) active.push_back(i);

    while (!active.empty()) {
        const int fi = active.front();
        active.pop_front();
        if (!fs[fi].alive || fs[fi].outside.empty()) continue;
        int p = fs[fi].outside[0];
        double far = dist(fs[fi], p);
        for (int q : fs[fi].outside)
            if (dist(fs[fi], q) > far) { far = dist(fs[fi], q); p = q; }

        // visible set by flood fill over neighbors
        std::vector<int> visible{fi};
        std::vector<char> seen(fs.size(), 0);
        seen[fi] = 1;
        for (std::size_t h = 0; h < visible.size(); ++h)
            for (int nb : fs[visible[h]].neighbors)
                if (nb >= 0 && !seen[nb] && fs[nb].alive) {
                    seen[nb] = 1;
                    if (dist(fs[nb], p) > eps) visible.push_back(nb);
                }

        std::vector<int> orphaned;
        for (int v : visible) {
            fs[v].alive = false;
            for (int q : fs[v].outside)
                if (q != p) orphaned.push_back(q);
        }

        // horizon ridges: (visible facet, non-visible neighbor)
        std::map<std::vector<int>, int> ridge_to_new;
        std::vector<int> created;
        for (int v : visible) {
            for (int i = 0; i < d; ++i) {
                const int nb = fs[v].neighbors[i];
                if (nb < 0 || !fs[nb].alive) continue; // neighbor visible too
                F_ nf;
                for (int j = 0; j < d; ++j)
                    if (j != i) nf.verts.push_back(fs[v].verts[j]);
                nf.verts.push_back(p);
                nf.normal = hulldetail::facet_plane(points, nf.verts, inside, nf.offset);
                nf.neighbors.assign(d, -1);
                const int nfi = static_cast<int>(fs.size());
                // across the ridge (opposite p, which is verts[d-1]) sits nb
                nf.neighbors[d - 1] = nb;
                for (int j = 0; j < d; ++j)
                    if (fs[nb].neighbors[j] == v) fs[nb].neighbors[j] = nfi;
                fs.push_back(std::move(nf));
                created.push_back(nfi);
            }
        }
        // stitch new facets together along ridges containing p
        std::map<std::vector<int>, std::pair<int, int>> open; // ridge -> (facet, slot)
        for (int nfi : created) {
            for (int i = 0; i < d - 1; ++i) { // slots opposite the old-ridge verts
                std::vector<int> key;
                for (int j = 0; j < d; ++j)
                    if (j != i) key.push_back(fs[nfi].verts[j]);
                std::sort(key.begin(), key.end());
                auto it = open.find(key);
                if (it == open.end()) {
                    open[key] = {nfi, i};
                } else {
                    fs[nfi].neighbors[i] = it->second.first;
                    fs[it->second.first].neighbors[it->second.second] = nfi;
                    open.erase(it);
                }
            }
        }
        if (!open.empty()) throw std::runtime_error("hull: horizon stitching failed");

        // reassign orphaned outside points
        for (int q : orphaned) {
            for (int nfi : created)
                if (dist(fs[nfi], q) > eps) { fs[nfi].outside.push_back(q); break; }
        }
        for (int nfi : created)
            if (!fs[nfi].outside.empty()) active.push_back(nfi);
    }

    // collect extreme points, reindex
    std::vector<int> used(N, -1);
    std::vector<int> keep;
    for (const auto& f : fs)
        if (f.alive)
            for (int v : f.verts)
                if (used[v] < 0) { used[v] = static_cast<int>(keep.size()); keep.push_back(v); }
    HullResult hr;
    hr.vertices.resize(d, static_cast<Eigen::Index>(keep.size()));
    for (std::size_t i = 0; i < keep.size(); ++i) hr.vertices.col(static_cast<Eigen::Index>(i)) = points.col(keep[i]);
    for (const auto& f : fs) {
        if (!f.alive) continue;
        Facet out;
        for (int v : f.verts) out.verts.push_back(used[v]);
        out.normal = f.normal;
        out.offset = f.offset;
        hr.facets.push_back(std::move(out));
    }
    hr.diameter = diam;

    // sanity: every input point beneath every facet
    for (const auto& f : hr.facets)
        for (int c = 0; c < N; ++c)
            if (f.normal.dot(points.col(c)) - f.offset > 50 * eps)
                throw std::runtime_error("hull: consistency check failed");
    return hr;
}

/// Convex body carrying both representations. `A x <= b` rowwise.
struct Polytope {
    int dim = 0;
    Mat verts; // dim x V
    Mat A;     // F x dim, unit rows
    Vec b;
    double diameter = 0.0;
};

namespace hulldetail {

inline void canonicalize_halfspaces(Polytope& P, double eps) {
    std::vector<int> keep;
    for (int i = 0; i < P.A.rows(); ++i) {
        bool dup = false;
        for (int j : keep)
            if (P.A.row(i).dot(P.A.row(j)) > 1.0 - 1e-9 && std::abs(P.b(i) - P.b(j)) < eps) {
                dup = true;
                break;
            }
        if (!dup) keep.push_back(i);
    }
    Mat A(static_cast<Eigen::Index>(keep.size()), P.dim);
    Vec b(static_cast<Eigen::Index>(keep.size()));
    for (std::size_t i = 0; i < keep.size(); ++i) {
        A.row(static_cast<Eigen::Index>(i)) = P.A.row(keep[i]);
        b(static_cast<Eigen::Index>(i)) = P.b(keep[i]);
    }
    P.A = std::move(A);
    P.b = std::move(b);
}

} // namespace hulldetail

/// Hull of a point cloud; builds both representations. Dim 1 allowed.
inline Polytope make_polytope(const Mat& points) {
    Polytope P;
    P.dim = static_cast<int>(points.rows());
    if (P.dim == 0) throw std::invalid_argument("make_polytope: zero-dimensional ambient");
    if (P.dim == 1) {
        const double lo = points.minCoeff(), hi = points.maxCoeff();
        P.verts.resize(1, 2);
        P.verts << lo, hi;
        P.A.resize(2, 1);
        P.A << 1, -1;
        P.b.resize(2);
        P.b << hi, -lo;
        P.diameter = hi - lo;
        return P;
    }
    HullResult hr = convex_hull(points);
    P.verts = hr.vertices;
    P.A.resize(static_cast<Eigen::Index>(hr.facets.size()), P.dim);
    P.b.resize(static_cast<Eigen::Index>(hr.facets.size()));
    for (std::size_t i = 0; i < hr.facets.size(); ++i) {
        P.A.row(static_cast<Eigen::Index>(i)) = hr.facets[i].normal.transpose();
        P.b(static_cast<Eigen::Index>(i)) = hr.facets[i].offset;
    }
    P.diameter = hr.diameter;
    hulldetail::canonicalize_halfspaces(P, 1e-9 * hr.diameter);
    return P;
}

/// k-dimensional volume of the hull of a point cloud in R^k; 0 if flat.
/// k = 0 is the counting convention: volume 1.
inline double points_volume(const Mat& points, int k) {
    if (k == 0) return 1.0;
    if (points.cols() == 0) return 0.0;
    if (k == 1) return points.maxCoeff() - points.minCoeff();
    if (points.cols() < k + 1) return 0.0;
    HullResult hr;
    try {
        hr = convex_hull(points);
    } catch (const FlatInputError&) {
        return 0.0;
    }
    Vec c = Vec::Zero(k);
    for (int i = 0; i < hr.vertices.cols(); ++i) c += hr.vertices.col(i);
    c /= double(hr.vertices.cols());
    double vol = 0.0;
    const double kfac = std::tgamma(k + 1.0);
    Mat E(k, k);
    for (const auto& f : hr.facets) {
        for (int i = 0; i < k; ++i) E.col(i) = hr.vertices.col(f.verts[i]) - c;
        vol += std::abs(E.determinant()) / kfac;
    }
    return vol;
}

inline double volume(const Polytope& P) { return points_volume(P.verts, P.dim); }

/// Vertex enumeration for an H-polytope by basis-subset enumeration.
/// Desk-scale only: throws if C(F, d) exceeds the work guard.
inline Mat enumerate_vertices(const Mat& A, const Vec& b, double scale_hint = 1.0) {
    const int d = static_cast<int>(A.cols());
    const int F = static_cast<int>(A.rows());
    if (d == 0) throw std::invalid_argument("enumerate_vertices: zero-dimensional");
    double work = 1.0;
    for (int i = 0; i < d; ++i) work *= double(F - i) / double(i + 1);
    if (work > 4e6) throw std::runtime_error("enumerate_vertices: too many candidate bases");
    const double eps = 1e-9 * std::max(scale_hint, 1.0);
    std::vector<Vec> vs;
    std::vector<int> pick(d);
    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == d) {
            Mat M(d, d);
            Vec rhs(d);
            for (int i = 0; i < d; ++i) {
                M.row(i) = A.row(pick[i]);
                rhs(i) = b(pick[i]);
            }
            Eigen::PartialPivLU<Mat> lu(M);
            const double det = std::abs(lu.determinant());
            if (det < 1e-12) return;
            Vec x = lu.solve(rhs);
            if (!x.allFinite()) return;
            if (((A * x - b).array() > eps).any()) return;
            for (const auto& v : vs)
                if ((v - x).norm() < 10 * eps) return;
            vs.push_back(std::move(x));
            return;
        }
        if (F - start < d - depth) return;
        for (int i = start; i < F; ++i) { pick[depth] = i; rec(i + 1, depth + 1); }
    };
    rec(0, 0);
    Mat out(d, static_cast<Eigen::Index>(vs.size()));
    for (std::size_t i = 0; i < vs.size(); ++i) out.col(static_cast<Eigen::Index>(i)) = vs[i];
    return out;
}

inline Polytope polytope_from_halfspaces(const Mat& A, const Vec& b, double scale_hint = 1.0) {
    Mat V = enumerate_vertices(A, b, scale_hint);
    if (V.cols() == 0) throw std::runtime_error("polytope_from_halfspaces: empty or unbounded");
    if (V.cols() < A.cols() + 1)
        throw std::runtime_error("polytope_from_halfspaces: degenerate (lower-dimensional)");
    return make_polytope(V);
}

/// Orthogonal projection onto H, returned as a point cloud in H coordinates.
inline Mat project_points(const Polytope& P, const Subspace& H) {
    return H.frame.transpose() * P.verts;
}

/// |P_H K|, the dim(H)-dimensional volume of the projection.
inline double projection_volume(const Polytope& P, const Subspace& H) {
    return points_volume(project_points(P, H), H.dim());
}

struct AffineSlice {
    Vec base;
    Subspace direction_space;
};

/// Substitute x = base + F y into the halfspaces: the (possibly empty)
/// slice polytope in y-coordinates. Rows orthogonal to the slice either
/// drop out or certify emptiness.
struct SliceSystem {
    Mat A;
    Vec b;
    bool empty = false;
};

inline SliceSystem section_system(const Polytope& P, const AffineSlice& s) {
    const Mat& F = s.direction_space.frame;
    const int k = s.direction_space.dim();
    const double eps = 1e-12 * std::max(P.diameter, 1.0);
    SliceSystem out;
    std::vector<int> rows;
    Vec resid = P.b - P.A * s.base;
    Mat Ar = P.A * F;
    for (int i = 0; i < P.A.rows(); ++i) {
        if (Ar.row(i).norm() < 1e-12) {
            if (resid(i) < -eps) { out.empty = true; return out; }
            continue;
        }
        rows.push_back(i);
    }
    out.A.resize(static_cast<Eigen::Index>(rows.size()), k);
    out.b.resize(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out.A.row(static_cast<Eigen::Index>(i)) = Ar.row(rows[i]);
        out.b(static_cast<Eigen::Index>(i)) = resid(rows[i]);
    }
    return out;
}

/// dim(direction_space)-volume of K cut with the affine slice; 0 if empty.
inline double section_volume(const Polytope& P, const AffineSlice& s) {
    const int k = s.direction_space.dim();
    SliceSystem sys = section_system(P, s);
    if (sys.empty) return 0.0;
    if (k == 0) return (sys.b.size() == 0 || sys.b.minCoeff() >= 0.0) ? 1.0 : 0.0;
    if (k == 1) {
        double lo = -1e300, hi = 1e300;
        for (int i = 0; i < sys.A.rows(); ++i) {
            const double a = sys.A(i, 0), r = sys.b(i);
            if (a > 1e-12) hi = std::min(hi, r / a);
            else if (a < -1e-12) lo = std::max(lo, r / a);
            else if (r < 0.0) return 0.0;
        }
        if (lo <= -1e299 || hi >= 1e299)
            throw std::runtime_error("section_volume: unbounded slice");
        return std::max(0.0, hi - lo);
    }
    Mat V = enumerate_vertices(sys.A, sys.b, P.diameter);
    return points_volume(V, k);
}

/// Section through a linear subspace (base point 0).
inline double section_volume(const Polytope& P, const Subspace& H) {
    return section_volume(P, AffineSlice{Vec::Zero(P.dim), H});
}

/// inf{ lambda > 0 : x in lambda K }; requires 0 strictly interior.
inline double minkowski_functional(const Polytope& P, const Vec& x) {
    const double eps = 1e-9 * std::max(P.diameter, 1.0);
    if (P.b.minCoeff() <= eps)
        throw std::invalid_argument("minkowski_functional: origin not interior");
    double r = 0.0;
    for (int i = 0; i < P.A.rows(); ++i) r = std::max(r, P.A.row(i).dot(x) / P.b(i));
    return r;
}

inline bool contains(const Polytope& P, const Vec& x, double tol = 0.0) {
    return ((P.A * x - P.b).array() <= tol).all();
}

struct McEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
    std::uint64_t hits = 0, samples = 0;
};

/// Seeded rejection sampling in the bounding box. Output depends only on
/// (P, seed, samples).
inline McEstimate mc_volume(const Polytope& P, std::uint64_t seed, std::uint64_t samples) {
    Vec lo = P.verts.rowwise().minCoeff(), hi = P.verts.rowwise().maxCoeff();
    double boxvol = 1.0;
    for (int i = 0; i < P.dim; ++i) boxvol *= hi(i) - lo(i);
    Rng rng(seed);
    Vec x(P.dim);
    McEstimate est;
    est.samples = samples;
    for (std::uint64_t s = 0; s < samples; ++s) {
        for (int i = 0; i < P.dim; ++i) x(i) = rng.uniform(lo(i), hi(i));
        if (contains(P, x)) ++est.hits;
    }
    const double f = double(est.hits) / double(samples);
    est.estimate = boxvol * f;
    est.std_error = boxvol * std::sqrt(std::max(f * (1.0 - f), 1e-12 / samples) / double(samples));
    return est;
}

/// Centroid by fan triangulation from the vertex centroid.
inline Vec centroid(const Polytope& P) {
    const int d = P.dim;
    if (d == 1) return Vec::Constant(1, 0.5 * (P.verts.minCoeff() + P.verts.maxCoeff()));
    HullResult hr = convex_hull(P.verts);
    Vec c = Vec::Zero(d);
    for (int i = 0; i < hr.vertices.cols(); ++i) c += hr.vertices.col(i);
    c /= double(hr.vertices.cols());
    Vec acc = Vec::Zero(d);
    double vol = 0.0;
    Mat E(d, d);
    for (const auto& f : hr.facets) {
        Vec sc = c;
        for (int i = 0; i < d; ++i) {
            E.col(i) = hr.vertices.col(f.verts[i]) - c;
            sc += hr.vertices.col(f.verts[i]);
        }
        sc /= double(d + 1);
        const double v = std::abs(E.determinant());
        acc += v * sc;
        vol += v;
    }
    return acc / vol;
}

inline Polytope translate(const Polytope& P, const Vec& t) {
    Polytope Q = P;
    Q.verts.colwise() += t;
    Q.b += Q.A * t;
    return Q;
}

inline Polytope apply_linear(const Polytope& P, const Mat& T) {
    return make_polytope(T * P.verts);
}

enum class BodyKind { Cube, CenteredCube, Cross, Simplex };

inline Polytope standard_body(BodyKind kind, int n) {
    if (n < 1 || n > 6) throw std::invalid_argument("standard_body: dimension must be in [1, 6]");
    Polytope P;
    P.dim = n;
    switch (kind) {
        case BodyKind::Cube:
        case BodyKind::CenteredCube: {
            const double lo = kind == BodyKind::Cube ? 0.0 : -1.0;
            const int V = 1 << n;
            P.verts.resize(n, V);
            for (int v = 0; v < V; ++v)
                for (int i = 0; i < n; ++i) P.verts(i, v) = (v >> i) & 1 ? 1.0 : lo;
            P.A.resize(2 * n, n);
            P.b.resize(2 * n);
            P.A.setZero();
            for (int i = 0; i < n; ++i) {
                P.A(2 * i, i) = 1.0;
                P.b(2 * i) = 1.0;
                P.A(2 * i + 1, i) = -1.0;
                P.b(2 * i + 1) = -lo;
            }
            break;
        }
        case BodyKind::Cross: {
            P.verts.resize(n, 2 * n);
            P.verts.setZero();
            for (int i = 0; i < n; ++i) {
                P.verts(i, 2 * i) = 1.0;
                P.verts(i, 2 * i + 1) = -1.0;
            }
            const int F = 1 << n;
            P.A.resize(F, n);
            P.b.resize(F);
            const double inv = 1.0 / std::sqrt(double(n));
            for (int s = 0; s < F; ++s) {
                for (int i = 0; i < n; ++i) P.A(s, i) = ((s >> i) & 1 ? 1.0 : -1.0) * inv;
                P.b(s) = inv;
            }
            break;
        }
        case BodyKind::Simplex: {
            P.verts.resize(n, n + 1);
            P.verts.setZero();
            for (int i = 0; i < n; ++i) P.verts(i, i + 1) = 1.0;
            P.A.resize(n + 1, n);
            P.b.resize(n + 1);
            P.A.setZero();
            for (int i = 0; i < n; ++i) {
                P.A(i, i) = -1.0;
                P.b(i) = 0.0;
            }
            const double inv = 1.0 / std::sqrt(double(n));
            for (int i = 0; i < n; ++i) P.A(n, i) = inv;
            P.b(n) = inv;
            break;
        }
    }
    P.diameter = (P.verts.rowwise().maxCoeff() - P.verts.rowwise().minCoeff()).norm();
    return P;
}

/// Axis-aligned box prod [lo_i, hi_i].
inline Polytope box_body(const Vec& lo, const Vec& hi) {
    const int n = static_cast<int>(lo.size());
    const int V = 1 << n;
    Mat pts(n, V);
    for (int v = 0; v < V; ++v)
        for (int i = 0; i < n; ++i) pts(i, v) = (v >> i) & 1 ? hi(i) : lo(i);
    return make_polytope(pts);
}

enum class RandomShape { Gaussian, Ball };

/// Seeded random hull, optionally translated so the origin is interior.
inline Polytope random_polytope(std::uint64_t seed, int n, int num_points,
                                RandomShape shape = RandomShape::Gaussian,
                                bool zero_interior = true) {
    if (n > 6) throw std::invalid_argument("random_polytope: dimension must be <= 6");
    Rng rng(seed);
    Mat pts(n, num_points);
    for (int c = 0; c < num_points; ++c) {
        Vec x(n);
        for (int i = 0; i < n; ++i) x(i) = rng.normal();
        if (shape == RandomShape::Ball) {
            const double r = std::pow(rng.uniform(), 1.0 / n);
            x *= r / std::max(x.norm(), 1e-12);
        }
        pts.col(c) = x;
    }
    Polytope P = make_polytope(pts);
    if (zero_interior) P = translate(P, -centroid(P));
    return P;
}

/// max_{x in H} |K cut with (x + H^perp)|; unimodal by Brunn-Minkowski,
/// coarse grid then Nelder-Mead refinement. dim H <= 3.
struct MaxSection {
    Vec argmax_in_H; // coordinates in H's frame
    double value = 0.0;
};

inline MaxSection max_parallel_section(const Polytope& P, const Subspace& H,
                                       int grid_res = 17) {
    const int d = H.dim();
    if (d > 3) throw std::invalid_argument("max_parallel_section: dim H must be <= 3");
    const Subspace Hp = orth_complement(H);
    auto g = [&](const Vec& yH) {
        return section_volume(P, AffineSlice{H.embed(yH), Hp});
    };
    Mat proj = project_points(P, H);
    Vec lo = proj.rowwise().minCoeff(), hi = proj.rowwise().maxCoeff();
    long cells = 1;
    for (int i = 0; i < d; ++i) cells *= grid_res;
    if (cells > 50000) throw std::invalid_argument("max_parallel_section: grid too large");

    Vec best = 0.5 * (lo + hi);
    double bestv = g(best);
    std::vector<int> ix(d, 0);
    for (long c = 0; c < cells; ++c) {
        long t = c;
        Vec y(d);
        for (int i = 0; i < d; ++i) {
            ix[i] = static_cast<int>(t % grid_res);
            t /= grid_res;
            y(i) = lo(i) + (hi(i) - lo(i)) * (ix[i] + 0.5) / grid_res;
        }
        const double v = g(y);
        if (v > bestv) { bestv = v; best = y; }
    }

    // Nelder-Mead on -g around the best grid cell
    const double diamH = std::max((hi - lo).norm(), 1e-12);
    double step = diamH / grid_res;
    std::vector<Vec> simplex{best};
    for (int i = 0; i < d; ++i) simplex.push_back(best + step * Vec::Unit(d, i));
    std::vector<double> val;
    for (const auto& s : simplex) val.push_back(g(s));
    for (int iter = 0; iter < 200; ++iter) {
        std::vector<int> ord(simplex.size());
        std::iota(ord.begin(), ord.end(), 0);
        std::sort(ord.begin(), ord.end(), [&](int a, int b) { return val[a] > val[b]; });
        double diamS = 0.0;
        for (std::size_t i = 1; i < simplex.size(); ++i)
            diamS = std::max(diamS, (simplex[ord[i]] - simplex[ord[0]]).norm());
        if (diamS < 1e-7 * diamH) break;
        const int worst = ord.back();
        Vec cen = Vec::Zero(d);
        for (std::size_t i = 0; i + 1 < ord.size(); ++i) cen += simplex[ord[i]];
        cen /= double(simplex.size() - 1);
        Vec refl = cen + (cen - simplex[worst]);
        double vr = g(refl);
        if (vr > val[ord[0]]) {
            Vec exp_ = cen + 2.0 * (cen - simplex[worst]);
            double ve = g(exp_);
            if (ve > vr) { simplex[worst] = exp_; val[worst] = ve; }
            else { simplex[worst] = refl; val[worst] = vr; }
        } else if (vr > val[ord[ord.size() - 2]]) {
            simplex[worst] = refl;
            val[worst] = vr;
        } else {
            Vec con = cen + 0.5 * (simplex[worst] - cen);
            double vc = g(con);
            if (vc > val[worst]) { simplex[worst] = con; val[worst] = vc; }
            else {
                for (std::size_t i = 1; i < ord.size(); ++i) {
                    simplex[ord[i]] = simplex[ord[0]] + 0.5 * (simplex[ord[i]] - simplex[ord[0]]);
                    val[ord[i]] = g(simplex[ord[i]]);
                }
            }
        }
    }
    MaxSection ms;
    for (std::size_t i = 0; i < simplex.size(); ++i)
        if (val[i] >= ms.value) { ms.value = val[i]; ms.argmax_in_H = simplex[i]; }
    return ms;
}

} // namespace lw
