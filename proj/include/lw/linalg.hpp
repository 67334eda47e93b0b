#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace lw {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// n ordered vectors spanning R^n, stored as the columns of M.
/// Order matters: column i is the i-th basis vector.
struct Basis {
    Mat M; // n x n, columns are the basis vectors

    explicit Basis(Mat m) : M(std::move(m)) {
        if (M.rows() != M.cols()) throw std::invalid_argument("Basis: matrix must be square");
        const double eps = 1e-10 * M.colwise().norm().maxCoeff();
        if (std::abs(M.determinant()) <= std::pow(eps, M.rows()))
            throw std::invalid_argument("Basis: vectors do not span R^n");
    }

    int dim() const { return static_cast<int>(M.rows()); }
    Vec vector(int i) const { return M.col(i); }

    static Basis canonical(int n) { return Basis(Mat::Identity(n, n)); }
};

/// |wedge of the given vectors| = sqrt(det Gram). Empty list -> 1.
inline double wedge(const std::vector<Vec>& vs) {
    if (vs.empty()) return 1.0;
    const auto n = vs[0].size();
    Mat W(n, static_cast<Eigen::Index>(vs.size()));
    for (std::size_t k = 0; k < vs.size(); ++k) {
        if (vs[k].size() != n) throw std::invalid_argument("wedge: dimension mismatch");
        W.col(static_cast<Eigen::Index>(k)) = vs[k];
    }
    const Mat G = W.transpose() * W;
    const double d = G.determinant();
    return d <= 0.0 ? 0.0 : std::sqrt(d);
}

/// Linear subspace carried as an orthonormal frame (columns).
struct Subspace {
    int ambient = 0;
    Mat frame; // ambient x dim, orthonormal columns; dim may be 0

    Subspace() = default;
    Subspace(int amb, Mat f) : ambient(amb), frame(std::move(f)) {
        if (frame.size() > 0 && frame.rows() != ambient)
            throw std::invalid_argument("Subspace: frame row mismatch");
        if (frame.size() == 0) frame.resize(ambient, 0);
        if (dim() > 0) {
            const Mat G = frame.transpose() * frame;
            if ((G - Mat::Identity(dim(), dim())).cwiseAbs().maxCoeff() > 1e-10)
                throw std::invalid_argument("Subspace: frame is not orthonormal");
        }
    }

    int dim() const { return static_cast<int>(frame.cols()); }

    static Subspace full(int n) { return Subspace(n, Mat::Identity(n, n)); }
    static Subspace zero(int n) { return Subspace(n, Mat(n, 0)); }

    /// Coordinates of the orthogonal projection of x, in the frame.
    Vec coords(const Vec& x) const { return frame.transpose() * x; }
    /// Point of the subspace with the given frame coordinates.
    Vec embed(const Vec& y) const { return frame * y; }

    /// Frame-independent equality: mutual projection residual.
    bool same_as(const Subspace& o, double tol = 1e-9) const {
        if (ambient != o.ambient || dim() != o.dim()) return false;
        const Mat r = o.frame - frame * (frame.transpose() * o.frame);
        return r.size() == 0 || r.cwiseAbs().maxCoeff() < tol;
    }
};

/// Modified Gram-Schmidt with one re-orthogonalization pass.
/// Deterministic in the input order; throws on rank deficiency.
inline Subspace span_subspace(const std::vector<Vec>& vs) {
    if (vs.empty()) throw std::invalid_argument("span_subspace: empty input");
    const int n = static_cast<int>(vs[0].size());
    double maxnorm = 0.0;
    for (const auto& v : vs) maxnorm = std::max(maxnorm, v.norm());
    const double eps_rank = 1e-10 * maxnorm;
    Mat F(n, static_cast<Eigen::Index>(vs.size()));
    int k = 0;
    for (const auto& v : vs) {
        if (v.size() != n) throw std::invalid_argument("span_subspace: dimension mismatch");
        Vec u = v;
        for (int pass = 0; pass < 2; ++pass)
            for (int j = 0; j < k; ++j) u -= F.col(j).dot(u) * F.col(j);
        if (u.norm() <= eps_rank)
            throw std::invalid_argument("span_subspace: rank-deficient input");
        F.col(k++) = u / u.norm();
    }
    return Subspace(n, F.leftCols(k));
}

inline Subspace orth_complement(const Subspace& H) {
    const int n = H.ambient, k = H.dim();
    if (k == 0) return Subspace::full(n);
    if (k == n) return Subspace::zero(n);
    // Complete the frame: project out H from the canonical vectors, MGS the rest.
    Mat F(n, n - k);
    int got = 0;
    for (int i = 0; i < n && got < n - k; ++i) {
        Vec u = Vec::Unit(n, i);
        for (int pass = 0; pass < 2; ++pass) {
            u -= H.frame * (H.frame.transpose() * u);
            for (int j = 0; j < got; ++j) u -= F.col(j).dot(u) * F.col(j);
        }
        if (u.norm() > 1e-8) F.col(got++) = u / u.norm();
    }
    if (got != n - k) throw std::runtime_error("orth_complement: frame completion failed");
    return Subspace(n, F);
}

/// Direct sum of two subspaces with trivial intersection.
inline Subspace subspace_sum(const Subspace& A, const Subspace& B) {
    std::vector<Vec> vs;
    for (int j = 0; j < A.dim(); ++j) vs.push_back(A.frame.col(j));
    for (int j = 0; j < B.dim(); ++j) vs.push_back(B.frame.col(j));
    if (vs.empty()) return Subspace::zero(A.ambient);
    return span_subspace(vs);
}

/// Rows of M^{-1}: the dual basis, <v_i, w_j> = delta_ij.
inline Basis dual_basis(const Basis& B) {
    Eigen::JacobiSVD<Mat> svd(B.M);
    const auto& sv = svd.singularValues();
    if (sv(0) / sv(sv.size() - 1) > 1e12)
        throw std::runtime_error("dual_basis: basis matrix is near-singular");
    const Mat Minv = B.M.inverse();
    return Basis(Minv.transpose()); // row i of M^{-1} becomes column i
}

/// Symmetric positive definite square root.
inline Mat spd_sqrt(const Mat& A) {
    if ((A - A.transpose()).cwiseAbs().maxCoeff() > 1e-9 * (1.0 + A.cwiseAbs().maxCoeff()))
        throw std::invalid_argument("spd_sqrt: matrix not symmetric");
    Eigen::SelfAdjointEigenSolver<Mat> es(A);
    if (es.eigenvalues().minCoeff() <= 0.0)
        throw std::invalid_argument("spd_sqrt: matrix not positive definite");
    return es.operatorSqrt();
}

struct AppendixReport {
    double residual_identity;  // || sum w'_i (x) w'_i - I ||_max
    double residual_det;       // | det A^{1/2} - |wedge w_i| | (relative)
    double residual_orthonorm; // max | <w'_i, w'_j> - delta_ij |
    double max_residual() const {
        return std::max(residual_identity, std::max(residual_det, residual_orthonorm));
    }
};

/// Decomposition-of-identity self-checks for A = sum w_i (x) w_i.
inline AppendixReport appendix_identity_check(const Basis& B) {
    const int n = B.dim();
    const Mat A = B.M * B.M.transpose();
    const Mat Rinv = spd_sqrt(A).inverse();
    const Mat Wp = Rinv * B.M; // columns are w'_i = A^{-1/2} w_i
    AppendixReport r{};
    Mat S = Mat::Zero(n, n);
    for (int i = 0; i < n; ++i) S += Wp.col(i) * Wp.col(i).transpose();
    r.residual_identity = (S - Mat::Identity(n, n)).cwiseAbs().maxCoeff();
    std::vector<Vec> cols;
    for (int i = 0; i < n; ++i) cols.push_back(B.M.col(i));
    const double w = wedge(cols);
    r.residual_det = std::abs(std::sqrt(A.determinant()) - w) / w;
    r.residual_orthonorm = (Wp.transpose() * Wp - Mat::Identity(n, n)).cwiseAbs().maxCoeff();
    return r;
}

} // namespace lw
