#include <catch2/catch_amalgamated.hpp>

#include <lw/linalg.hpp>

using Catch::Approx;
using namespace lw;

TEST_CASE("wedge products") {
    Vec e1 = Vec::Unit(3, 0), e2 = Vec::Unit(3, 1), e3 = Vec::Unit(3, 2);
    CHECK(wedge({e1, e2, e3}) == Approx(1.0));
    CHECK(wedge({e1, e2}) == Approx(1.0));
    CHECK(wedge({}) == Approx(1.0)); // empty wedge is 1 by convention
    Vec a(2), b(2);
    a << 1, 0;
    b << 1, 1;
    CHECK(wedge({a, b}) == Approx(1.0));
    b << 2, 0;
    CHECK(wedge({a, b}) == Approx(0.0).margin(1e-12)); // dependent
    a << 3, 0;
    CHECK(wedge({a}) == Approx(3.0));
}

TEST_CASE("basis construction rejects singular input") {
    Mat M(2, 2);
    M << 1, 2, 2, 4;
    CHECK_THROWS_AS(Basis(M), std::invalid_argument);
    CHECK(Basis::canonical(4).dim() == 4);
}

TEST_CASE("dual basis satisfies <v_i, w_j> = delta_ij") {
    Mat M(3, 3);
    M << 1, 0.5, 0.2, 0, 1, -0.3, 0.1, 0, 1;
    Basis B(M);
    Basis D = dual_basis(B);
    Mat G = D.M.transpose() * B.M;
    CHECK((G - Mat::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("subspace spans, complements, sums") {
    Vec a(3), b(3);
    a << 1, 1, 0;
    b << 0, 1, 1;
    Subspace H = span_subspace({a, b});
    CHECK(H.dim() == 2);
    Subspace Hp = orth_complement(H);
    CHECK(Hp.dim() == 1);
    CHECK((H.frame.transpose() * Hp.frame).cwiseAbs().maxCoeff() < 1e-12);
    Subspace full = subspace_sum(H, Hp);
    CHECK(full.same_as(Subspace::full(3)));
    CHECK(orth_complement(Subspace::zero(3)).same_as(Subspace::full(3)));
    CHECK(orth_complement(Subspace::full(3)).same_as(Subspace::zero(3)));
    // same subspace, different generating order
    Subspace H2 = span_subspace({b, a});
    CHECK(H.same_as(H2));
    CHECK_FALSE(H.same_as(Hp));
}

TEST_CASE("coords and embed round-trip on the subspace") {
    Vec a(3);
    a << 1, 2, 2;
    Subspace H = span_subspace({a});
    Vec x = 0.5 * a;
    CHECK((H.embed(H.coords(x)) - x).norm() < 1e-12);
}

TEST_CASE("identity decomposition of a normalized basis") {
    Mat M(3, 3);
    M << 1, 0.3, 0, 0, 1, 0.4, 0.2, 0, 1;
    Basis B(M);
    auto rep = appendix_identity_check(B);
    CHECK(rep.max_residual() < 1e-10);
}

TEST_CASE("spd square root") {
    Mat A(2, 2);
    A << 4, 1, 1, 3;
    Mat S = spd_sqrt(A);
    CHECK((S * S - A).cwiseAbs().maxCoeff() < 1e-10);
}
