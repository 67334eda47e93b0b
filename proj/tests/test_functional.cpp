#include <catch2/catch_amalgamated.hpp>

#include <lw/functional.hpp>
#include <lw/harness.hpp>

using Catch::Approx;
using namespace lw;

TEST_CASE("closed-form integrals") {
    Polytope C2 = standard_body(BodyKind::CenteredCube, 2); // [-1,1]^2
    CHECK(integrate(make_indicator(C2)) == Approx(4.0).epsilon(1e-10));
    CHECK(integrate(make_exp_norm(C2)) == Approx(8.0).epsilon(1e-10));
    CHECK(integrate(make_cone(C2)) == Approx(4.0 / 3.0).epsilon(1e-10));
    Polytope X3 = standard_body(BodyKind::Cross, 3);
    CHECK(integrate(make_exp_norm(X3)) == Approx(6.0 * 8.0 / 6.0).epsilon(1e-10));
}

TEST_CASE("closed forms agree with grid quadrature in 2-D") {
    Polytope K = random_polytope(9, 2, 10, RandomShape::Gaussian, true);
    const LogConcaveFn f = make_exp_norm(K);
    // brute-force integral on a generous grid
    double R = 0.0;
    for (int v = 0; v < K.verts.cols(); ++v) R = std::max(R, K.verts.col(v).norm());
    const double L = 30.0 * R;
    const int N = 1500;
    const double h = 2.0 * L / N;
    double sum = 0.0;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            Vec x(2);
            x << -L + (i + 0.5) * h, -L + (j + 0.5) * h;
            sum += fn_value(f, x);
        }
    sum *= h * h;
    CHECK(sum == Approx(integrate(f)).epsilon(2e-3));
}

TEST_CASE("lp norms") {
    Polytope C = standard_body(BodyKind::Cube, 3);
    CHECK(lp_norm(make_indicator(C), 2.5) == Approx(1.0).epsilon(1e-12));
    Polytope X = standard_body(BodyKind::Cross, 2);
    CHECK(lp_norm(make_exp_norm(X), 2.0) == Approx(1.0).epsilon(1e-12));
    const LogConcaveFn cone = make_cone(standard_body(BodyKind::CenteredCube, 2));
    CHECK(std::pow(lp_norm(cone, 1.0), 1.0) == Approx(integrate(cone)).epsilon(1e-12));
    CHECK_THROWS_AS(lp_norm(cone, 0.5), std::invalid_argument);
}

TEST_CASE("projection stays in family") {
    Polytope C = standard_body(BodyKind::CenteredCube, 3);
    Subspace H = span_subspace({Vec::Unit(3, 0), Vec::Unit(3, 1)});
    LogConcaveFn pf = project_fn(make_exp_norm(C), H);
    CHECK(pf.family == FnFamily::ExpNorm);
    CHECK(pf.dim() == 2);
    CHECK(integrate(pf) == Approx(2.0 * 4.0).epsilon(1e-10)); // 2! * |[-1,1]^2|
    CHECK(pf.sup == 1.0);
    // cone over the cross-polytope onto an axis: cone over a segment
    LogConcaveFn pc = project_fn(make_cone(standard_body(BodyKind::Cross, 3)),
                                 span_subspace({Vec::Unit(3, 0)}));
    CHECK(pc.family == FnFamily::Cone);
    CHECK(integrate(pc) == Approx(2.0 / 2.0).epsilon(1e-10)); // |[-1,1]| / (1+1)
}

TEST_CASE("restriction closed forms") {
    Polytope C = standard_body(BodyKind::CenteredCube, 3);
    Subspace H = span_subspace({Vec::Unit(3, 0), Vec::Unit(3, 2)});
    CHECK(restrict_integrate(make_exp_norm(C), H) == Approx(2.0 * 4.0).epsilon(1e-10));
    CHECK(restrict_integrate(make_indicator(C), H) == Approx(4.0).epsilon(1e-10));
    CHECK(restrict_integrate(make_cone(C), H) == Approx(4.0 / 3.0).epsilon(1e-10));
}

TEST_CASE("monte carlo integration agrees with closed forms") {
    Polytope K = random_polytope(21, 2, 10, RandomShape::Gaussian, true);
    const LogConcaveFn fc = make_cone(K);
    Vec lo = K.verts.rowwise().minCoeff(), hi = K.verts.rowwise().maxCoeff();
    LogConcaveFn bb = make_blackbox([&](const Vec& x) { return fn_value(fc, x); }, lo, hi, 1.0,
                                    Subspace::full(2));
    auto mc = mc_integrate(bb, 5, 200000);
    CHECK(std::abs(mc.estimate - integrate(fc)) <= 3.0 * mc.std_error);
}

TEST_CASE("projection inequality for functions: cube equality") {
    // indicator of the cube with the hyperplane cover achieves equality
    for (int n = 2; n <= 3; ++n) {
        auto r = eval_gn(make_indicator(standard_body(BodyKind::CenteredCube, n)),
                         Basis::canonical(n), lw_cover(n), 1);
        CHECK(r.ratio == Approx(1.0).epsilon(1e-9));
    }
    // exp_norm has unbounded support: rejected
    CHECK_THROWS_AS(eval_gn(make_exp_norm(standard_body(BodyKind::CenteredCube, 2)),
                            Basis::canonical(2), lw_cover(2), 1),
                    std::invalid_argument);
    // p = 1 covers rejected
    CHECK_THROWS_AS(eval_gn(make_indicator(standard_body(BodyKind::CenteredCube, 2)),
                            Basis::canonical(2), partition_cover(2), 1),
                    std::invalid_argument);
}

TEST_CASE("functional inequalities hold on random instances") {
    for (int t = 0; t < 6; ++t) {
        const int n = 2 + t % 2;
        RandomInstance inst = random_instance(700 + t, n);
        const LogConcaveFn fe = make_exp_norm(inst.body);
        const LogConcaveFn fc = make_cone(inst.body);
        for (const auto& c : inst.covers)
            for (int v = 1; v <= 4; ++v) {
                CHECK(eval_functional_bt(fe, inst.basis, c, v).ratio >= 1.0 - 1e-6);
                CHECK(eval_functional_bt(fc, inst.basis, c, v).ratio >= 1.0 - 1e-6);
                if (c.p() != Rational{1})
                    CHECK(eval_gn(fc, inst.basis, c, v).ratio >= 1.0 - 1e-6);
                CHECK(eval_reverse_family(fe, inst.basis, c, ReverseKind::Powers, v).ratio >=
                      1.0 - 1e-6);
                CHECK(eval_reverse_family(fe, inst.basis, c, ReverseKind::NoPowers, v).ratio >=
                      1.0 - 1e-6);
            }
        for (const auto& c : inst.restricted_covers)
            for (int v = 1; v <= 4; ++v)
                CHECK(eval_functional_local(fe, inst.basis, c, v).ratio >= 1.0 - 1e-6);
    }
}

TEST_CASE("reduction to the geometric statements") {
    for (int t = 0; t < 5; ++t) {
        const int n = 2 + t % 2;
        RandomInstance inst = random_instance(800 + t, n);
        const LogConcaveFn fe = make_exp_norm(inst.body);
        for (const auto& c : inst.covers)
            for (int v = 1; v <= 4; ++v) {
                const double geo = eval_affine_bt(inst.body, inst.basis, c, v).ratio;
                const double fun = eval_functional_bt(fe, inst.basis, c, v).ratio;
                CHECK(fun == Approx(geo).epsilon(1e-9));
                const double geod = eval_dual_bt(inst.body, inst.basis, c, v).ratio;
                const double fund =
                    eval_reverse_family(fe, inst.basis, c, ReverseKind::Powers, v).ratio;
                CHECK(fund == Approx(geod).epsilon(1e-9));
            }
        for (const auto& c : inst.restricted_covers)
            for (int v = 1; v <= 4; ++v) {
                const double geo = eval_local_lw(inst.body, inst.basis, c, v).ratio;
                const double fun = eval_functional_local(fe, inst.basis, c, v).ratio;
                CHECK(fun == Approx(geo).epsilon(1e-9));
            }
    }
}

TEST_CASE("centered reverse family matches the dual statement at p/m = 1") {
    RandomInstance inst = random_instance(901, 3);
    const LogConcaveFn fe = make_exp_norm(inst.body);
    const IndexCover pc = partition_cover(3); // p/m = 1
    for (int v : {1, 3}) {
        const double cen = eval_reverse_family(fe, inst.basis, pc, ReverseKind::Centered, v).ratio;
        const double dual = eval_dual_bt(inst.body, inst.basis, pc, v).ratio;
        CHECK(cen == Approx(dual).epsilon(1e-9));
    }
}

TEST_CASE("min corollary with a common body holds within monte carlo error") {
    RandomInstance inst = random_instance(911, 2);
    const LogConcaveFn fe = make_exp_norm(inst.body);
    const IndexCover c = lw_cover(2);
    for (int v = 1; v <= 4; ++v) {
        std::vector<LogConcaveFn> fs;
        for (int j = 0; j < c.m(); ++j)
            fs.push_back(project_fn(fe, ineqdetail::variant_subspace(inst.basis, c, j, v, false)));
        auto r = eval_min_corollary(fs, inst.basis, c, v, 17, 100000);
        CHECK(r.ratio >= 1.0 - 3.0 * r.mc_sigma / std::max(r.lhs, 1e-300));
    }
}

TEST_CASE("berwald functional") {
    // linear h: Phi is identically 1
    ConcavePL lin{{0.0}, {1.0}};
    for (double g : {-0.5, -0.25, 0.5, 1.0, 2.0, 3.0, 5.0})
        CHECK(berwald_phi(lin, g) == Approx(1.0).margin(1e-10));
    // constant h = c: Phi = c / Gamma(1+gamma)^{1/gamma}, decreasing
    ConcavePL cst{{2.0}, {0.0}};
    for (double g : {0.5, 1.0, 2.0})
        CHECK(berwald_phi(cst, g) ==
              Approx(2.0 / std::pow(std::tgamma(1.0 + g), 1.0 / g)).epsilon(1e-9));
    // h = min(t, 1): strictly decreasing over the grid
    ConcavePL kink{{0.0, 1.0}, {1.0, 0.0}};
    auto rep = berwald_monotone_check(kink, {-0.5, 0.5, 1.0, 2.0, 4.0});
    CHECK(rep.monotone);
    for (std::size_t i = 0; i + 1 < rep.values.size(); ++i)
        CHECK(rep.values[i] > rep.values[i + 1] + 1e-6);
    CHECK_THROWS_AS(berwald_phi(lin, 0.0), std::invalid_argument);
}

TEST_CASE("berwald on the level-set profile of a norm-exponential body") {
    // for f = e^{-||x||_K} the super-level set at e^{-t} is tK, so the
    // n-th-root profile h(t) = t |K|^{1/n} is linear and Phi_gamma is the
    // constant |K|^{1/n} at every gamma
    Polytope K = random_polytope(55, 2, 10, RandomShape::Gaussian, true);
    const double c = std::sqrt(volume(K));
    ConcavePL prof{{0.0}, {c}};
    for (double g : {-0.5, -0.25, 0.5, 1.0, 2.0, 3.0, 5.0})
        CHECK(berwald_phi(prof, g) == Approx(c).epsilon(1e-9));
    auto rep = berwald_monotone_check(prof, {-0.5, -0.25, 0.5, 1.0, 2.0, 3.0, 5.0});
    CHECK(rep.monotone);
}

TEST_CASE("extremal unconditional density product") {
    for (int n = 2; n <= 5; ++n) {
        auto r = bobkov_nazarov_check(n);
        CHECK(r.lhs == Approx(factorial(n) / std::pow(double(n), n)).epsilon(1e-9));
        CHECK(r.ratio == Approx(1.0).epsilon(1e-9));
    }
}
