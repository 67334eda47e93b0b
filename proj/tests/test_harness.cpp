#include <catch2/catch_amalgamated.hpp>

#include <lw/harness.hpp>
#include <lw/inequalities.hpp>
#include <lw/io.hpp>

using namespace lw;
using Catch::Approx;

TEST_CASE("random instances are reproducible and well formed") {
    for (int n : {2, 3, 4}) {
        RandomInstance a = random_instance(91, n, 30.0);
        RandomInstance b = random_instance(91, n, 30.0);
        CHECK((a.basis.M - b.basis.M).norm() == 0.0);
        CHECK(volume(a.body) == Approx(volume(b.body)));
        REQUIRE(a.covers.size() == b.covers.size());
        for (const IndexCover& c : a.covers) {
            CHECK(c.covers_all());
            CHECK_NOTHROW(validate(c));
        }
        for (const IndexCover& c : a.restricted_covers) {
            CHECK(!c.covers_all());
            CHECK_NOTHROW(validate(c));
        }

        Eigen::JacobiSVD<Mat> svd(a.basis.M);
        const double cond = svd.singularValues()(0) / svd.singularValues()(n - 1);
        CHECK(cond <= 30.0 + 1e-9);
    }
}

TEST_CASE("different seeds give different instances") {
    RandomInstance a = random_instance(1, 3);
    RandomInstance b = random_instance(2, 3);
    CHECK((a.basis.M - b.basis.M).norm() > 1e-6);
}

TEST_CASE("suite runs are deterministic") {
    SuiteConfig cfg;
    cfg.seed = 7;
    cfg.dims = {2, 3};
    cfg.bodies_per_dim = 3;
    BatchReport r1 = run_suite(cfg);
    BatchReport r2 = run_suite(cfg);
    CHECK(r1.digest == r2.digest);
    CHECK(r1.records.size() == r2.records.size());
    CHECK(r1.failures == 0);

    SuiteConfig cfg2 = cfg;
    cfg2.seed = 8;
    BatchReport r3 = run_suite(cfg2);
    CHECK(r3.digest != r1.digest);
}

TEST_CASE("suite covers every statement family and none fails") {
    SuiteConfig cfg;
    cfg.seed = 3;
    cfg.dims = {3};
    cfg.bodies_per_dim = 4;
    BatchReport r = run_suite(cfg);
    CHECK(r.failures == 0);
    for (const char* s : {"thm-affine-bt", "thm-dual-bt", "thm-local-lw",
                          "thm-restricted-dual", "thm-functional-bt", "thm-gn",
                          "thm-functional-local", "thm-reverse-powers",
                          "thm-reverse-restrict", "thm-reverse-centered"}) {
        INFO(s);
        REQUIRE(r.min_ratio.count(s) == 1);
        CHECK(r.min_ratio.at(s) >= 1.0 - 1e-6);
    }
}

TEST_CASE("tightness search trace is monotone and bottoms out near one") {
    auto eval = [](const Polytope& K, const Basis& B) {
        return eval_affine_bt(K, B, lw_cover(2), 1);
    };
    TightnessResult res = tightness_search(eval, 2, 11, 5, 30, 1e-6);
    REQUIRE(res.trace.size() >= 2);
    for (std::size_t i = 1; i < res.trace.size(); ++i)
        CHECK(res.trace[i] <= res.trace[i - 1] + 1e-12);
    CHECK(res.best_ratio >= 1.0 - 1e-9);
    CHECK(!res.suspect);
}

TEST_CASE("basis json round trip") {
    Rng rng(17);
    Basis B = random_basis(rng, 3);
    Basis C = basis_from_json(basis_to_json(B));
    CHECK((B.M - C.M).norm() < 1e-12);
}

TEST_CASE("cover json round trip keeps weights exact") {
    IndexCover c = lw_cover(4);
    IndexCover d = cover_from_json(cover_to_json(c));
    CHECK(d.same_as(c));
    for (std::size_t i = 0; i < c.weights.size(); ++i)
        CHECK(d.weights[i] == c.weights[i]);
}

TEST_CASE("body json kinds") {
    CHECK(volume(body_from_json({{"kind", "cube"}, {"n", 3}})) == Approx(1.0));
    CHECK(volume(body_from_json({{"kind", "cross"}, {"n", 2}})) == Approx(2.0));

    Polytope K = body_from_json({{"kind", "random"},
                                 {"n", 2},
                                 {"seed", 5},
                                 {"points", 12},
                                 {"centered", true}});
    CHECK(volume(K) > 0.0);
    CHECK(contains(K, Vec::Zero(2), 1e-9));

    Polytope K2 = body_from_json(body_to_json(K));
    CHECK(volume(K2) == Approx(volume(K)));

    nlohmann::json hrep = {{"kind", "hrep"},
                           {"halfspaces",
                            {{{"a", {1.0, 0.0}}, {"b", 1.0}},
                             {{"a", {-1.0, 0.0}}, {"b", 1.0}},
                             {{"a", {0.0, 1.0}}, {"b", 1.0}},
                             {{"a", {0.0, -1.0}}, {"b", 1.0}}}}};
    CHECK(volume(body_from_json(hrep)) == Approx(4.0));

    CHECK_THROWS(body_from_json({{"kind", "orb"}, {"n", 2}}));
}

TEST_CASE("named bodies and covers") {
    CHECK(volume(named_body("cube3")) == Approx(1.0));
    CHECK(volume(named_body("centered_cube4")) == Approx(1.0));
    CHECK(volume(named_body("cross3")) == Approx(4.0 / 3.0));
    CHECK(volume(named_body("simplex2")) == Approx(0.5));
    CHECK_THROWS(named_body("dodecahedron"));
    CHECK_THROWS(named_body("cube"));

    IndexCover lw = named_cover("lw", 3);
    CHECK(lw.m() == 3);
    IndexCover part = named_cover("partition", 4);
    CHECK(part.m() == 4);
    CHECK(part.p() == Rational{4});
    IndexCover sub = named_cover("partition-12", 4);
    CHECK(sub.S == std::vector<int>{1, 2});
    IndexCover bt = named_cover("bt-k2-m3", 4);
    CHECK_NOTHROW(validate(bt));
    CHECK(bt.m() == 3);
    CHECK_THROWS(named_cover("mystery", 3));
}

TEST_CASE("function json") {
    LogConcaveFn f = function_from_json(
        {{"family", "exp_norm"}, {"body", {{"kind", "cross"}, {"n", 2}}}});
    CHECK(integrate(f) == Approx(2.0 * 2.0)); // 2! * |B_1^2|
}

TEST_CASE("report json carries the documented fields") {
    VerificationReport rep =
        eval_affine_bt(standard_body(BodyKind::Cube, 3), Basis::canonical(3), lw_cover(3), 1);
    nlohmann::json j = report_to_json(rep);
    for (const char* k : {"statement", "variant", "ratio", "lhs", "rhs", "constant",
                          "mc_sigma", "degenerate", "notes"})
        CHECK(j.contains(k));
    CHECK(j["ratio"].get<double>() == Approx(1.0));
    CHECK(!j["degenerate"].get<bool>());
}
