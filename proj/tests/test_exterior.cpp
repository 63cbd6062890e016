#include "edslab/exterior.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace eds;

namespace {

Vec vec_of(std::initializer_list<double> xs) {
    Vec v(static_cast<Eigen::Index>(xs.size()));
    int i = 0;
    for (double x : xs) v(i++) = x;
    return v;
}

} // namespace

TEST_CASE("multi-index ranking round-trips") {
    for (int m = 1; m <= 8; ++m)
        for (int k = 0; k <= m; ++k) {
            const auto all = MultiIndex::all(m, k);
            CHECK(static_cast<long>(all.size()) == binomial(m, k));
            for (long r = 0; r < static_cast<long>(all.size()); ++r)
                CHECK(all[static_cast<size_t>(r)].rank(m) == r);
        }
    CHECK_THROWS_AS(MultiIndex({2, 2}), std::invalid_argument);
    CHECK_THROWS_AS(MultiIndex({3, 1}), std::invalid_argument);
}

TEST_CASE("wedge of coordinate forms in the plane") {
    const auto dx1 = AlternatingForm::basis(2, MultiIndex({1}));
    const auto dx2 = AlternatingForm::basis(2, MultiIndex({2}));
    const auto w = wedge(dx1, dx2);
    CHECK(w.degree() == 2);
    CHECK(w.coeff(MultiIndex({1, 2})) == doctest::Approx(1.0));
    // degree above the ambient dimension collapses to the zero form
    const auto z = wedge(w, dx1);
    CHECK(z.degree() == 3);
    CHECK(z.max_abs_coeff() == 0.0);
}

TEST_CASE("wedge is graded anticommutative and bilinear") {
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = oracle::random_form(rng, 5, 1);
        const auto b = oracle::random_form(rng, 5, 1);
        auto sum = wedge(a, b) + wedge(b, a);
        CHECK(sum.max_abs_coeff() < 1e-12);

        const auto c = oracle::random_form(rng, 5, 2);
        auto lhs = wedge(a + b, c);
        auto rhs = wedge(a, c) + wedge(b, c);
        lhs -= rhs;
        CHECK(lhs.max_abs_coeff() < 1e-12);

        // even-degree forms commute
        const auto d = oracle::random_form(rng, 5, 2);
        auto comm = wedge(c, d) - wedge(d, c);
        CHECK(comm.max_abs_coeff() < 1e-12);
    }
}

TEST_CASE("symplectic square: w ^ w = 2 dx1^dx2^dx3^dx4") {
    AlternatingForm w(4, 2);
    w.set_coeff(MultiIndex({1, 2}), 1.0);
    w.set_coeff(MultiIndex({3, 4}), 1.0);
    const auto ww = wedge(w, w);
    CHECK(ww.coeff(MultiIndex({1, 2, 3, 4})) == doctest::Approx(2.0));

    // cross-check against the permutation-sum oracle on the coordinate frame
    std::vector<Vec> frame;
    for (int i = 0; i < 4; ++i) {
        Vec e = Vec::Zero(4);
        e(i) = 1.0;
        frame.push_back(e);
    }
    CHECK(oracle::shuffle_wedge_value(w, w, frame) == doctest::Approx(2.0));
    CHECK(evaluate(ww, frame) == doctest::Approx(2.0));
}

TEST_CASE("wedge associativity on random triples") {
    Rng rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        const int m = 3 + static_cast<int>(rng.next_u64() % 6); // dims <= 8
        const int p = 1 + static_cast<int>(rng.next_u64() % 2);
        const int q = 1 + static_cast<int>(rng.next_u64() % 2);
        const int r = 1 + static_cast<int>(rng.next_u64() % 2);
        const auto a = oracle::random_form(rng, m, p);
        const auto b = oracle::random_form(rng, m, q);
        const auto c = oracle::random_form(rng, m, r);
        auto lhs = wedge(wedge(a, b), c);
        lhs -= wedge(a, wedge(b, c));
        CHECK(lhs.max_abs_coeff() < 1e-12);
    }
}

TEST_CASE("evaluate basics") {
    const auto dx1 = AlternatingForm::basis(3, MultiIndex({1}));
    const Vec v = vec_of({4.0, -2.0, 7.0});
    CHECK(evaluate(dx1, {v}) == doctest::Approx(4.0));

    // alternation: any repeated argument kills the value
    Rng rng(5);
    const auto f = oracle::random_form(rng, 4, 2);
    const Vec w = rng.gaussian_vec(4);
    CHECK(evaluate(f, {w, w}) == doctest::Approx(0.0));
}

TEST_CASE("jet-space structure form on a graph 2-plane") {
    // chart (x1,x2,u1,u2,p11,p12,p21,p22); dtheta1 = -dp11^dx1 - dp12^dx2
    AlternatingForm dtheta1(8, 2);
    dtheta1.set_coeff(MultiIndex({1, 5}), 1.0); // -dp11^dx1 = +dx1^dp11
    dtheta1.set_coeff(MultiIndex({2, 6}), 1.0);
    Rng rng(7);
    const double b11 = rng.gaussian(), b12 = rng.gaussian(), b21 = rng.gaussian(), b22 = rng.gaussian();
    const double c11 = rng.gaussian(), c12 = rng.gaussian(), c21 = rng.gaussian(), c22 = rng.gaussian();
    Vec v = Vec::Zero(8), w = Vec::Zero(8);
    v(0) = 1.0; v(4) = b11; v(5) = b12; v(6) = b21; v(7) = b22;
    w(1) = 1.0; w(4) = c11; w(5) = c12; w(6) = c21; w(7) = c22;
    CHECK(evaluate(dtheta1, {v, w}) == doctest::Approx(c11 - b12));
}

TEST_CASE("evaluate(wedge(a,b)) matches the shuffle-sum oracle") {
    Rng rng(37);
    int cases = 0;
    while (cases < 120) {
        const int m = 2 + static_cast<int>(rng.next_u64() % 5); // m <= 6
        const int p = 1 + static_cast<int>(rng.next_u64() % 3);
        const int q = 1 + static_cast<int>(rng.next_u64() % 3);
        if (p + q > m) continue;
        ++cases;
        const auto a = oracle::random_form(rng, m, p);
        const auto b = oracle::random_form(rng, m, q);
        std::vector<Vec> vs;
        for (int i = 0; i < p + q; ++i) vs.push_back(rng.gaussian_vec(m));
        const double direct = evaluate(wedge(a, b), vs);
        const double shuffled = oracle::shuffle_wedge_value(a, b, vs);
        CHECK(direct == doctest::Approx(shuffled).epsilon(1e-9));
        CHECK(std::abs(evaluate(a, std::vector<Vec>(vs.begin(), vs.begin() + p)) -
                       oracle::leibniz_evaluate(a, {vs.begin(), vs.begin() + p})) < 1e-10);
    }
}

TEST_CASE("restriction to subspaces") {
    // symplectic form vanishes on the x-coordinate Lagrangian plane
    const int n = 3;
    AlternatingForm omega(2 * n, 2);
    for (int i = 1; i <= n; ++i) omega.set_coeff(MultiIndex({i, n + i}), 1.0);
    Mat xplane = Mat::Zero(2 * n, n);
    for (int i = 0; i < n; ++i) xplane(i, i) = 1.0;
    CHECK(restrict_form(omega, xplane).max_abs_coeff() == doctest::Approx(0.0));

    // dx1^dx2 restricted to span(e1,e2) is the volume form
    const auto dx12 = AlternatingForm::basis(4, MultiIndex({1, 2}));
    Mat plane = Mat::Zero(4, 2);
    plane(0, 0) = 1.0;
    plane(1, 1) = 1.0;
    const auto vol = restrict_form(dx12, plane);
    CHECK(vol.coeff(MultiIndex({1, 2})) == doctest::Approx(1.0));

    // restriction coefficients are exactly the evaluations on basis subsets
    Rng rng(13);
    const auto f = oracle::random_form(rng, 5, 2);
    const Mat basis = rng.gaussian_mat(5, 3);
    const auto res = restrict_form(f, basis);
    for (const auto& s : MultiIndex::all(3, 2)) {
        Mat sel(5, 2);
        sel.col(0) = basis.col(s[0] - 1);
        sel.col(1) = basis.col(s[1] - 1);
        CHECK(res.coeff(s) == doctest::Approx(evaluate(f, sel)));
    }

    // dependent basis is rejected
    Mat dep(4, 2);
    dep.col(0) = vec_of({1.0, 2.0, 3.0, 4.0});
    dep.col(1) = 2.0 * dep.col(0);
    CHECK_THROWS_AS(restrict_form(dx12, dep), std::invalid_argument);

    // degree above the subspace dimension restricts to the zero form
    AlternatingForm three(5, 3);
    three.set_coeff(MultiIndex({1, 2, 3}), 2.0);
    const auto z = restrict_form(three, basis.leftCols(2));
    CHECK(z.degree() == 3);
    CHECK(z.max_abs_coeff() == 0.0);
}

TEST_CASE("input errors") {
    const auto a = AlternatingForm::basis(3, MultiIndex({1}));
    const auto b = AlternatingForm::basis(4, MultiIndex({1}));
    CHECK_THROWS_AS(wedge(a, b), std::invalid_argument);
    const std::vector<Vec> two(2, Vec::Zero(3));
    CHECK_THROWS_AS(evaluate(a, two), std::invalid_argument);
}
