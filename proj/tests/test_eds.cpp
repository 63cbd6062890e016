#include "edslab/billiard.hpp"
#include "edslab/eds.hpp"
#include "edslab/systems.hpp"

#include <doctest.h>

using namespace eds;

namespace {

// Tangent plane of the lift of the identity map in the jet chart.
Mat identity_lift_plane() {
    Mat b = Mat::Zero(8, 2);
    b(0, 0) = 1.0; // d/dx1 + d/du1
    b(2, 0) = 1.0;
    b(1, 1) = 1.0; // d/dx2 + d/du2
    b(3, 1) = 1.0;
    return b;
}

// Point of the identity lift: p11 = p22 = 1, p12 = p21 = 0.
Vec identity_lift_point() {
    Vec p = Vec::Zero(8);
    p(4) = 1.0;
    p(7) = 1.0;
    return p;
}

Mat coordinate_plane(int m, std::initializer_list<int> axes) {
    Mat b = Mat::Zero(m, static_cast<Eigen::Index>(axes.size()));
    int c = 0;
    for (int a : axes) b(a, c++) = 1.0;
    return b;
}

IntegralElement first_element(const ExteriorSystem& sys, const Vec& p, std::uint64_t seed) {
    const SolveResult sol = find_integral_elements(sys, p, sys.plane_dim(), seed);
    REQUIRE(!sol.elements.empty());
    return sol.elements.front();
}

} // namespace

TEST_CASE("symplectic membership test") {
    const ExteriorSystem sys = lagrangian_system(3);
    const Vec p = Vec::Zero(6);
    CHECK(is_integral_element(sys, p, coordinate_plane(6, {0, 1, 2})));
    CHECK_FALSE(is_integral_element(sys, p, coordinate_plane(6, {0, 3}))); // omega = 1 there
    CHECK_THROWS_AS(is_integral_element(sys, p, Mat::Zero(6, 2)), std::invalid_argument);
}

TEST_CASE("c0 of the built-in systems") {
    Rng rng(2);
    const Vec p8 = rng.gaussian_vec(8);
    CHECK(c0(jet_maps_system(), p8) == 2);
    CHECK(c0(lagrangian_system(3), Vec::Zero(6)) == 0);
    CHECK(c0(cauchy_riemann_system(), rng.gaussian_vec(6)) == 2);
}

TEST_CASE("jets: polar spaces, codimension, involutivity") {
    const ExteriorSystem sys = jet_maps_system();
    Rng rng(5);
    const Vec p = rng.gaussian_vec(8);

    const SolveResult sol = find_integral_elements(sys, p, 2, 7);
    REQUIRE(!sol.elements.empty());
    const Mat basis = sol.elements.front().basis;
    CHECK(integral_residual(sys, p, basis) < 1e-9);
    CHECK(sol.local_dim == 6); // dim V_2 fiber = 2*6 - 6

    // generic single integral vector has polar codimension 4
    const PolarSpace ps = polar_space(sys, p, orthonormalized(basis).col(0));
    CHECK(ps.c == 4);

    const CartanReport rep = cartan_test(sys, p, basis, 11);
    CHECK(rep.c == std::vector<int>{2, 4});
    CHECK(rep.codim == 6);
    CHECK(rep.involutive);
    CHECK(rep.characters == std::vector<int>{2, 2});
    CHECK(rep.k0 == 2);
    CHECK(rep.generality == "2 functions of 2 variables");

    // the identity-map lift is an integral manifold
    CHECK(is_integral_element(sys, identity_lift_point(), identity_lift_plane()));
}

TEST_CASE("cauchy-riemann: involutivity and generality, conventions logged") {
    const ExteriorSystem sys = cauchy_riemann_system();
    Rng rng(19);
    const Vec p = rng.gaussian_vec(6);
    const IntegralElement el = first_element(sys, p, 3);
    const CartanReport rep = cartan_test(sys, p, el.basis, 4);
    CHECK(rep.sum_c == rep.codim); // involutive, exact integers
    CHECK(rep.involutive);
    CHECK(rep.generality == "2 functions of 1 variable");
    // record which counting convention the run satisfied
    INFO("cauchy-riemann counts: c0=", rep.c[0], " c1=", rep.c[1], " codim=", rep.codim);
    const bool direct_count = (rep.c == std::vector<int>{2, 4} && rep.codim == 6);
    const bool reduced_count = (rep.c == std::vector<int>{2, 2} && rep.codim == 4);
    CHECK((direct_count || reduced_count));
    MESSAGE("cauchy-riemann satisfied the ",
            std::string(direct_count ? "direct (codim 6)" : "reduced (codim 4)"),
            " counting convention");

    // tangent plane of the lift of z -> z^2 at a sample point
    const double x = 0.7, y = -0.4;
    Vec q(6);
    q << x, y, x * x - y * y, 2 * x * y, 2 * x, -2 * y;
    Mat b = Mat::Zero(6, 2);
    b.col(0) << 1, 0, 2 * x, 2 * y, 2, 0;
    b.col(1) << 0, 1, -2 * y, 2 * x, 0, -2;
    CHECK(is_integral_element(sys, q, b));
}

TEST_CASE("lagrangian family: codim C(n,2), c_j = j, one function of n variables") {
    for (int n = 2; n <= 5; ++n) {
        const ExteriorSystem sys = lagrangian_system(n);
        Rng rng(100 + static_cast<std::uint64_t>(n));
        const Vec p = rng.gaussian_vec(2 * n);
        const IntegralElement el = first_element(sys, p, 17);
        const CartanReport rep = cartan_test(sys, p, el.basis, 23);
        CHECK(rep.codim == static_cast<int>(binomial(n, 2)));
        for (int j = 0; j < n; ++j) CHECK(rep.c[static_cast<size_t>(j)] == j);
        CHECK(rep.involutive);
        CHECK(rep.k0 == n);
        CHECK(rep.characters.back() == 1);
        CHECK(rep.generality == format_generality(1, n));
    }
}

TEST_CASE("lagrangian n=2 fiber dimension is 3") {
    const ExteriorSystem sys = lagrangian_system(2);
    Rng rng(3);
    const Vec p = rng.gaussian_vec(4);
    const SolveResult sol = find_integral_elements(sys, p, 2, 29);
    REQUIRE(!sol.elements.empty());
    CHECK(sol.local_dim == 3);
    CHECK(sol.dimension_consistent);
}

TEST_CASE("polar inequality and monotone polar codimensions") {
    // codim H(E_{j+1}) >= codim H(E_j) and codim V_n >= sum c_j, over seeded
    // generic points of every built-in system
    const std::vector<ExteriorSystem> systems = [] {
        std::vector<ExteriorSystem> v;
        v.push_back(jet_maps_system());
        v.push_back(cauchy_riemann_system());
        v.push_back(lagrangian_system(3));
        v.push_back(special_lagrangian_system(3));
        v.push_back(associative_system());
        v.push_back(billiard_system(4));
        return v;
    }();
    for (const auto& sys : systems) {
        for (int trial = 0; trial < 20; ++trial) {
            Rng rng(Rng::split(777, static_cast<std::uint64_t>(trial)));
            const Vec p = sys.sample_point(rng);
            SolveResult sol;
            if (sys.name() == "billiard") {
                Vec params(1);
                params(0) = 1.0 + rng.uniform();
                sol.elements.push_back(integral_family(p, params).element);
            } else {
                sol = find_integral_elements(sys, p, sys.plane_dim(), Rng::split(31, trial), 8);
            }
            if (sol.elements.empty()) continue;
            const Mat basis = orthonormalized(sol.elements.front().basis);
            const SystemPointData data = eval_system_at(sys, p);
            int prev = -1;
            int sum_c = 0;
            for (int j = 0; j < sys.plane_dim(); ++j) {
                const PolarSpace ps = polar_space(data, basis.leftCols(j));
                CHECK(ps.c >= prev);
                // E is contained in its own polar spaces
                for (int col = 0; col < basis.cols(); ++col) {
                    const Vec e = basis.col(col);
                    const Vec coords = ps.basis.transpose() * e;
                    CHECK((ps.basis * coords - e).norm() < 1e-7);
                }
                prev = ps.c;
                sum_c += ps.c;
            }
            const CodimResult cr = codim_variety_at(sys, p, basis);
            CHECK(cr.codim >= sum_c);
        }
    }
}

TEST_CASE("polar codimensions are flag-invariant integers") {
    const ExteriorSystem sys = jet_maps_system();
    Rng rng(9);
    const Vec p = rng.gaussian_vec(8);
    const IntegralElement el = first_element(sys, p, 5);
    std::vector<int> reference;
    for (std::uint64_t s = 0; s < 10; ++s) {
        const CartanReport rep = cartan_test(sys, p, el.basis, 1000 + s);
        if (reference.empty()) reference = rep.c;
        CHECK(rep.c == reference);
    }
}

TEST_CASE("solver dimension matches the variety codimension") {
    const std::vector<ExteriorSystem> systems = [] {
        std::vector<ExteriorSystem> v;
        v.push_back(jet_maps_system());
        v.push_back(cauchy_riemann_system());
        v.push_back(lagrangian_system(3));
        v.push_back(special_lagrangian_system(4));
        v.push_back(associative_system());
        return v;
    }();
    for (const auto& sys : systems) {
        Rng rng(55);
        const Vec p = sys.sample_point(rng);
        const int n = sys.plane_dim();
        const SolveResult sol = find_integral_elements(sys, p, n, 77, 10);
        REQUIRE(!sol.elements.empty());
        const CodimResult cr = codim_variety_at(sys, p, sol.elements.front().basis);
        CHECK(sol.local_dim == n * (sys.dim() - n) - cr.codim);
        CHECK(sol.dimension_consistent);
    }
}

TEST_CASE("inadmissible points are rejected") {
    ExteriorSystem sys = lagrangian_system(2);
    sys.set_admissible([](const Vec& p) { return p(0) > 0; });
    Vec bad = Vec::Zero(4);
    bad(0) = -1.0;
    CHECK_THROWS_AS(c0(sys, bad), std::domain_error);
}
