#ifndef EDSLAB_SYSTEMS_HPP
#define EDSLAB_SYSTEMS_HPP
//
// Built-in systems: one-jets of plane maps, the Cauchy-Riemann reduction,
// Lagrangian and special Lagrangian submanifolds of C^n, the associative
// system on the imaginary octonions, and the two-equation Frobenius
// compatibility check.
//

#include "edslab/eds.hpp"

#include <array>
#include <utility>

namespace eds {

// Octonion over the basis (1, e1..e7). Products follow the Fano triples
// (1,2,3) (1,4,5) (1,7,6) (2,4,6) (2,5,7) (3,4,7) (3,6,5), oriented so that
// e_i e_j = e_k cyclically within each triple.
struct Octonion {
    std::array<double, 8> c{};

    static Octonion unit(int i); // 0 = real unit, 1..7 imaginary
    static Octonion from_imaginary(const Vec& v7);

    double real() const { return c[0]; }
    Vec imaginary() const; // 7 components
    bool is_imaginary(double tol = 1e-12) const { return std::abs(c[0]) <= tol; }
    double norm() const;

    Octonion& operator+=(const Octonion& o);
    Octonion& operator-=(const Octonion& o);
    Octonion& operator*=(double s);
    friend Octonion operator+(Octonion a, const Octonion& b) { return a += b; }
    friend Octonion operator-(Octonion a, const Octonion& b) { return a -= b; }
    friend Octonion operator*(double s, Octonion a) { return a *= s; }
};

Octonion oct_mul(const Octonion& a, const Octonion& b);
double oct_inner(const Octonion& a, const Octonion& b);

// phi(x,y,z) = <x, yz> on purely imaginary arguments.
double associative_form(const Octonion& x, const Octonion& y, const Octonion& z);

// phi_c(x,y,z) = (1/2) Im((xy)z - (zy)x), an Im O valued trilinear map.
Octonion associative_complement(const Octonion& x, const Octonion& y, const Octonion& z);

// The calibration 3-form phi as an AlternatingForm on R^7, built from the
// multiplication table (coefficients are evaluated, never hard-coded).
AlternatingForm associative_calibration();
// The 7 components of phi_c, antisymmetrized over arguments.
std::array<AlternatingForm, 7> associative_complement_forms();

// Re/Im of dz^1 ^ ... ^ dz^n on (x1..xn, y1..yn).
std::pair<AlternatingForm, AlternatingForm> complex_volume_forms(int n);

// --- system constructors ------------------------------------------------

ExteriorSystem jet_maps_system();
ExteriorSystem cauchy_riemann_system();
ExteriorSystem lagrangian_system(int n);
ExteriorSystem special_lagrangian_system(int n);
ExteriorSystem associative_system();

// --- Frobenius compatibility ---------------------------------------------

struct FrobeniusResult {
    double residual_hidden; // |A_y + B A_u - B_x - A B_u| by finite differences
    double residual_ideal;  // |coefficient of d(theta) ^ theta| at p
};

using ScalarField = std::function<double(const Vec&)>; // on (x, y, u)

FrobeniusResult frobenius_check(const ScalarField& a, const ScalarField& b, const Vec& p);

} // namespace eds

#endif
