#ifndef EDSLAB_BILLIARD_HPP
#define EDSLAB_BILLIARD_HPP
//
// The billiard configuration space: n points in the plane with the
// reflection coframe (eta^i, psi^i), the induced exterior system, the
// two-plane family solver, and the three-point obstruction computation.
//
// Conventions: indices are 1-based and cyclic (n+1 = 1, 0 = n). J rotates
// counterclockwise by pi/2. alpha_i is the angle between the incoming edge
// direction e_{i-1} and the normal J n_i. Chart coordinates interleave as
// (x_1, y_1, ..., x_n, y_n).
//

#include "edslab/eds.hpp"

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

namespace eds {

using Vec2 = Eigen::Vector2d;

struct BilliardConfig {
    int n = 0;
    std::vector<Vec2> z;
    std::vector<Vec2> tangent; // unit n_i (bisector tangent direction)
    std::vector<Vec2> normal;  // J n_i
    std::vector<double> alpha; // angle(e_{i-1}, J n_i), in [0, pi]
    std::vector<double> len;   // l_i = |z_{i+1} - z_i|
    std::vector<double> a;     // cos(alpha_{i+1}) / (2 l_i)
    std::vector<double> b;     // cos(alpha_{i-1}) / (2 l_{i-1})
    double diameter = 0.0;

    int wrap(int i) const { return ((i - 1) % n + n) % n + 1; } // 1-based cyclic
};

// Derived geometry; throws std::domain_error on coincident points, |N_i| = 0
// or cos(alpha_j) = 0 (the admissibility conditions).
BilliardConfig config_geometry(const std::vector<Vec2>& points);

Vec config_to_point(const std::vector<Vec2>& points);
std::vector<Vec2> point_to_config(const Vec& p);
BilliardConfig config_at(const Vec& p);

// Admissible configurations sampled as regular polygons with vertex jitter
// up to 20% of the circumradius (rejection on the admissibility predicate).
Vec sample_billiard_point(Rng& rng, int n);

// The system ({psi_i}, eta^1 ^ eta^2) on the 2n-dimensional chart. The psi
// closure is finite-difference (fourth-order stencil); the genericity
// predicate asks every eta^i ^ eta^{i+1} to be nonvanishing on the plane.
ExteriorSystem billiard_system(int n);

// Columns X_1..X_n: the dual basis of the eta's inside ker{psi}, from the
// full 2n x 2n coframe solve.
Mat dual_frame(const Vec& p);

// max_j max_{k<l} |(d psi^j - (a_j eta^{j+1} + b_j eta^{j-1}) ^ eta^j)(X_k, X_l)|
double structure_residual(const Vec& p);

// One member of the (n-3)-parameter family of generic two-dimensional
// integral elements at p, built by solving the consecutive-minor chain that
// the numerically evaluated d psi^j impose and back-substituting the free
// parameters. Throws FamilyEmptyError for n = 3 (no parameters to vary).
struct FamilySolve {
    IntegralElement element;
    Vec d;                        // consecutive minors D_1..D_n on (v, w), D_1 = 1
    Vec v_coeffs, w_coeffs;       // X-frame coefficients of the basis
    double consistency_residual;  // the n-th (dependent) constraint at the solution
    double printed_row1_residual; // |a_1 + b_1 p^n_2|
    double swapped_row1_residual; // |a_1 p^n_2 + b_1| (the a<->b swapped variant)
};

class FamilyEmptyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

FamilySolve integral_family(const Vec& p, const Vec& params);

// The unique generic two-plane for n = 3 (zero-parameter case of the same
// solve; used by the obstruction computation).
FamilySolve unique_triangle_element(const Vec& p);

// All eta^i ^ eta^{i+1} nonvanishing on an integral element E with
// eta^1 ^ eta^2 != 0.
bool genericity_propagation(const ExteriorSystem& sys, const IntegralElement& e,
                            double tol = 1e-9);

struct No3dResult {
    bool none = false;
    bool cascade_none = false;          // linear forcing chain kills every f_a
    bool search_none = false;           // randomized solver finds nothing generic
    std::vector<std::string> cascade;   // forcing order, e.g. "dpsi^2 on (w, .) forces f_3 = 0"
    int search_converged_nongeneric = 0;
};

// Certifies that no generic 3-dimensional integral element exists at p, by
// the forcing cascade on a generic family member and by randomized search.
// The two checks must agree; disagreement throws.
No3dResult no_3d_integral_elements(const Vec& p, std::uint64_t seed, int trials = 50);

struct TriangleObstruction {
    double torsion_value;       // d theta* on the eta-dual basis of the unique element
    double claimed_value;       // 6 l1 c1 c2 s1 s2 with the matching normalization
    double bracket_fd;          // torsion * (normalization), comparable to 6 l1 c1c2s1s2
    double bracket_claimed;     // 6 l1 c1 c2 s1 s2
    double theta_star_residual; // |theta* restricted to the element| (should be ~0)
    std::string convention;     // which cosine convention theta* needed
    Vec point;
};

// Builds the triangle with incidence angles (alpha1, alpha2) measured from
// the tangent line (interior angles 2 alpha_i) and first side length l1,
// forms the added one-form theta* that vanishes on the unique integral
// element, and compares its finite-difference torsion against the claimed
// closed form. Preconditions: alpha1, alpha2 > 0, alpha1 + alpha2 < pi/2,
// l1 > 0.
TriangleObstruction triangle_obstruction(double alpha1, double alpha2, double l1);

} // namespace eds

#endif
