#ifndef EDSLAB_EDS_HPP
#define EDSLAB_EDS_HPP
//
// The engine: exterior differential systems, integral elements, polar
// spaces, the codimension of the integral-element variety, the involutivity
// test with characters, and a Gauss-Newton integral-element solver.
//

#include "edslab/chart.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace eds {

// A differential ideal presented by generators, together with the data the
// numerics need: an optional independence condition (ordered 1-forms whose
// wedge is the paper-style Omega), an admissibility predicate cutting out
// the open set the system lives on, and an optional genericity predicate on
// candidate tangent planes. The closure holds the generators followed by
// exactly one exterior-derivative entry per generator (analytic when the
// generator supplies one, numeric otherwise). Immutable after construction.
class ExteriorSystem {
public:
    using PointPredicate = std::function<bool(const Vec&)>;
    using PlanePredicate = std::function<bool(const Vec&, const Mat&)>; // orthonormal basis cols
    using PointSampler = std::function<Vec(Rng&)>;
    using VectorField = std::function<Vec(const Vec&)>;

    ExteriorSystem(std::string name, Chart chart, std::vector<FormField> generators,
                   int plane_dim);

    ExteriorSystem& set_independence(std::vector<FormField> one_forms);
    ExteriorSystem& set_admissible(PointPredicate pred);
    ExteriorSystem& set_genericity(PlanePredicate pred);
    ExteriorSystem& set_sampler(PointSampler sampler);
    ExteriorSystem& set_preferred_flag_vector(VectorField v);

    // Same system with the generators' finite-difference base step replaced
    // (stencil orders are kept); the closure is rebuilt.
    ExteriorSystem with_fd(double h_base) const;

    const std::string& name() const { return name_; }
    const Chart& chart() const { return chart_; }
    int dim() const { return chart_.dim; }
    int plane_dim() const { return plane_dim_; }
    const std::vector<FormField>& generators() const { return generators_; }
    const std::vector<FormField>& closure() const { return closure_; }
    const std::vector<FormField>& independence() const { return independence_; }
    bool has_independence() const { return !independence_.empty(); }

    bool admissible(const Vec& p) const;
    void require_admissible(const Vec& p) const; // throws std::domain_error
    bool has_genericity() const { return static_cast<bool>(generic_); }
    bool generic_plane(const Vec& p, const Mat& orthonormal_basis) const;
    bool has_sampler() const { return static_cast<bool>(sampler_); }
    Vec sample_point(Rng& rng) const;
    bool has_preferred_flag_vector() const { return static_cast<bool>(preferred_); }
    Vec preferred_flag_vector(const Vec& p) const { return preferred_(p); }

private:
    std::string name_;
    Chart chart_;
    std::vector<FormField> generators_;
    std::vector<FormField> closure_;
    std::vector<FormField> independence_;
    int plane_dim_;
    PointPredicate admissible_;
    PlanePredicate generic_;
    PointSampler sampler_;
    VectorField preferred_;
};

// A point with an ordered basis of a candidate tangent plane.
struct IntegralElement {
    Vec point;
    Mat basis; // columns
};

// Pointwise values of the closure and independence forms; computed once per
// point so that plane sweeps do not re-evaluate (numeric) derivatives.
struct SystemPointData {
    Vec point;
    std::vector<AlternatingForm> closure;
    std::vector<AlternatingForm> independence;
};

SystemPointData eval_system_at(const ExteriorSystem& sys, const Vec& p);

// All evaluations of closure forms of degree d <= basis.cols() on increasing
// d-subsets of the basis columns, in a fixed deterministic order.
Vec constraint_values(const SystemPointData& data, const Mat& basis);

// max |constraint| over the orthonormalized basis; the membership test is
// residual < tol.
double integral_residual(const ExteriorSystem& sys, const Vec& p, const Mat& basis);
double integral_residual(const SystemPointData& data, const Mat& basis);
bool is_integral_element(const ExteriorSystem& sys, const Vec& p, const Mat& basis,
                         double tol = 1e-8);

// codim V_1 at p: numerical rank of the degree-1 generators.
int c0(const ExteriorSystem& sys, const Vec& p);

struct PolarSpace {
    Mat basis;  // orthonormal basis of H(E_j)
    int c = 0;  // codim of H(E_j) in T_p
    RankMargin margin;
};

// Polar space of the flag span: common kernel of v -> phi(v, e_S) over all
// closure forms phi of degree d <= j+1 and all (d-1)-subsets S of the flag.
PolarSpace polar_space(const ExteriorSystem& sys, const Vec& p, const Mat& flag);
PolarSpace polar_space(const SystemPointData& data, const Mat& flag);

struct CodimResult {
    int codim = 0;
    RankMargin margin;
    std::vector<std::string> warnings;
};

// Fiberwise codimension of the integral-element variety at (p, E): rank of
// the finite-difference Jacobian of the constraint map on the Grassmann
// graph chart centered at E.
CodimResult codim_variety_at(const ExteriorSystem& sys, const Vec& p, const Mat& basis);

struct SolveResult {
    std::vector<IntegralElement> elements;
    int local_dim = -1;        // constraint-Jacobian nullity at solutions; -1 if none
    bool dimension_consistent = true;
    int converged = 0;         // converged starts (before genericity filter)
    int generic_found = 0;
    std::string message;
};

// Seeded Gauss-Newton searches for k-dimensional integral elements at p.
// Planes are parameterized on the independence-locus graph chart when the
// system carries an independence condition of matching rank, otherwise on
// graph charts around random planes. Empty output is a valid answer.
SolveResult find_integral_elements(const ExteriorSystem& sys, const Vec& p, int k,
                                   std::uint64_t seed, int trials = 20);

struct CartanDiagnostics {
    double rank_tol = kRankTol;
    double integral_tol = 1e-8;
    std::vector<RankMargin> polar_margins; // one per c_j
    RankMargin codim_margin;
    std::vector<std::string> warnings;
};

struct CartanReport {
    int n = 0;                   // dimension of the tested integral element
    std::vector<int> c;          // c_0 .. c_{n-1}
    int sum_c = 0;
    int codim = 0;               // codim of V_n at (p, E)
    bool involutive = false;
    std::vector<int> characters; // s_1..s_n (top character only when involutive)
    int k0 = 0;
    std::string generality;
    CartanDiagnostics diag;
};

// Cartan's test at an integral element: polar codimensions along a seeded
// generic flag inside E, codimension of the variety, verdict, characters and
// the generality statement. Throws if the Cartan inequality fails, which
// signals a tolerance or genericity failure rather than a mathematical one.
CartanReport cartan_test(const ExteriorSystem& sys, const Vec& p, const Mat& basis,
                         std::uint64_t seed);

std::string format_generality(int s_k0, int k0);

} // namespace eds

#endif
