#ifndef EDSLAB_DYNAMICS_HPP
#define EDSLAB_DYNAMICS_HPP
//
// Concrete billiard dynamics in circles and ellipses: reflection steps,
// periodic orbits (closed form on the circle, Newton on the reflection
// conditions for the ellipse), and the map from one-parameter orbit
// families into the configuration space, where tangency to ker{psi} is
// checked numerically.
//

#include "edslab/billiard.hpp"

#include <cstdint>

namespace eds {

class ConvexCurve {
public:
    static ConvexCurve circle(double r);
    static ConvexCurve ellipse(double a, double b); // semi-axes, a >= b > 0

    bool is_circle() const { return a_ == b_; }
    double semi_major() const { return a_; }
    double semi_minor() const { return b_; }

    Vec2 point(double t) const { return Vec2(a_ * std::cos(t), b_ * std::sin(t)); }
    Vec2 tangent(double t) const { return Vec2(-a_ * std::sin(t), b_ * std::cos(t)); }
    Vec2 unit_tangent(double t) const { return tangent(t).normalized(); }
    Vec2 outward_normal(double t) const;

    // Conserved along billiard trajectories in the ellipse (and circle):
    // <diag(1/a^2, 1/b^2) p(t), dir>.
    double joachimsthal(double t, const Vec2& dir) const;

private:
    ConvexCurve(double a, double b) : a_(a), b_(b) {}
    double a_, b_;
};

struct ReflectStep {
    double t_next;
    Vec2 dir_next;
};

// Follow the chord from point(t) along the inward unit direction to the
// next boundary intersection and reflect there. Tangential directions are
// rejected.
ReflectStep reflect_step(const ConvexCurve& curve, double t, const Vec2& dir);

struct Orbit {
    ConvexCurve curve;
    std::vector<double> t; // boundary parameters, period = t.size()
    int q = 1;             // rotation count

    std::vector<Vec2> vertices() const;
    Vec configuration_point() const; // into the billiard chart
    // max over vertices of |<d_in - d_out, unit tangent>|
    double reflection_residual() const;
};

// n-periodic orbit with rotation count q. Circle: exact star polygon with a
// seeded starting phase. Ellipse: Newton on the n-1 interior reflection
// conditions with t_1 held fixed (the closure at the first vertex is then a
// consequence and is verified). Requires gcd(n, q) = 1.
Orbit find_periodic(const ConvexCurve& curve, int n, int q, std::uint64_t seed);

// The neighboring family member with first vertex parameter t_1 + s.
Orbit family_member(const Orbit& orbit, double s);

struct TangencyResult {
    double residual;     // max_i |psi_i(u)| / |u| for the FD family tangent u
    double residual_half; // same at step delta/2 (Richardson: ~residual/4)
};

// The one-parameter family of periodic orbits through `orbit`, mapped into
// the configuration space; returns how far its tangent is from ker{psi}.
TangencyResult family_tangency(const Orbit& orbit, double delta = 1e-4);

} // namespace eds

#endif
