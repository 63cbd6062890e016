#include "edslab/dynamics.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace eds {

ConvexCurve ConvexCurve::circle(double r) {
    if (!(r > 0.0)) throw std::invalid_argument("circle radius must be positive");
    return ConvexCurve(r, r);
}

ConvexCurve ConvexCurve::ellipse(double a, double b) {
    if (!(a >= b && b > 0.0))
        throw std::invalid_argument("ellipse needs semi-axes a >= b > 0");
    return ConvexCurve(a, b);
}

Vec2 ConvexCurve::outward_normal(double t) const {
    return Vec2(std::cos(t) / a_, std::sin(t) / b_).normalized();
}

double ConvexCurve::joachimsthal(double t, const Vec2& dir) const {
    const Vec2 p = point(t);
    return p.x() * dir.x() / (a_ * a_) + p.y() * dir.y() / (b_ * b_);
}

ReflectStep reflect_step(const ConvexCurve& curve, double t, const Vec2& dir) {
    const double a = curve.semi_major(), b = curve.semi_minor();
    const Vec2 nu = curve.outward_normal(t);
    const Vec2 d = dir.normalized();
    if (d.dot(nu) >= -1e-12)
        throw std::invalid_argument("reflect_step: direction must point strictly inward");
    // scaled coordinates turn the conic into the unit circle
    const Vec2 p_s(curve.point(t).x() / a, curve.point(t).y() / b);
    const Vec2 d_s(d.x() / a, d.y() / b);
    const double s = -2.0 * p_s.dot(d_s) / d_s.squaredNorm(); // chord parameter
    const Vec2 hit = curve.point(t) + s * d;
    const double t_next = std::atan2(hit.y() / b, hit.x() / a);
    const Vec2 nu_next = curve.outward_normal(t_next);
    ReflectStep out;
    out.t_next = t_next;
    out.dir_next = d - 2.0 * d.dot(nu_next) * nu_next;
    return out;
}

std::vector<Vec2> Orbit::vertices() const {
    std::vector<Vec2> v;
    v.reserve(t.size());
    for (double ti : t) v.push_back(curve.point(ti));
    return v;
}

Vec Orbit::configuration_point() const { return config_to_point(vertices()); }

double Orbit::reflection_residual() const {
    const int n = static_cast<int>(t.size());
    const auto verts = vertices();
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        const Vec2& prev = verts[static_cast<size_t>((i + n - 1) % n)];
        const Vec2& here = verts[static_cast<size_t>(i)];
        const Vec2& next = verts[static_cast<size_t>((i + 1) % n)];
        const Vec2 d_in = (here - prev).normalized();
        const Vec2 d_out = (next - here).normalized();
        worst = std::max(
            worst, std::abs((d_in - d_out).dot(curve.unit_tangent(t[static_cast<size_t>(i)]))));
    }
    return worst;
}

namespace {

// Derivative of the polygon perimeter in one vertex parameter: zero exactly
// at the reflection condition.
double reflection_equation(const ConvexCurve& curve, const std::vector<double>& t, int i) {
    const int n = static_cast<int>(t.size());
    const Vec2 prev = curve.point(t[static_cast<size_t>((i + n - 1) % n)]);
    const Vec2 here = curve.point(t[static_cast<size_t>(i)]);
    const Vec2 next = curve.point(t[static_cast<size_t>((i + 1) % n)]);
    const Vec2 d_in = (here - prev).normalized();
    const Vec2 d_out = (next - here).normalized();
    return (d_in - d_out).dot(curve.tangent(t[static_cast<size_t>(i)]));
}

// Solve the reflection conditions at vertices 2..n with t_1 fixed; the
// condition at the first vertex then closes on its own and is verified by
// the caller. Damped Newton with a finite-difference Jacobian.
bool close_orbit(const ConvexCurve& curve, std::vector<double>& t, double tol = 1e-12) {
    const int n = static_cast<int>(t.size());
    const int m = n - 1;
    const auto eqs = [&](const std::vector<double>& tt) {
        Vec g(m);
        for (int i = 1; i < n; ++i) g(i - 1) = reflection_equation(curve, tt, i);
        return g;
    };
    Vec g = eqs(t);
    for (int iter = 0; iter < 100; ++iter) {
        if (g.lpNorm<Eigen::Infinity>() < tol) return true;
        Mat jac(m, m);
        const double h = 1e-7;
        for (int c = 0; c < m; ++c) {
            std::vector<double> tp = t, tm = t;
            tp[static_cast<size_t>(c + 1)] += h;
            tm[static_cast<size_t>(c + 1)] -= h;
            jac.col(c) = (eqs(tp) - eqs(tm)) / (2.0 * h);
        }
        const Vec step = pinv_solve(jac, -g);
        double damp = 1.0;
        std::vector<double> t_new = t;
        for (int c = 0; c < m; ++c)
            t_new[static_cast<size_t>(c + 1)] = t[static_cast<size_t>(c + 1)] + step(c);
        Vec g_new = eqs(t_new);
        while (g_new.norm() >= g.norm() && damp > 1e-8) {
            damp *= 0.5;
            for (int c = 0; c < m; ++c)
                t_new[static_cast<size_t>(c + 1)] = t[static_cast<size_t>(c + 1)] + damp * step(c);
            g_new = eqs(t_new);
        }
        if (g_new.norm() >= g.norm()) break;
        t = t_new;
        g = g_new;
    }
    return g.lpNorm<Eigen::Infinity>() < tol;
}

std::vector<double> star_polygon(int n, int q, double t0) {
    std::vector<double> t(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) t[static_cast<size_t>(k)] = t0 + 2.0 * M_PI * q * k / n;
    return t;
}

} // namespace

Orbit find_periodic(const ConvexCurve& curve, int n, int q, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("find_periodic: n must be >= 2");
    if (q < 1 || q >= n || std::gcd(n, q) != 1)
        throw std::invalid_argument("find_periodic: need 1 <= q < n with gcd(n, q) = 1");
    Rng rng(seed);
    const double t0 = 2.0 * M_PI * rng.uniform();
    Orbit orbit{curve, star_polygon(n, q, t0), q};
    if (curve.is_circle()) return orbit; // exact by symmetry

    // continuation from the circle: inflate the major axis in a few stages
    const double a = curve.semi_major(), b = curve.semi_minor();
    const int steps = std::max(1, static_cast<int>(std::ceil((a / b - 1.0) / 0.25)));
    std::vector<double> t = orbit.t;
    for (int s = 1; s <= steps; ++s) {
        const double frac = static_cast<double>(s) / steps;
        const ConvexCurve stage = ConvexCurve::ellipse(b + (a - b) * frac, b);
        if (!close_orbit(stage, t)) {
            std::ostringstream os;
            os << "find_periodic: Newton failed at continuation stage " << s << "/" << steps
               << " (n=" << n << ", q=" << q << ")";
            throw std::runtime_error(os.str());
        }
    }
    orbit.t = t;
    if (orbit.reflection_residual() > 1e-10)
        throw std::runtime_error("find_periodic: closure residual above tolerance");
    return orbit;
}

Orbit family_member(const Orbit& orbit, double s) {
    Orbit next = orbit;
    if (orbit.curve.is_circle()) {
        for (double& ti : next.t) ti += s;
        return next;
    }
    next.t[0] += s;
    if (!close_orbit(next.curve, next.t))
        throw std::runtime_error("family_member: re-closure failed");
    return next;
}

TangencyResult family_tangency(const Orbit& orbit, double delta) {
    const ExteriorSystem sys = billiard_system(static_cast<int>(orbit.t.size()));
    const SystemPointData data = eval_system_at(sys, orbit.configuration_point());
    const auto residual_at = [&](double d) {
        const Vec plus = family_member(orbit, d).configuration_point();
        const Vec minus = family_member(orbit, -d).configuration_point();
        const Vec u = (plus - minus) / (2.0 * d);
        double worst = 0.0;
        for (size_t j = 0; j < data.closure.size(); ++j) {
            const auto& phi = data.closure[j];
            if (phi.degree() != 1) continue;
            worst = std::max(worst, std::abs(evaluate(phi, {u})));
        }
        return worst / u.norm();
    };
    TangencyResult out;
    out.residual = residual_at(delta);
    out.residual_half = residual_at(delta / 2.0);
    return out;
}

} // namespace eds
