#include "edslab/systems.hpp"

#include <cmath>
#include <stdexcept>

namespace eds {

namespace {

// table[i][j] = signed basis index of e_i * e_j, encoded as sign * (k + 1)
// with k = 0 the real unit.
struct OctonionTable {
    int entry[8][8] = {};

    OctonionTable() {
        constexpr int triples[7][3] = {{1, 2, 3}, {1, 4, 5}, {1, 7, 6}, {2, 4, 6},
                                       {2, 5, 7}, {3, 4, 7}, {3, 6, 5}};
        for (int j = 0; j < 8; ++j) {
            entry[0][j] = j + 1;
            entry[j][0] = j + 1;
        }
        for (int i = 1; i < 8; ++i) entry[i][i] = -1; // e_i^2 = -1
        for (const auto& t : triples) {
            const int a = t[0], b = t[1], c = t[2];
            entry[a][b] = c + 1;
            entry[b][c] = a + 1;
            entry[c][a] = b + 1;
            entry[b][a] = -(c + 1);
            entry[c][b] = -(a + 1);
            entry[a][c] = -(b + 1);
        }
    }
};

const OctonionTable& oct_table() {
    static const OctonionTable table;
    return table;
}

} // namespace

Octonion Octonion::unit(int i) {
    if (i < 0 || i > 7) throw std::invalid_argument("octonion basis index out of range");
    Octonion o;
    o.c[static_cast<size_t>(i)] = 1.0;
    return o;
}

Octonion Octonion::from_imaginary(const Vec& v7) {
    if (v7.size() != 7) throw std::invalid_argument("imaginary part needs 7 components");
    Octonion o;
    for (int i = 0; i < 7; ++i) o.c[static_cast<size_t>(i + 1)] = v7(i);
    return o;
}

Vec Octonion::imaginary() const {
    Vec v(7);
    for (int i = 0; i < 7; ++i) v(i) = c[static_cast<size_t>(i + 1)];
    return v;
}

double Octonion::norm() const {
    double s = 0.0;
    for (double x : c) s += x * x;
    return std::sqrt(s);
}

Octonion& Octonion::operator+=(const Octonion& o) {
    for (int i = 0; i < 8; ++i) c[static_cast<size_t>(i)] += o.c[static_cast<size_t>(i)];
    return *this;
}

Octonion& Octonion::operator-=(const Octonion& o) {
    for (int i = 0; i < 8; ++i) c[static_cast<size_t>(i)] -= o.c[static_cast<size_t>(i)];
    return *this;
}

Octonion& Octonion::operator*=(double s) {
    for (double& x : c) x *= s;
    return *this;
}

Octonion oct_mul(const Octonion& a, const Octonion& b) {
    const auto& table = oct_table();
    Octonion out;
    for (int i = 0; i < 8; ++i) {
        const double ai = a.c[static_cast<size_t>(i)];
        if (ai == 0.0) continue;
        for (int j = 0; j < 8; ++j) {
            const double bj = b.c[static_cast<size_t>(j)];
            if (bj == 0.0) continue;
            const int e = table.entry[i][j];
            const int k = std::abs(e) - 1;
            out.c[static_cast<size_t>(k)] += (e > 0 ? 1.0 : -1.0) * ai * bj;
        }
    }
    return out;
}

double oct_inner(const Octonion& a, const Octonion& b) {
    double s = 0.0;
    for (int i = 0; i < 8; ++i) s += a.c[static_cast<size_t>(i)] * b.c[static_cast<size_t>(i)];
    return s;
}

double associative_form(const Octonion& x, const Octonion& y, const Octonion& z) {
    if (!x.is_imaginary() || !y.is_imaginary() || !z.is_imaginary())
        throw std::invalid_argument("associative_form: arguments must be purely imaginary");
    return oct_inner(x, oct_mul(y, z));
}

Octonion associative_complement(const Octonion& x, const Octonion& y, const Octonion& z) {
    Octonion v = oct_mul(oct_mul(x, y), z) - oct_mul(oct_mul(z, y), x);
    v *= 0.5;
    v.c[0] = 0.0; // imaginary part
    return v;
}

AlternatingForm associative_calibration() {
    AlternatingForm phi(7, 3);
    for (const auto& mi : MultiIndex::all(7, 3)) {
        const Octonion x = Octonion::unit(mi[0]);
        const Octonion y = Octonion::unit(mi[1]);
        const Octonion z = Octonion::unit(mi[2]);
        phi.set_coeff(mi, associative_form(x, y, z));
    }
    return phi;
}

std::array<AlternatingForm, 7> associative_complement_forms() {
    std::array<AlternatingForm, 7> out;
    for (auto& f : out) f = AlternatingForm(7, 3);
    // evaluate on basis triples and antisymmetrize over the 3! orderings
    constexpr int perms[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1},
                                 {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
    constexpr double signs[6] = {1, 1, 1, -1, -1, -1};
    for (const auto& mi : MultiIndex::all(7, 3)) {
        Octonion acc;
        for (int t = 0; t < 6; ++t) {
            const Octonion x = Octonion::unit(mi[perms[t][0]]);
            const Octonion y = Octonion::unit(mi[perms[t][1]]);
            const Octonion z = Octonion::unit(mi[perms[t][2]]);
            Octonion v = associative_complement(x, y, z);
            v *= signs[t];
            acc += v;
        }
        acc *= 1.0 / 6.0;
        for (int comp = 0; comp < 7; ++comp)
            out[static_cast<size_t>(comp)].set_coeff(mi, acc.c[static_cast<size_t>(comp + 1)]);
    }
    return out;
}

std::pair<AlternatingForm, AlternatingForm> complex_volume_forms(int n) {
    const int m = 2 * n;
    AlternatingForm re = AlternatingForm::scalar(m, 1.0);
    AlternatingForm im = AlternatingForm::scalar(m, 0.0);
    for (int j = 1; j <= n; ++j) {
        const auto dx = AlternatingForm::basis(m, MultiIndex({j}));
        const auto dy = AlternatingForm::basis(m, MultiIndex({n + j}));
        // (re + i im) ^ (dx + i dy)
        AlternatingForm re2 = wedge(re, dx);
        re2 -= wedge(im, dy);
        AlternatingForm im2 = wedge(re, dy);
        im2 += wedge(im, dx);
        re = std::move(re2);
        im = std::move(im2);
    }
    return {re, im};
}

namespace {

Vec gaussian_point(Rng& rng, int m) { return rng.gaussian_vec(m); }

FormField symplectic_field(const Chart& chart, int n) {
    AlternatingForm omega(2 * n, 2);
    for (int i = 1; i <= n; ++i) omega.set_coeff(MultiIndex({i, n + i}), 1.0);
    return FormField::constant(chart, omega);
}

} // namespace

ExteriorSystem jet_maps_system() {
    const Chart chart(8, {"x1", "x2", "u1", "u2", "p11", "p12", "p21", "p22"});
    // theta^a = du^a - p^a_1 dx^1 - p^a_2 dx^2, with constant-coefficient d
    std::vector<FormField> gens;
    for (int a = 1; a <= 2; ++a) {
        const int u = 1 + a;            // 0-based slot of u^a
        const int p1 = 4 + 2 * (a - 1); // 0-based slot of p^a_1
        const int p2 = p1 + 1;
        FormField field(
            chart, 1,
            [u, p1, p2](const Vec& p) {
                AlternatingForm f(8, 1);
                f.set_coeff(MultiIndex({u + 1}), 1.0);
                f.set_coeff(MultiIndex({1}), -p(p1));
                f.set_coeff(MultiIndex({2}), -p(p2));
                return f;
            },
            [p1, p2](const Vec&) {
                // d theta^a = -dp^a_1 ^ dx^1 - dp^a_2 ^ dx^2
                AlternatingForm d(8, 2);
                d.set_coeff(MultiIndex({1, p1 + 1}), 1.0);
                d.set_coeff(MultiIndex({2, p2 + 1}), 1.0);
                return d;
            });
        gens.push_back(std::move(field));
    }
    ExteriorSystem sys("jets", chart, std::move(gens), 2);
    sys.set_independence({FormField::coordinate(chart, 1), FormField::coordinate(chart, 2)});
    sys.set_sampler([](Rng& rng) { return gaussian_point(rng, 8); });
    return sys;
}

ExteriorSystem cauchy_riemann_system() {
    // jets chart reduced by p^1_1 = p^2_2 = p, p^1_2 = -p^2_1 = q
    const Chart chart(6, {"x1", "x2", "u1", "u2", "p", "q"});
    std::vector<FormField> gens;
    gens.emplace_back(
        chart, 1,
        [](const Vec& p) {
            AlternatingForm f(6, 1);
            f.set_coeff(MultiIndex({3}), 1.0);
            f.set_coeff(MultiIndex({1}), -p(4));
            f.set_coeff(MultiIndex({2}), -p(5));
            return f;
        },
        [](const Vec&) {
            AlternatingForm d(6, 2); // -dp^dx1 - dq^dx2
            d.set_coeff(MultiIndex({1, 5}), 1.0);
            d.set_coeff(MultiIndex({2, 6}), 1.0);
            return d;
        });
    gens.emplace_back(
        chart, 1,
        [](const Vec& p) {
            AlternatingForm f(6, 1);
            f.set_coeff(MultiIndex({4}), 1.0);
            f.set_coeff(MultiIndex({1}), p(5));
            f.set_coeff(MultiIndex({2}), -p(4));
            return f;
        },
        [](const Vec&) {
            AlternatingForm d(6, 2); // dq^dx1 - dp^dx2
            d.set_coeff(MultiIndex({1, 6}), -1.0);
            d.set_coeff(MultiIndex({2, 5}), 1.0);
            return d;
        });
    ExteriorSystem sys("cauchy-riemann", chart, std::move(gens), 2);
    sys.set_independence({FormField::coordinate(chart, 1), FormField::coordinate(chart, 2)});
    sys.set_sampler([](Rng& rng) { return gaussian_point(rng, 6); });
    return sys;
}

ExteriorSystem lagrangian_system(int n) {
    if (n < 1) throw std::invalid_argument("lagrangian_system: n must be >= 1");
    const Chart chart = [&] {
        std::vector<std::string> labels;
        for (int i = 1; i <= n; ++i) labels.push_back("x" + std::to_string(i));
        for (int i = 1; i <= n; ++i) labels.push_back("y" + std::to_string(i));
        return Chart(2 * n, labels);
    }();
    std::vector<FormField> gens{symplectic_field(chart, n)};
    ExteriorSystem sys("lagrangian", chart, std::move(gens), n);
    std::vector<FormField> indep;
    for (int i = 1; i <= n; ++i) indep.push_back(FormField::coordinate(chart, i));
    sys.set_independence(std::move(indep));
    sys.set_sampler([m = 2 * n](Rng& rng) { return gaussian_point(rng, m); });
    return sys;
}

ExteriorSystem special_lagrangian_system(int n) {
    if (n < 2) throw std::invalid_argument("special_lagrangian_system: n must be >= 2");
    const Chart chart = [&] {
        std::vector<std::string> labels;
        for (int i = 1; i <= n; ++i) labels.push_back("x" + std::to_string(i));
        for (int i = 1; i <= n; ++i) labels.push_back("y" + std::to_string(i));
        return Chart(2 * n, labels);
    }();
    auto [alpha, alpha_c] = complex_volume_forms(n);
    (void)alpha;
    std::vector<FormField> gens{symplectic_field(chart, n),
                                FormField::constant(chart, alpha_c)};
    ExteriorSystem sys("special-lagrangian", chart, std::move(gens), n);
    std::vector<FormField> indep;
    for (int i = 1; i <= n; ++i) indep.push_back(FormField::coordinate(chart, i));
    sys.set_independence(std::move(indep));
    sys.set_sampler([m = 2 * n](Rng& rng) { return gaussian_point(rng, m); });
    return sys;
}

ExteriorSystem associative_system() {
    const Chart chart = Chart::numbered(7, "e");
    std::vector<FormField> gens;
    for (const auto& f : associative_complement_forms())
        gens.push_back(FormField::constant(chart, f));
    ExteriorSystem sys("associative", chart, std::move(gens), 3);
    sys.set_sampler([](Rng& rng) { return gaussian_point(rng, 7); });
    return sys;
}

FrobeniusResult frobenius_check(const ScalarField& a, const ScalarField& b, const Vec& p) {
    if (p.size() != 3) throw std::invalid_argument("frobenius_check: point must be (x, y, u)");
    const double h = fd_step(p);
    auto partial = [&](const ScalarField& f, int i) {
        Vec pp = p, pm = p;
        pp(i) += h;
        pm(i) -= h;
        return (f(pp) - f(pm)) / (2.0 * h);
    };
    FrobeniusResult out{};
    out.residual_hidden = std::abs(partial(a, 1) + b(p) * partial(a, 2) -
                                   partial(b, 0) - a(p) * partial(b, 2));

    const Chart chart(3, {"x", "y", "u"});
    const FormField theta(chart, 1, [&a, &b](const Vec& q) {
        AlternatingForm f(3, 1);
        f.set_coeff(MultiIndex({3}), 1.0);
        f.set_coeff(MultiIndex({1}), -a(q));
        f.set_coeff(MultiIndex({2}), -b(q));
        return f;
    });
    const AlternatingForm dth = theta.d_numeric(p);
    const AlternatingForm top = wedge(dth, theta.eval_at(p));
    out.residual_ideal = std::abs(top.coeff(MultiIndex({1, 2, 3})));
    return out;
}

} // namespace eds
