#include "edslab/eds.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace eds {

ExteriorSystem::ExteriorSystem(std::string name, Chart chart,
                               std::vector<FormField> generators, int plane_dim)
    : name_(std::move(name)),
      chart_(std::move(chart)),
      generators_(std::move(generators)),
      plane_dim_(plane_dim) {
    if (plane_dim_ < 1 || plane_dim_ > chart_.dim)
        throw std::invalid_argument("plane dimension out of range");
    for (const auto& g : generators_) {
        if (g.degree() < 1) throw std::invalid_argument("generators must have degree >= 1");
        if (g.degree() > chart_.dim)
            throw std::invalid_argument("generator degree exceeds chart dimension");
    }
    closure_ = generators_;
    for (const auto& g : generators_) closure_.push_back(g.derivative());
}

ExteriorSystem& ExteriorSystem::set_independence(std::vector<FormField> one_forms) {
    for (const auto& f : one_forms)
        if (f.degree() != 1) throw std::invalid_argument("independence entries must be 1-forms");
    independence_ = std::move(one_forms);
    return *this;
}

ExteriorSystem& ExteriorSystem::set_admissible(PointPredicate pred) {
    admissible_ = std::move(pred);
    return *this;
}

ExteriorSystem& ExteriorSystem::set_genericity(PlanePredicate pred) {
    generic_ = std::move(pred);
    return *this;
}

ExteriorSystem& ExteriorSystem::set_sampler(PointSampler sampler) {
    sampler_ = std::move(sampler);
    return *this;
}

ExteriorSystem& ExteriorSystem::set_preferred_flag_vector(VectorField v) {
    preferred_ = std::move(v);
    return *this;
}

ExteriorSystem ExteriorSystem::with_fd(double h_base) const {
    std::vector<FormField> gens = generators_;
    for (auto& g : gens) g.set_fd(h_base, g.fd_order());
    ExteriorSystem out(name_, chart_, std::move(gens), plane_dim_);
    out.independence_ = independence_;
    out.admissible_ = admissible_;
    out.generic_ = generic_;
    out.sampler_ = sampler_;
    out.preferred_ = preferred_;
    return out;
}

bool ExteriorSystem::admissible(const Vec& p) const {
    if (p.size() != chart_.dim) return false;
    return admissible_ ? admissible_(p) : true;
}

void ExteriorSystem::require_admissible(const Vec& p) const {
    if (!admissible(p)) throw std::domain_error(name_ + ": point is not admissible");
}

bool ExteriorSystem::generic_plane(const Vec& p, const Mat& basis) const {
    return generic_ ? generic_(p, basis) : true;
}

Vec ExteriorSystem::sample_point(Rng& rng) const {
    if (!sampler_) throw std::logic_error(name_ + ": no point sampler");
    return sampler_(rng);
}

SystemPointData eval_system_at(const ExteriorSystem& sys, const Vec& p) {
    sys.require_admissible(p);
    SystemPointData data;
    data.point = p;
    data.closure.reserve(sys.closure().size());
    for (const auto& f : sys.closure()) data.closure.push_back(f.eval_at(p));
    for (const auto& f : sys.independence()) data.independence.push_back(f.eval_at(p));
    return data;
}

Vec constraint_values(const SystemPointData& data, const Mat& basis) {
    const int k = static_cast<int>(basis.cols());
    std::vector<double> vals;
    for (const auto& phi : data.closure) {
        const int d = phi.degree();
        if (d < 1 || d > k) continue;
        for (const auto& s : MultiIndex::all(k, d)) {
            Mat pick(basis.rows(), d);
            for (int c = 0; c < d; ++c) pick.col(c) = basis.col(s[c] - 1);
            vals.push_back(evaluate(phi, pick));
        }
    }
    Vec out(static_cast<Eigen::Index>(vals.size()));
    for (size_t i = 0; i < vals.size(); ++i) out(static_cast<Eigen::Index>(i)) = vals[i];
    return out;
}

double integral_residual(const SystemPointData& data, const Mat& basis) {
    const Mat q = orthonormalized(basis);
    const Vec v = constraint_values(data, q);
    return v.size() ? v.lpNorm<Eigen::Infinity>() : 0.0;
}

double integral_residual(const ExteriorSystem& sys, const Vec& p, const Mat& basis) {
    return integral_residual(eval_system_at(sys, p), basis);
}

bool is_integral_element(const ExteriorSystem& sys, const Vec& p, const Mat& basis,
                         double tol) {
    if (basis.cols() < 1 || basis.rows() != sys.dim())
        throw std::invalid_argument("basis shape mismatch");
    if (numerical_rank(basis).rank != basis.cols())
        throw std::invalid_argument("basis is rank deficient");
    return integral_residual(sys, p, basis) < tol;
}

int c0(const ExteriorSystem& sys, const Vec& p) {
    const SystemPointData data = eval_system_at(sys, p);
    std::vector<const AlternatingForm*> ones;
    for (const auto& phi : data.closure)
        if (phi.degree() == 1) ones.push_back(&phi);
    if (ones.empty()) return 0;
    Mat a(static_cast<Eigen::Index>(ones.size()), sys.dim());
    for (size_t i = 0; i < ones.size(); ++i)
        for (int j = 0; j < sys.dim(); ++j)
            a(static_cast<Eigen::Index>(i), j) = ones[i]->raw()[static_cast<size_t>(j)];
    return numerical_rank(a).rank;
}

namespace {

constexpr double kIntegralTol = 1e-8;

void require_integral_flag(const SystemPointData& data, const Mat& flag, const char* who) {
    if (flag.cols() == 0) return;
    if (numerical_rank(flag).rank != flag.cols())
        throw std::invalid_argument(std::string(who) + ": flag is rank deficient");
    if (integral_residual(data, flag) >= kIntegralTol)
        throw std::invalid_argument(std::string(who) + ": flag span is not an integral element");
}

} // namespace

PolarSpace polar_space(const SystemPointData& data, const Mat& flag) {
    require_integral_flag(data, flag, "polar_space");
    const int m = static_cast<int>(data.point.size());
    const int j = static_cast<int>(flag.cols());
    std::vector<Vec> rows;
    for (const auto& phi : data.closure) {
        const int d = phi.degree();
        if (d < 1 || d > j + 1) continue;
        for (const auto& s : MultiIndex::all(j, d - 1)) {
            // the 1-form v -> phi(v, flag_S) on the coordinate frame
            Mat args(m, d);
            for (int c = 1; c < d; ++c) args.col(c) = flag.col(s[c - 1] - 1);
            Vec row(m);
            for (int i = 0; i < m; ++i) {
                args.col(0) = Vec::Zero(m);
                args(i, 0) = 1.0;
                row(i) = evaluate(phi, args);
            }
            rows.push_back(row);
        }
    }
    PolarSpace out;
    if (rows.empty()) {
        out.basis = Mat::Identity(m, m);
        out.c = 0;
        return out;
    }
    Mat a(static_cast<Eigen::Index>(rows.size()), m);
    for (size_t r = 0; r < rows.size(); ++r) a.row(static_cast<Eigen::Index>(r)) = rows[r];
    RankResult rr = numerical_rank(a, /*want_kernel=*/true);
    out.basis = rr.kernel;
    out.c = rr.rank;
    out.margin = rr.margin;
    return out;
}

PolarSpace polar_space(const ExteriorSystem& sys, const Vec& p, const Mat& flag) {
    return polar_space(eval_system_at(sys, p), flag);
}

CodimResult codim_variety_at(const ExteriorSystem& sys, const Vec& p, const Mat& basis) {
    const SystemPointData data = eval_system_at(sys, p);
    const int k = static_cast<int>(basis.cols());
    if (integral_residual(data, basis) >= kIntegralTol)
        throw std::invalid_argument("codim_variety_at: (p, E) is not an integral element");
    const Mat q = orthonormalized(basis);
    if (sys.has_genericity() && !sys.generic_plane(p, q))
        throw std::invalid_argument("codim_variety_at: E fails the genericity predicate");
    const Mat comp = orthonormal_complement(q);
    const auto plane = [&](const Vec& x) {
        Mat b = q;
        for (int i = 0; i < k; ++i)
            b.col(i) += comp * x.segment(static_cast<Eigen::Index>(i) * comp.cols(), comp.cols());
        return b;
    };
    const auto f = [&](const Vec& x) { return constraint_values(data, plane(x)); };
    const Vec x0 = Vec::Zero(static_cast<Eigen::Index>(k) * comp.cols());
    const Mat jac = fd_jacobian(f, x0, 1e-6);
    RankResult rr = numerical_rank(jac);
    CodimResult out;
    out.codim = rr.rank;
    out.margin = rr.margin;
    const double cutoff = kRankTol * rr.margin.sigma_max;
    if (cutoff > 0.0 &&
        (rr.margin.smallest_kept < 10.0 * cutoff ||
         (rr.margin.largest_dropped > 0.0 && rr.margin.largest_dropped > cutoff / 10.0))) {
        std::ostringstream os;
        os << "rank margin within 10x of the cutoff (kept " << rr.margin.smallest_kept
           << ", dropped " << rr.margin.largest_dropped << ", cutoff " << cutoff << ")";
        out.warnings.push_back(os.str());
    }
    return out;
}

namespace {

struct PlaneChart {
    Mat base;  // m x k
    Mat span;  // m x (m-k), complement directions
};

// Graph chart over the independence coframe: base columns are the
// minimum-norm duals of the independence 1-forms, the complement spans
// their common kernel.
PlaneChart independence_chart(const SystemPointData& data, int m) {
    const int n = static_cast<int>(data.independence.size());
    Mat h(n, m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j)
            h(i, j) = data.independence[static_cast<size_t>(i)].raw()[static_cast<size_t>(j)];
    PlaneChart chart;
    chart.base = Mat(m, n);
    for (int i = 0; i < n; ++i) {
        Vec e = Vec::Zero(n);
        e(i) = 1.0;
        chart.base.col(i) = pinv_solve(h, e);
    }
    chart.span = numerical_rank(h, /*want_kernel=*/true).kernel;
    return chart;
}

Mat chart_plane(const PlaneChart& chart, const Vec& x) {
    Mat b = chart.base;
    const Eigen::Index w = chart.span.cols();
    for (Eigen::Index i = 0; i < b.cols(); ++i)
        b.col(i) += chart.span * x.segment(i * w, w);
    return b;
}

} // namespace

SolveResult find_integral_elements(const ExteriorSystem& sys, const Vec& p, int k,
                                   std::uint64_t seed, int trials) {
    const SystemPointData data = eval_system_at(sys, p);
    const int m = sys.dim();
    if (k < 1 || k > m) throw std::invalid_argument("plane dimension out of range");
    SolveResult result;
    const bool use_indep =
        sys.has_independence() && static_cast<int>(sys.independence().size()) == k;
    PlaneChart fixed_chart;
    if (use_indep) fixed_chart = independence_chart(data, m);

    for (int trial = 0; trial < trials; ++trial) {
        Rng rng(Rng::split(seed, static_cast<std::uint64_t>(trial)));
        PlaneChart chart;
        Vec x0;
        if (use_indep) {
            chart = fixed_chart;
            x0 = rng.gaussian_vec(static_cast<int>(chart.span.cols()) * k);
        } else {
            const Mat b0 = orthonormalized(rng.gaussian_mat(m, k));
            chart.base = b0;
            chart.span = orthonormal_complement(b0);
            x0 = Vec::Zero(static_cast<Eigen::Index>(chart.span.cols()) * k);
        }
        const auto f = [&](const Vec& x) { return constraint_values(data, chart_plane(chart, x)); };
        const auto jac = [&](const Vec& x) { return fd_jacobian(f, x, 1e-6); };
        const GaussNewtonResult gn = gauss_newton(f, jac, x0, 1e-10, 50);
        if (!gn.converged) continue;
        ++result.converged;
        const Mat basis = chart_plane(chart, gn.x);
        if (numerical_rank(basis).rank != k) continue;
        const Mat q = orthonormalized(basis);
        if (sys.has_genericity() && !sys.generic_plane(p, q)) continue;
        ++result.generic_found;
        const Mat j_here = jac(gn.x);
        const int dim_here = static_cast<int>(gn.x.size()) - numerical_rank(j_here).rank;
        if (result.local_dim < 0)
            result.local_dim = dim_here;
        else if (result.local_dim != dim_here)
            result.dimension_consistent = false;
        result.elements.push_back(IntegralElement{p, basis});
    }
    if (result.elements.empty()) {
        result.local_dim = -1;
        std::ostringstream os;
        os << "no generic " << k << "-dimensional integral elements found from " << trials
           << " starts (" << result.converged << " converged to non-generic planes)";
        result.message = os.str();
    } else if (!result.dimension_consistent) {
        result.message = "solver found elements with inconsistent local dimensions";
    }
    return result;
}

std::string format_generality(int s_k0, int k0) {
    if (k0 <= 0) return "solutions depend only on constants";
    std::ostringstream os;
    os << s_k0 << (s_k0 == 1 ? " function" : " functions") << " of " << k0
       << (k0 == 1 ? " variable" : " variables");
    return os.str();
}

CartanReport cartan_test(const ExteriorSystem& sys, const Vec& p, const Mat& basis,
                         std::uint64_t seed) {
    const SystemPointData data = eval_system_at(sys, p);
    const int n = static_cast<int>(basis.cols());
    const int m = sys.dim();
    if (integral_residual(data, basis) >= kIntegralTol)
        throw std::invalid_argument("cartan_test: (p, E) is not an integral element");
    Mat q = orthonormalized(basis);
    if (sys.has_genericity() && !sys.generic_plane(p, q))
        throw std::invalid_argument("cartan_test: E fails the genericity predicate");

    CartanReport report;
    report.n = n;
    report.diag.integral_tol = kIntegralTol;

    // Seeded flag inside E: Haar-random rotation of the orthonormal basis,
    // with the system's preferred first vector projected in when available.
    Rng rng(seed);
    Mat flag;
    {
        Mat start = q;
        int fixed = 0;
        if (sys.has_preferred_flag_vector()) {
            const Vec z = sys.preferred_flag_vector(p);
            Vec z_in = q * (q.transpose() * z);
            if (z_in.norm() > 1e-8 * std::max(1.0, z.norm())) {
                z_in.normalize();
                Mat ext(m, n);
                ext.col(0) = z_in;
                ext.rightCols(n - 1) = q.leftCols(n - 1);
                Eigen::HouseholderQR<Mat> qr(ext);
                Mat qq = qr.householderQ() * Mat::Identity(m, n);
                if ((qq.col(0) - z_in).norm() > 1.0) qq.col(0) *= -1.0; // fix sign
                start = qq;
                fixed = 1;
            } else {
                report.diag.warnings.push_back(
                    "preferred flag vector has negligible component inside E; using a random flag");
            }
        }
        const int free = n - fixed;
        if (free > 0) {
            Eigen::HouseholderQR<Mat> qr(rng.gaussian_mat(free, free));
            const Mat rot = qr.householderQ() * Mat::Identity(free, free);
            start.rightCols(free) = start.rightCols(free) * rot;
        }
        flag = start;
    }

    report.c.resize(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
        const PolarSpace ps = polar_space(data, flag.leftCols(j));
        report.c[static_cast<size_t>(j)] = ps.c;
        report.diag.polar_margins.push_back(ps.margin);
    }
    report.sum_c = 0;
    for (int cj : report.c) report.sum_c += cj;

    const CodimResult cr = codim_variety_at(sys, p, basis);
    report.codim = cr.codim;
    report.diag.codim_margin = cr.margin;
    for (const auto& w : cr.warnings) report.diag.warnings.push_back(w);

    if (report.sum_c > report.codim) {
        std::ostringstream os;
        os << sys.name() << ": Cartan inequality violated (sum c = " << report.sum_c
           << " > codim = " << report.codim << "); tolerance or genericity failure";
        throw std::runtime_error(os.str());
    }
    report.involutive = (report.sum_c == report.codim);

    // characters s_1..s_{n-1}; the top character comes from the fiber
    // dimension identity dim V_n = sum_k k s_k and is only meaningful on
    // involutive systems
    for (int kk = 1; kk <= n - 1; ++kk)
        report.characters.push_back(report.c[static_cast<size_t>(kk)] -
                                    report.c[static_cast<size_t>(kk - 1)]);
    if (report.involutive) {
        const int fiber_dim = n * (m - n) - report.codim;
        int partial = 0;
        for (int kk = 1; kk <= n - 1; ++kk)
            partial += kk * report.characters[static_cast<size_t>(kk - 1)];
        const int num = fiber_dim - partial;
        if (num % n != 0)
            report.diag.warnings.push_back("top character is not integral; fiber dimension " +
                                           std::to_string(fiber_dim));
        report.characters.push_back(num / n);
    }

    report.k0 = 0;
    for (int kk = static_cast<int>(report.characters.size()); kk >= 1; --kk) {
        if (report.characters[static_cast<size_t>(kk - 1)] != 0) {
            report.k0 = kk;
            break;
        }
    }
    if (report.involutive) {
        report.generality =
            report.k0 > 0
                ? format_generality(report.characters[static_cast<size_t>(report.k0 - 1)],
                                    report.k0)
                : format_generality(0, 0);
    } else {
        std::ostringstream os;
        os << "not involutive (Cartan's test fails by " << report.codim - report.sum_c << ")";
        report.generality = os.str();
    }
    return report;
}

} // namespace eds
