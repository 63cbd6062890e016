#ifndef EDSLAB_NUMERIC_HPP
#define EDSLAB_NUMERIC_HPP
//
// Shared numeric utilities: deterministic RNG, SVD-based rank with margin
// diagnostics, orthonormalization, damped Gauss-Newton.
//

#include <Eigen/Dense>
#include <cstdint>
#include <cmath>

namespace eds {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Relative singular-value cutoff used everywhere a numerical rank is taken.
inline constexpr double kRankTol = 1e-8;

// Deterministic RNG. splitmix64 state advance + Box-Muller, so streams are
// reproducible across platforms (std::normal_distribution is not).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0,1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        while (u1 == 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * M_PI * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    Vec gaussian_vec(int n) {
        Vec v(n);
        for (int i = 0; i < n; ++i) v(i) = gaussian();
        return v;
    }

    Mat gaussian_mat(int r, int c) {
        Mat m(r, c);
        for (int j = 0; j < c; ++j)
            for (int i = 0; i < r; ++i) m(i, j) = gaussian();
        return m;
    }

    // Independent stream for sub-task `k` of a seeded computation.
    static std::uint64_t split(std::uint64_t seed, std::uint64_t k) {
        Rng r(seed ^ (0xa0761d6478bd642fULL * (k + 1)));
        return r.next_u64();
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// Rank margin: the singular values straddling the cutoff. A healthy rank
// decision has smallest_kept >> largest_dropped.
struct RankMargin {
    double smallest_kept = 0.0;   // smallest sigma counted toward the rank
    double largest_dropped = 0.0; // largest sigma treated as zero
    double sigma_max = 0.0;
};

struct RankResult {
    int rank = 0;
    RankMargin margin;
    Mat kernel; // orthonormal basis of the (right) null space, cols
};

// Numerical rank of A with sigma > kRankTol * sigma_max counted.
inline RankResult numerical_rank(const Mat& a, bool want_kernel = false) {
    RankResult out;
    if (a.rows() == 0 || a.cols() == 0) {
        out.rank = 0;
        if (want_kernel) out.kernel = Mat::Identity(a.cols(), a.cols());
        return out;
    }
    Eigen::JacobiSVD<Mat> svd(a, want_kernel ? Eigen::ComputeFullV : 0);
    const Vec& sv = svd.singularValues();
    const double smax = sv.size() ? sv(0) : 0.0;
    out.margin.sigma_max = smax;
    const double cut = kRankTol * smax;
    int r = 0;
    for (int i = 0; i < sv.size(); ++i) {
        if (smax > 0.0 && sv(i) > cut) {
            r = i + 1;
            out.margin.smallest_kept = sv(i);
        } else {
            out.margin.largest_dropped = std::max(out.margin.largest_dropped, sv(i));
        }
    }
    out.rank = r;
    if (want_kernel) {
        const Mat& v = svd.matrixV();
        out.kernel = v.rightCols(v.cols() - r);
    }
    return out;
}

// Orthonormal basis of the column span (throws nothing; caller checks rank).
inline Mat orthonormalized(const Mat& basis) {
    Eigen::HouseholderQR<Mat> qr(basis);
    Mat q = qr.householderQ() * Mat::Identity(basis.rows(), basis.cols());
    return q;
}

// Orthonormal complement of the column span of q (q must have orthonormal columns).
inline Mat orthonormal_complement(const Mat& q) {
    Eigen::JacobiSVD<Mat> svd(q, Eigen::ComputeFullU);
    return svd.matrixU().rightCols(q.rows() - q.cols());
}

// Minimum-norm least-squares step, dropping directions below the rank cutoff.
inline Vec pinv_solve(const Mat& j, const Vec& rhs) {
    Eigen::JacobiSVD<Mat> svd(j, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Vec& sv = svd.singularValues();
    const double cut = (sv.size() ? sv(0) : 0.0) * kRankTol;
    Vec inv = Vec::Zero(sv.size());
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > cut) inv(i) = 1.0 / sv(i);
    return svd.matrixV() * inv.asDiagonal() * (svd.matrixU().transpose() * rhs);
}

struct GaussNewtonResult {
    Vec x;
    double residual = 0.0; // final max-norm of F
    int iterations = 0;
    bool converged = false;
};

// Damped Gauss-Newton with pseudoinverse steps. Step halving until the
// residual decreases; convergence at ||F||_inf < tol.
template <typename F, typename J>
GaussNewtonResult gauss_newton(const F& f, const J& jac, Vec x0,
                               double tol = 1e-10, int max_iter = 50) {
    GaussNewtonResult res;
    Vec x = std::move(x0);
    Vec fx = f(x);
    for (int it = 0; it < max_iter; ++it) {
        res.iterations = it;
        if (fx.template lpNorm<Eigen::Infinity>() < tol) {
            res.converged = true;
            break;
        }
        Mat jx = jac(x);
        Vec step = pinv_solve(jx, -fx);
        double t = 1.0;
        const double f0 = fx.norm();
        Vec x_new = x + step;
        Vec f_new = f(x_new);
        while (f_new.norm() >= f0 && t > 1e-8) {
            t *= 0.5;
            x_new = x + t * step;
            f_new = f(x_new);
        }
        if (f_new.norm() >= f0) break; // stalled
        x = std::move(x_new);
        fx = std::move(f_new);
    }
    if (fx.template lpNorm<Eigen::Infinity>() < tol) res.converged = true;
    res.x = std::move(x);
    res.residual = fx.template lpNorm<Eigen::Infinity>();
    return res;
}

// Central-difference Jacobian of a vector map.
template <typename F>
Mat fd_jacobian(const F& f, const Vec& x, double h = 1e-6) {
    const Vec f0 = f(x);
    Mat j(f0.size(), x.size());
    for (int a = 0; a < x.size(); ++a) {
        Vec xp = x, xm = x;
        xp(a) += h;
        xm(a) -= h;
        j.col(a) = (f(xp) - f(xm)) / (2.0 * h);
    }
    return j;
}

} // namespace eds

#endif
