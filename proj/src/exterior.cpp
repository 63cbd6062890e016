#include "edslab/exterior.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace eds {

long binomial(int m, int k) {
    if (k < 0 || k > m) return 0;
    k = std::min(k, m - k);
    long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (m - k + i) / i;
    return r;
}

MultiIndex::MultiIndex(std::vector<int> indices) : idx_(std::move(indices)) {
    for (size_t j = 0; j < idx_.size(); ++j) {
        if (idx_[j] < 1) throw std::invalid_argument("multi-index entries are 1-based");
        if (j > 0 && idx_[j] <= idx_[j - 1])
            throw std::invalid_argument("multi-index must be strictly increasing");
    }
}

long MultiIndex::rank(int m) const {
    const int k = degree();
    long r = 0;
    int prev = 0;
    for (int j = 0; j < k; ++j) {
        for (int t = prev + 1; t < idx_[static_cast<size_t>(j)]; ++t)
            r += binomial(m - t, k - 1 - j);
        prev = idx_[static_cast<size_t>(j)];
    }
    return r;
}

MultiIndex MultiIndex::unrank(int m, int k, long r) {
    std::vector<int> out;
    out.reserve(static_cast<size_t>(k));
    int t = 1;
    for (int j = 0; j < k; ++j) {
        while (true) {
            const long block = binomial(m - t, k - 1 - j);
            if (r < block) break;
            r -= block;
            ++t;
        }
        out.push_back(t);
        ++t;
    }
    return MultiIndex(std::move(out));
}

std::vector<MultiIndex> MultiIndex::all(int m, int k) {
    std::vector<MultiIndex> out;
    const long n = binomial(m, k);
    out.reserve(static_cast<size_t>(n));
    for (long r = 0; r < n; ++r) out.push_back(unrank(m, k, r));
    return out;
}

AlternatingForm::AlternatingForm(int dim, int degree) : dim_(dim), degree_(degree) {
    if (dim < 0 || degree < 0) throw std::invalid_argument("negative dimension or degree");
    coeff_.assign(static_cast<size_t>(binomial(dim, degree)), 0.0);
}

AlternatingForm AlternatingForm::scalar(int dim, double value) {
    AlternatingForm f(dim, 0);
    f.coeff_[0] = value;
    return f;
}

AlternatingForm AlternatingForm::basis(int dim, const MultiIndex& mi, double c) {
    AlternatingForm f(dim, mi.degree());
    f.set_coeff(mi, c);
    return f;
}

double AlternatingForm::coeff(const MultiIndex& mi) const {
    if (mi.degree() != degree_) throw std::invalid_argument("multi-index degree mismatch");
    if (coeff_.empty()) return 0.0;
    return coeff_[static_cast<size_t>(mi.rank(dim_))];
}

void AlternatingForm::set_coeff(const MultiIndex& mi, double v) {
    if (mi.degree() != degree_) throw std::invalid_argument("multi-index degree mismatch");
    if (mi.degree() > 0 && mi[mi.degree() - 1] > dim_)
        throw std::invalid_argument("multi-index exceeds dimension");
    coeff_[static_cast<size_t>(mi.rank(dim_))] = v;
}

void AlternatingForm::add_coeff(const MultiIndex& mi, double v) {
    coeff_[static_cast<size_t>(mi.rank(dim_))] += v;
}

double AlternatingForm::max_abs_coeff() const {
    double m = 0.0;
    for (double c : coeff_) m = std::max(m, std::abs(c));
    return m;
}

AlternatingForm& AlternatingForm::operator+=(const AlternatingForm& o) {
    if (dim_ != o.dim_ || degree_ != o.degree_)
        throw std::invalid_argument("form shape mismatch in +=");
    for (size_t i = 0; i < coeff_.size(); ++i) coeff_[i] += o.coeff_[i];
    return *this;
}

AlternatingForm& AlternatingForm::operator-=(const AlternatingForm& o) {
    if (dim_ != o.dim_ || degree_ != o.degree_)
        throw std::invalid_argument("form shape mismatch in -=");
    for (size_t i = 0; i < coeff_.size(); ++i) coeff_[i] -= o.coeff_[i];
    return *this;
}

AlternatingForm& AlternatingForm::operator*=(double s) {
    for (double& c : coeff_) c *= s;
    return *this;
}

std::string AlternatingForm::str() const {
    std::ostringstream os;
    bool first = true;
    const auto indices = MultiIndex::all(dim_, degree_);
    for (size_t r = 0; r < coeff_.size(); ++r) {
        if (coeff_[r] == 0.0) continue;
        if (!first) os << (coeff_[r] > 0 ? " + " : " - ");
        else if (coeff_[r] < 0) os << "-";
        os << std::abs(coeff_[r]);
        if (degree_ > 0) {
            os << " ";
            const auto& mi = indices[r];
            for (int j = 0; j < degree_; ++j) os << (j ? "^" : "") << "dx" << mi[j];
        }
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

namespace {

// Merge two increasing index lists; returns the permutation sign, or 0 if
// they overlap.
int merge_indices(const std::vector<int>& a, const std::vector<int>& b, std::vector<int>& out) {
    out.clear();
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    int transpositions = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) return 0;
        if (a[i] < b[j]) {
            out.push_back(a[i++]);
        } else {
            // b[j] jumps over the remaining entries of a
            transpositions += static_cast<int>(a.size() - i);
            out.push_back(b[j++]);
        }
    }
    while (i < a.size()) out.push_back(a[i++]);
    while (j < b.size()) out.push_back(b[j++]);
    return (transpositions % 2 == 0) ? 1 : -1;
}

} // namespace

AlternatingForm wedge(const AlternatingForm& a, const AlternatingForm& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("wedge: dimension mismatch");
    const int m = a.dim();
    AlternatingForm out(m, a.degree() + b.degree());
    if (a.degree() + b.degree() > m) return out; // zero form
    const auto ai = MultiIndex::all(m, a.degree());
    const auto bi = MultiIndex::all(m, b.degree());
    std::vector<int> merged;
    for (size_t ra = 0; ra < ai.size(); ++ra) {
        const double ca = a.raw()[ra];
        if (ca == 0.0) continue;
        for (size_t rb = 0; rb < bi.size(); ++rb) {
            const double cb = b.raw()[rb];
            if (cb == 0.0) continue;
            const int sign = merge_indices(ai[ra].indices(), bi[rb].indices(), merged);
            if (sign == 0) continue;
            out.add_coeff(MultiIndex(merged), sign * ca * cb);
        }
    }
    return out;
}

double evaluate(const AlternatingForm& f, const Mat& vs) {
    const int k = f.degree();
    if (vs.cols() != k) throw std::invalid_argument("evaluate: arity mismatch");
    if (k > 0 && vs.rows() != f.dim()) throw std::invalid_argument("evaluate: dimension mismatch");
    if (k == 0) return f.raw().empty() ? 0.0 : f.raw()[0];
    if (f.degree() > f.dim()) return 0.0;
    const auto indices = MultiIndex::all(f.dim(), k);
    double acc = 0.0;
    Mat minor(k, k);
    for (size_t r = 0; r < indices.size(); ++r) {
        const double c = f.raw()[r];
        if (c == 0.0) continue;
        const auto& mi = indices[r];
        for (int i = 0; i < k; ++i) minor.row(i) = vs.row(mi[i] - 1);
        acc += c * minor.determinant();
    }
    return acc;
}

double evaluate(const AlternatingForm& f, const std::vector<Vec>& vs) {
    Mat m(vs.empty() ? f.dim() : vs[0].size(), static_cast<Eigen::Index>(vs.size()));
    for (size_t j = 0; j < vs.size(); ++j) m.col(static_cast<Eigen::Index>(j)) = vs[j];
    return evaluate(f, m);
}

double evaluate(const AlternatingForm& f, std::initializer_list<Vec> vs) {
    return evaluate(f, std::vector<Vec>(vs));
}

AlternatingForm restrict_form(const AlternatingForm& f, const Mat& basis) {
    const int j = static_cast<int>(basis.cols());
    if (basis.rows() != f.dim()) throw std::invalid_argument("restrict: dimension mismatch");
    if (numerical_rank(basis).rank != j)
        throw std::invalid_argument("restrict: basis is linearly dependent");
    AlternatingForm out(j, f.degree());
    if (f.degree() > j) return out; // zero form of matching degree
    const auto subs = MultiIndex::all(j, f.degree());
    Mat sel(f.dim(), f.degree());
    for (const auto& s : subs) {
        for (int c = 0; c < f.degree(); ++c) sel.col(c) = basis.col(s[c] - 1);
        out.set_coeff(s, evaluate(f, sel));
    }
    return out;
}

} // namespace eds
