#include "edslab/chart.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace eds {

Chart::Chart(int m, std::vector<std::string> names) : dim(m), labels(std::move(names)) {
    if (m < 1) throw std::invalid_argument("chart dimension must be >= 1");
    if (static_cast<int>(labels.size()) != m)
        throw std::invalid_argument("chart label count != dimension");
    std::set<std::string> uniq(labels.begin(), labels.end());
    if (static_cast<int>(uniq.size()) != m)
        throw std::invalid_argument("chart labels must be distinct");
}

Chart Chart::numbered(int m, const std::string& prefix) {
    std::vector<std::string> names;
    names.reserve(static_cast<size_t>(m));
    for (int i = 1; i <= m; ++i) names.push_back(prefix + std::to_string(i));
    return Chart(m, std::move(names));
}

int Chart::index_of(const std::string& label) const {
    for (size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == label) return static_cast<int>(i);
    return -1;
}

double fd_step(const Vec& p, double h_base) {
    const double scale = p.size() ? p.lpNorm<Eigen::Infinity>() : 0.0;
    return h_base * std::max(1.0, scale);
}

FormField::FormField(Chart chart, int degree, Evaluator eval)
    : chart_(std::move(chart)), degree_(degree), eval_(std::move(eval)) {
    if (degree_ < 0 || degree_ > chart_.dim + 1)
        throw std::invalid_argument("form field degree out of range");
}

FormField::FormField(Chart chart, int degree, Evaluator eval, Evaluator analytic_derivative)
    : FormField(std::move(chart), degree, std::move(eval)) {
    analytic_d_ = std::move(analytic_derivative);
}

FormField FormField::constant(const Chart& chart, const AlternatingForm& value) {
    if (value.dim() != chart.dim) throw std::invalid_argument("constant form dim != chart dim");
    const int m = chart.dim;
    AlternatingForm dzero(m, value.degree() + 1);
    return FormField(
        chart, value.degree(), [value](const Vec&) { return value; },
        [dzero](const Vec&) { return dzero; });
}

FormField FormField::coordinate(const Chart& chart, int i) {
    if (i < 1 || i > chart.dim) throw std::invalid_argument("coordinate index out of range");
    return constant(chart, AlternatingForm::basis(chart.dim, MultiIndex({i})));
}

AlternatingForm FormField::eval_at(const Vec& p) const {
    if (p.size() != chart_.dim) throw std::invalid_argument("point dimension != chart dimension");
    AlternatingForm v = eval_(p);
    if (v.dim() != chart_.dim || v.degree() != degree_)
        throw std::domain_error("form field evaluator returned wrong shape");
    return v;
}

AlternatingForm FormField::d_numeric(const Vec& p, double h, int order) const {
    if (h <= 0.0) throw std::invalid_argument("finite-difference step must be positive");
    if (order != 2 && order != 4) throw std::invalid_argument("stencil order must be 2 or 4");
    const int m = chart_.dim;
    AlternatingForm out(m, degree_ + 1);
    if (degree_ + 1 > m) return out;
    const auto indices = MultiIndex::all(m, degree_);
    std::vector<int> merged;
    for (int c = 1; c <= m; ++c) {
        Vec e = Vec::Zero(m);
        e(c - 1) = 1.0;
        AlternatingForm grad(m, degree_);
        if (order == 2) {
            grad = eval_at(p + h * e);
            grad -= eval_at(p - h * e);
            grad *= 1.0 / (2.0 * h);
        } else {
            AlternatingForm f1 = eval_at(p + h * e);
            f1 -= eval_at(p - h * e);
            f1 *= 8.0;
            AlternatingForm f2 = eval_at(p + 2.0 * h * e);
            f2 -= eval_at(p - 2.0 * h * e);
            f1 -= f2;
            f1 *= 1.0 / (12.0 * h);
            grad = f1;
        }
        // accumulate dx^c ^ (d f_I/dx^c) dx^I; the sign counts the entries
        // of I that c has to jump over to reach sorted position
        for (size_t r = 0; r < indices.size(); ++r) {
            const double g = grad.raw()[r];
            if (g == 0.0) continue;
            const auto& mi = indices[r].indices();
            if (std::find(mi.begin(), mi.end(), c) != mi.end()) continue;
            merged.clear();
            int sign = 1;
            bool inserted = false;
            for (int v : mi) {
                if (v < c) {
                    sign = -sign;
                } else if (!inserted) {
                    merged.push_back(c);
                    inserted = true;
                }
                merged.push_back(v);
            }
            if (!inserted) merged.push_back(c);
            out.add_coeff(MultiIndex(merged), sign * g);
        }
    }
    return out;
}

AlternatingForm FormField::d_numeric(const Vec& p) const {
    return d_numeric(p, fd_step(p, h_base_), fd_order_);
}

AlternatingForm FormField::d_analytic(const Vec& p) const {
    if (!analytic_d_) throw std::logic_error("no analytic derivative supplied");
    AlternatingForm v = analytic_d_(p);
    if (v.dim() != chart_.dim || v.degree() != degree_ + 1)
        throw std::domain_error("analytic derivative evaluator returned wrong shape");
    return v;
}

double FormField::derivative_residual(const Vec& p) const {
    return derivative_residual(p, fd_step(p, h_base_));
}

double FormField::derivative_residual(const Vec& p, double h) const {
    AlternatingForm diff = d_numeric(p, h, fd_order_);
    diff -= d_analytic(p);
    return diff.max_abs_coeff();
}

FormField FormField::derivative() const {
    if (analytic_d_) {
        Evaluator d = analytic_d_;
        return FormField(chart_, degree_ + 1, d);
    }
    FormField self = *this;
    return FormField(chart_, degree_ + 1,
                     [self](const Vec& p) { return self.d_numeric(p); });
}

FormField& FormField::set_fd(double h_base, int order) {
    if (h_base <= 0.0) throw std::invalid_argument("h_base must be positive");
    if (order != 2 && order != 4) throw std::invalid_argument("stencil order must be 2 or 4");
    h_base_ = h_base;
    fd_order_ = order;
    return *this;
}

} // namespace eds
