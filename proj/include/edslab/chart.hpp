#ifndef EDSLAB_CHART_HPP
#define EDSLAB_CHART_HPP
//
// Differential form fields on a coordinate chart, with a validated numeric
// exterior derivative. Everything lives in a single chart; evaluators must
// be pure functions of the point.
//

#include "edslab/exterior.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace eds {

struct Chart {
    int dim = 0;
    std::vector<std::string> labels;

    Chart() = default;
    Chart(int m, std::vector<std::string> names);
    static Chart numbered(int m, const std::string& prefix = "x");

    int index_of(const std::string& label) const; // -1 if absent
};

// Step for central differences at p: h_base * max(1, |p|_inf).
double fd_step(const Vec& p, double h_base = 1e-5);

class FormField {
public:
    using Evaluator = std::function<AlternatingForm(const Vec&)>;

    FormField() = default;
    FormField(Chart chart, int degree, Evaluator eval);
    FormField(Chart chart, int degree, Evaluator eval, Evaluator analytic_derivative);

    // Constant-coefficient field (analytic derivative = 0 supplied).
    static FormField constant(const Chart& chart, const AlternatingForm& value);
    // The coordinate 1-form dx^i (1-based).
    static FormField coordinate(const Chart& chart, int i);

    const Chart& chart() const { return chart_; }
    int degree() const { return degree_; }
    bool has_analytic_derivative() const { return static_cast<bool>(analytic_d_); }

    AlternatingForm eval_at(const Vec& p) const;

    // Central-difference exterior derivative, degree k+1. order 2 is the
    // classic stencil with O(h^2) error; order 4 uses the five-point stencil
    // (needed where FD-derived forms feed rank computations).
    AlternatingForm d_numeric(const Vec& p, double h, int order = 2) const;
    AlternatingForm d_numeric(const Vec& p) const; // h = fd_step(p, h_base)

    // Analytic derivative value at p; throws if none was supplied.
    AlternatingForm d_analytic(const Vec& p) const;

    // max coefficient difference |d_numeric - d_analytic| at p.
    double derivative_residual(const Vec& p) const;
    double derivative_residual(const Vec& p, double h) const;

    // A degree-(k+1) field: the analytic derivative if present, otherwise
    // d_numeric evaluated on demand with this field's step settings.
    FormField derivative() const;

    double h_base() const { return h_base_; }
    int fd_order() const { return fd_order_; }
    FormField& set_fd(double h_base, int order);

private:
    Chart chart_;
    int degree_ = 0;
    Evaluator eval_;
    Evaluator analytic_d_;
    double h_base_ = 1e-5;
    int fd_order_ = 2;
};

} // namespace eds

#endif
