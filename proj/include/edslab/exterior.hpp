#ifndef EDSLAB_EXTERIOR_HPP
#define EDSLAB_EXTERIOR_HPP
//
// Pointwise exterior algebra in dimension m: alternating multilinear forms
// with dense coefficients over increasing multi-indices, wedge product,
// evaluation on vector tuples, restriction to subspaces.
//

#include "edslab/numeric.hpp"

#include <string>
#include <vector>

namespace eds {

// Number of increasing k-multi-indices in {1..m}.
long binomial(int m, int k);

// Strictly increasing list of 1-based coordinate indices.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> indices); // validates strict increase

    int degree() const { return static_cast<int>(idx_.size()); }
    int operator[](int j) const { return idx_[static_cast<size_t>(j)]; }
    const std::vector<int>& indices() const { return idx_; }

    // Position in the lexicographic enumeration of k-subsets of {1..m}.
    long rank(int m) const;
    static MultiIndex unrank(int m, int k, long r);

    // All increasing k-subsets of {1..m} in lexicographic order.
    static std::vector<MultiIndex> all(int m, int k);

    bool operator==(const MultiIndex& o) const { return idx_ == o.idx_; }

private:
    std::vector<int> idx_;
};

// A degree-k alternating form at a point of an m-dimensional space.
// Coefficients are stored densely, indexed by MultiIndex rank; a degree-0
// form is a single scalar. Degrees above m carry no coefficients (the form
// is identically zero).
class AlternatingForm {
public:
    AlternatingForm() = default;
    AlternatingForm(int dim, int degree);

    static AlternatingForm zero(int dim, int degree) { return AlternatingForm(dim, degree); }
    static AlternatingForm scalar(int dim, double value);
    // dx^{i1} ^ ... ^ dx^{ik} with coefficient c.
    static AlternatingForm basis(int dim, const MultiIndex& mi, double c = 1.0);

    int dim() const { return dim_; }
    int degree() const { return degree_; }

    double coeff(const MultiIndex& mi) const;
    void set_coeff(const MultiIndex& mi, double v);
    void add_coeff(const MultiIndex& mi, double v);

    const std::vector<double>& raw() const { return coeff_; }
    std::vector<double>& raw() { return coeff_; }

    double max_abs_coeff() const;

    AlternatingForm& operator+=(const AlternatingForm& o);
    AlternatingForm& operator-=(const AlternatingForm& o);
    AlternatingForm& operator*=(double s);
    friend AlternatingForm operator+(AlternatingForm a, const AlternatingForm& b) { return a += b; }
    friend AlternatingForm operator-(AlternatingForm a, const AlternatingForm& b) { return a -= b; }
    friend AlternatingForm operator*(double s, AlternatingForm a) { return a *= s; }

    std::string str() const; // e.g. "2 dx1^dx3 - dx2^dx4"

private:
    int dim_ = 0;
    int degree_ = 0;
    std::vector<double> coeff_; // size C(dim, degree)
};

// Graded-anticommutative wedge product. Degrees add; a result of degree
// above the ambient dimension is the zero form of that degree.
AlternatingForm wedge(const AlternatingForm& a, const AlternatingForm& b);

// f(v_1,...,v_k) = sum_I f_I det(rows I of [v_1 ... v_k]).
double evaluate(const AlternatingForm& f, const std::vector<Vec>& vs);
double evaluate(const AlternatingForm& f, const Mat& vs); // columns are the vectors
double evaluate(const AlternatingForm& f, std::initializer_list<Vec> vs);

// Pull f back to the subspace spanned by the basis columns: a form of
// dimension basis.cols() whose coefficient on S is f evaluated on the
// selected basis vectors. The basis must be linearly independent.
AlternatingForm restrict_form(const AlternatingForm& f, const Mat& basis);

} // namespace eds

#endif
