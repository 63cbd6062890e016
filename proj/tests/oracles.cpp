#include "oracles.hpp"

#include <algorithm>
#include <numeric>

namespace eds::oracle {

namespace {

int permutation_sign(const std::vector<int>& perm) {
    int sign = 1;
    for (size_t i = 0; i < perm.size(); ++i)
        for (size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j]) sign = -sign;
    return sign;
}

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

} // namespace

double shuffle_wedge_value(const AlternatingForm& a, const AlternatingForm& b,
                           const std::vector<Vec>& vs) {
    const int p = a.degree();
    const int q = b.degree();
    std::vector<int> perm(static_cast<size_t>(p + q));
    std::iota(perm.begin(), perm.end(), 0);
    double acc = 0.0;
    do {
        std::vector<Vec> first, second;
        for (int i = 0; i < p; ++i) first.push_back(vs[static_cast<size_t>(perm[static_cast<size_t>(i)])]);
        for (int i = p; i < p + q; ++i) second.push_back(vs[static_cast<size_t>(perm[static_cast<size_t>(i)])]);
        acc += permutation_sign(perm) * leibniz_evaluate(a, first) * leibniz_evaluate(b, second);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return acc / (factorial(p) * factorial(q));
}

double leibniz_evaluate(const AlternatingForm& f, const std::vector<Vec>& vs) {
    const int k = f.degree();
    if (k == 0) return f.raw().empty() ? 0.0 : f.raw()[0];
    const auto indices = MultiIndex::all(f.dim(), k);
    double acc = 0.0;
    std::vector<int> perm(static_cast<size_t>(k));
    for (size_t r = 0; r < indices.size(); ++r) {
        const double c = f.raw()[r];
        if (c == 0.0) continue;
        const auto& mi = indices[r];
        std::iota(perm.begin(), perm.end(), 0);
        double det = 0.0;
        do {
            double term = 1.0;
            for (int row = 0; row < k; ++row)
                term *= vs[static_cast<size_t>(perm[static_cast<size_t>(row)])](mi[row] - 1);
            det += permutation_sign(perm) * term;
        } while (std::next_permutation(perm.begin(), perm.end()));
        acc += c * det;
    }
    return acc;
}

AlternatingForm random_form(Rng& rng, int dim, int degree) {
    AlternatingForm f(dim, degree);
    for (double& c : f.raw()) c = rng.gaussian();
    return f;
}

} // namespace eds::oracle
