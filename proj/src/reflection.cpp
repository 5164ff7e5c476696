#include "wedge32/reflection.hpp"

namespace wedge32 {

bool is_reflection(const MatrixK& g) {
    if (g.rows() != g.cols()) return false;
    const MatrixK diff = g - MatrixK::identity(g.rows(), g.descriptor());
    return !diff.is_zero() && is_rank_at_most_one(diff);
}

std::vector<std::size_t> reflections_of(const FiniteMatrixGroup& g) {
    std::vector<std::size_t> out;
    for (std::size_t pos = 1; pos < g.size(); ++pos) {
        if (is_reflection(g.element(pos))) out.push_back(pos);
    }
    return out;
}

RegularVectorResult regular_vector_check(const FiniteMatrixGroup& g, const MatrixK& w,
                                         const TowerElement& eigenvalue) {
    const FieldDescriptor* d = FieldDescriptor::join(w.descriptor(), eigenvalue.descriptor());
    MatrixK shifted = w.promoted_to(d);
    const TowerElement ev = eigenvalue.promoted_to(d);
    for (unsigned i = 0; i < shifted.rows(); ++i) shifted.at(i, i) -= ev;
    const auto basis = kernel_basis(shifted);
    if (basis.empty()) throw DomainError("requested eigenvalue has empty eigenspace");
    const unsigned dim = static_cast<unsigned>(basis.size());

    auto combine = [&](const std::vector<Rational>& weights) {
        std::vector<TowerElement> v(basis[0].size(), TowerElement::zero(d));
        for (std::size_t i = 0; i < basis.size(); ++i)
            for (std::size_t r = 0; r < v.size(); ++r)
                v[r] += basis[i][r].mul_rational(weights[i]);
        return v;
    };

    auto stabilizer_order = [&](const std::vector<TowerElement>& v) {
        std::size_t count = 0;
        for (std::size_t pos = 0; pos < g.size(); ++pos) {
            const MatrixK m = g.element(pos);
            bool fixes = true;
            for (unsigned r = 0; r < m.rows() && fixes; ++r) {
                TowerElement acc = TowerElement::zero(d);
                for (unsigned c = 0; c < m.cols(); ++c) {
                    if (m.at(r, c).is_zero() || v[c].is_zero()) continue;
                    acc += m.at(r, c) * v[c];
                }
                if (acc != v[r]) fixes = false;
            }
            if (fixes) ++count;
        }
        return count;
    };

    RegularVectorResult best;
    best.stabilizer_order = SIZE_MAX;
    best.eigenspace_dim = dim;

    // candidate list: powers-of-two mix first, then 1, m, m^2, ... combinations
    std::vector<std::vector<Rational>> candidates;
    {
        std::vector<Rational> pw(dim);
        for (unsigned i = 0; i < dim; ++i) pw[i] = Rational(1L << i);
        candidates.push_back(pw);
        for (long m = 1; m <= 24; ++m) {
            std::vector<Rational> ws(dim);
            Rational acc(1);
            for (unsigned i = 0; i < dim; ++i) {
                ws[i] = acc;
                acc *= m;
            }
            candidates.push_back(ws);
        }
    }
    for (const auto& ws : candidates) {
        const auto v = combine(ws);
        bool zero = true;
        for (const auto& x : v)
            if (!x.is_zero()) zero = false;
        if (zero) continue;
        const std::size_t order = stabilizer_order(v);
        if (order < best.stabilizer_order) {
            best.stabilizer_order = order;
            best.eigenvector = v;
        }
        if (best.stabilizer_order == 1) break;
    }
    return best;
}

Order8Profile order8_profile(const FiniteMatrixGroup& g, const ConjClassTable& classes) {
    Order8Profile profile;
    const FieldDescriptor* d = g.pool()->descriptor();

    // (x^2 - 1)(x^4 + 1) = x^6 - x^4 + x^2 - 1, ascending coefficients
    const long expect[7] = {-1, 0, 1, 0, -1, 0, 1};

    std::vector<bool> order8_class(classes.class_count(), false);
    for (std::size_t c = 0; c < classes.class_count(); ++c)
        order8_class[c] = g.element_order(classes.representatives[c]) == 8;

    const TowerElement minus_one = TowerElement::from_int(-1, d);
    const TowerElement one = TowerElement::one(d);
    for (std::size_t pos = 0; pos < g.size(); ++pos) {
        if (!order8_class[classes.class_of[pos]]) continue;
        ++profile.order8_count;
        const CharPoly p = g.element_char_poly(pos);
        for (unsigned i = 0; i <= 6; ++i)
            if (p.coeffs[i] != TowerElement::from_int(expect[i], d)) {
                profile.charpolys_match = false;
                break;
            }
        const TowerElement dg = g.determinant(pos);
        if (dg != minus_one) profile.dets_minus_one = false;
        if (dg == one) ++profile.order8_in_det1_count;
    }
    return profile;
}

}  // namespace wedge32
