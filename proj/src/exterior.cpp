#include "wedge32/exterior.hpp"

namespace wedge32 {

Bivector Bivector::zero(const FieldDescriptor* d) {
    Bivector b{{TowerElement::zero(d), TowerElement::zero(d), TowerElement::zero(d),
                TowerElement::zero(d), TowerElement::zero(d), TowerElement::zero(d)}};
    return b;
}

Bivector Bivector::wedge(std::span<const TowerElement> u, std::span<const TowerElement> v) {
    if (u.size() != 4 || v.size() != 4) throw DomainError("wedge expects 4-vectors");
    Bivector b = zero(u[0].descriptor());
    for (unsigned k = 0; k < 6; ++k) {
        const auto [i, j] = kBivectorBasis[k];
        b.c[k] = u[i] * v[j] - u[j] * v[i];
    }
    return b;
}

bool Bivector::is_zero() const {
    for (const TowerElement& x : c)
        if (!x.is_zero()) return false;
    return true;
}

MatrixK exterior_square(const MatrixK& g) {
    if (g.rows() != 4 || g.cols() != 4) throw DomainError("exterior_square expects a 4x4 matrix");
    MatrixK out(6, 6, g.descriptor());
    for (unsigned r = 0; r < 6; ++r) {
        const auto [k, l] = kBivectorBasis[r];
        for (unsigned c = 0; c < 6; ++c) {
            const auto [i, j] = kBivectorBasis[c];
            out.at(r, c) = g.at(k, i) * g.at(l, j) - g.at(k, j) * g.at(l, i);
        }
    }
    return out;
}

TowerElement wedge_form(const Bivector& x, const Bivector& y) {
    // read x^y against e1^e2^e3^e4; complementary pairs with permutation sign
    // (e12,e34): +, (e13,e24): -, (e14,e23): +
    TowerElement acc = x.c[0] * y.c[5];
    acc -= x.c[1] * y.c[4];
    acc += x.c[2] * y.c[3];
    acc += x.c[3] * y.c[2];
    acc -= x.c[4] * y.c[1];
    acc += x.c[5] * y.c[0];
    return acc;
}

MatrixK gram_of_wedge_form(const FieldDescriptor* d) {
    MatrixK j(6, 6, d);
    const long anti[6] = {1, -1, 1, 1, -1, 1};
    for (unsigned r = 0; r < 6; ++r) j.at(r, 5 - r) = TowerElement::from_int(anti[r], d);
    return j;
}

MatrixK bivector_matrix(const Bivector& b) {
    const FieldDescriptor* d = b.descriptor();
    MatrixK m(4, 4, d);
    for (unsigned k = 0; k < 6; ++k) {
        const auto [i, j] = kBivectorBasis[k];
        m.at(i, j) = b.c[k];
        m.at(j, i) = -b.c[k];
    }
    return m;
}

TowerElement pfaffian(const Bivector& b) {
    // Pf = b12 b34 - b13 b24 + b14 b23; 2 Pf(b) = wedge_form(b, b)
    TowerElement acc = b.c[0] * b.c[5];
    acc -= b.c[1] * b.c[4];
    acc += b.c[2] * b.c[3];
    return acc;
}

std::vector<std::vector<TowerElement>> bivector_support(const Bivector& b) {
    if (b.is_zero()) throw DomainError("support of the zero bivector");
    if (!pfaffian(b).is_zero()) throw DomainError("support of a non-decomposable bivector");
    const MatrixK m = bivector_matrix(b);
    // column space; for antisymmetric rank-2 matrices this is the support
    std::vector<std::vector<TowerElement>> cols;
    for (unsigned c = 0; c < 4; ++c) {
        std::vector<TowerElement> v;
        v.reserve(4);
        for (unsigned r = 0; r < 4; ++r) v.push_back(m.at(r, c));
        cols.push_back(std::move(v));
    }
    auto basis = span_basis(cols);
    if (basis.size() != 2)
        throw DomainError("decomposable bivector support is not 2-dimensional");
    return basis;
}

PfaffianSupport pfaffian_and_support(const Bivector& b) {
    if (b.is_zero()) throw DomainError("pfaffian_and_support of the zero bivector");
    PfaffianSupport out{pfaffian(b), {}};
    if (out.pfaffian.is_zero()) out.support = bivector_support(b);
    return out;
}

}  // namespace wedge32
