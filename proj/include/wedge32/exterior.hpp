#pragma once

#include <array>
#include <utility>

#include "wedge32/matrix.hpp"

namespace wedge32 {

/// Fixed bivector basis order, repo-wide: e1^e2, e1^e3, e1^e4, e2^e3,
/// e2^e4, e3^e4. Every sign convention (wedge Gram, Pfaffian) derives from
/// this order together with the volume generator e1^e2^e3^e4.
inline constexpr std::array<std::pair<unsigned, unsigned>, 6> kBivectorBasis = {
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

/// Element of the second exterior power of a 4-space, six coordinates in
/// the fixed basis.
struct Bivector {
    std::array<TowerElement, 6> c;

    static Bivector zero(const FieldDescriptor* d);
    static Bivector wedge(std::span<const TowerElement> u, std::span<const TowerElement> v);

    const FieldDescriptor* descriptor() const { return c[0].descriptor(); }
    bool is_zero() const;
    bool operator==(const Bivector& o) const { return c == o.c; }
};

/// Matrix of the exterior square of a 4x4 matrix in the fixed bivector
/// basis: entry ((k,l),(i,j)) is the 2x2 minor g[k][i]g[l][j] - g[k][j]g[l][i].
MatrixK exterior_square(const MatrixK& g);

/// The wedge pairing: coefficient of e1^e2^e3^e4 in x^y. Symmetric and
/// non-degenerate.
TowerElement wedge_form(const Bivector& x, const Bivector& y);

/// Gram matrix of the wedge pairing in the fixed basis:
/// antidiag(1, -1, 1, 1, -1, 1).
MatrixK gram_of_wedge_form(const FieldDescriptor* d);

/// The antisymmetric 4x4 matrix of a bivector.
MatrixK bivector_matrix(const Bivector& b);

TowerElement pfaffian(const Bivector& b);

/// For a decomposable b = u^v, the 2-space spanned by u and v, as an
/// echelonized basis (column space of the bivector matrix).
/// DomainError when b is zero or not decomposable.
std::vector<std::vector<TowerElement>> bivector_support(const Bivector& b);

struct PfaffianSupport {
    TowerElement pfaffian;
    std::vector<std::vector<TowerElement>> support;  // empty unless pf = 0, b != 0
};
PfaffianSupport pfaffian_and_support(const Bivector& b);

}  // namespace wedge32
