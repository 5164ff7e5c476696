#pragma once

#include "wedge32/matrix.hpp"

namespace wedge32 {

/// Symmetric bilinear form held as its Gram matrix.
struct SymmetricForm {
    MatrixK gram;

    SymmetricForm() = default;
    explicit SymmetricForm(MatrixK g);
    unsigned dim() const { return gram.rows(); }
};

struct CongruenceResult {
    MatrixK q;                        // basis change
    std::vector<TowerElement> diag;   // Q^T S Q = diag(...)
};

/// Symmetric Gaussian elimination, entirely rational (no square roots).
/// Pivot rule: first nonzero diagonal entry of the remaining block; when
/// the whole remaining diagonal vanishes, add the row/column of the lowest
/// off-diagonal nonzero pair (hyperbolic fix-up, lowest indices first).
/// The defining identity Q^T S Q = D is re-verified before returning.
CongruenceResult congruence_diagonalize(const SymmetricForm& s);

struct FormTransport {
    MatrixK p;                 // P^T J P = c * A exactly
    Rational c;                // scale chosen to minimize adjoined radicals
    const FieldDescriptor* descriptor;  // realized field
};

/// Finds P with P^T J P = c A by diagonalizing both forms and matching the
/// diagonals with square roots of pivot ratios (signs absorbed by the
/// imaginary unit of the base field). The scale c runs over
/// {1, 2, 3, 6, 1/2, 1/3} and the basis order of A over all permutations,
/// deterministically; the first combination realizing the fewest adjoined
/// primes wins, which keeps the realized field degree basis-independent.
FormTransport solve_form_transport(const SymmetricForm& a, const SymmetricForm& j);

}  // namespace wedge32
