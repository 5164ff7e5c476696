#pragma once

#include "wedge32/group.hpp"

namespace wedge32 {

/// Truncated Molien series: coefficient n is the dimension of the degree-n
/// invariants of the natural module. Exact; every coefficient is checked
/// to be a non-negative integer on construction.
struct MolienSeries {
    std::vector<Rational> coefficients;  // c_0 ... c_N

    unsigned truncation() const { return static_cast<unsigned>(coefficients.size()) - 1; }
};

/// (1/|G|) sum_g 1/det(I - t g) up to t^N, computed per distinct
/// characteristic polynomial by the linear recurrence it induces.
MolienSeries molien_series(const FiniteMatrixGroup& g, unsigned truncation, unsigned jobs = 1);

struct DegreeList {
    std::vector<unsigned> degrees;  // ascending

    Int product() const;
    unsigned long sum() const;
};

/// Greedy extraction: repeatedly strip (1 - t^d) at the smallest live
/// exponent, k times; the residue must be identically 1 through t^N and
/// the closed-form identities (product = |G|, sum of (d-1) = reflection
/// count) must hold, else this is not a reflection-group series.
DegreeList extract_degrees(const MolienSeries& s, unsigned rank, const Int& group_order,
                           std::size_t reflection_count);

/// (1/|G|) sum_g trace(g) * conj(trace(g)); equals 1 exactly iff the
/// natural module is irreducible.
Rational character_norm(const FiniteMatrixGroup& g);

}  // namespace wedge32
