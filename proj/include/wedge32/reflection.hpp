#pragma once

#include "wedge32/group.hpp"

namespace wedge32 {

/// rank(g - I) = 1: finite-order maps fixing a hyperplane pointwise.
/// Order > 2 is allowed (complex reflections).
bool is_reflection(const MatrixK& g);

/// Positions of every reflection in the group, by full scan.
std::vector<std::size_t> reflections_of(const FiniteMatrixGroup& g);

struct RegularVectorResult {
    std::vector<TowerElement> eigenvector;
    std::size_t stabilizer_order;
    unsigned eigenspace_dim;
};

/// Walks a deterministic sequence of rational combinations of the
/// eigenspace basis and scans the whole group for the stabilizer of each;
/// returns the first candidate realizing the smallest stabilizer found
/// (immediately, when that stabilizer is trivial).
RegularVectorResult regular_vector_check(const FiniteMatrixGroup& g, const MatrixK& w,
                                         const TowerElement& eigenvalue);

struct Order8Profile {
    std::size_t order8_count = 0;            // in the full group
    bool charpolys_match = true;             // every one equals (x^2-1)(x^4+1)
    bool dets_minus_one = true;              // every one has det -1
    std::size_t order8_in_det1_count = 0;    // inside the det-1 subgroup
};

/// Scans the order-8 elements of a rational 6-dimensional model.
Order8Profile order8_profile(const FiniteMatrixGroup& g, const ConjClassTable& classes);

}  // namespace wedge32
