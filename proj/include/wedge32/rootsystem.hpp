#pragma once

#include "wedge32/forms.hpp"
#include "wedge32/matrix.hpp"

namespace wedge32 {

/// The rank-6 simply-laced root-system model in the simple-root basis:
/// simple reflections s_i(alpha_j) = alpha_j - A_ij alpha_i, invariant
/// Gram = the Cartan matrix itself.
struct RootSystemModel {
    MatrixK cartan;
    std::vector<MatrixK> simple_reflections;
    SymmetricForm invariant_gram;
};

/// The type-E6 model, Bourbaki node numbering (chain 1-3-4-5-6, node 2
/// attached to node 4).
RootSystemModel build_e6();

}  // namespace wedge32
