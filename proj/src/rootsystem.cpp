#include "wedge32/rootsystem.hpp"

namespace wedge32 {

// Degrees of this group: 2, 5, 6, 8, 9, 12 (recomputed by the Molien
// machinery); codegrees 0, 3, 4, 6, 7, 10 are standard reference constants
// and are not recomputed anywhere.
RootSystemModel build_e6() {
    const FieldDescriptor* d = FieldDescriptor::base();
    const std::vector<std::vector<long>> cartan = {
        {2, 0, -1, 0, 0, 0},  //
        {0, 2, 0, -1, 0, 0},  //
        {-1, 0, 2, -1, 0, 0},  //
        {0, -1, -1, 2, -1, 0},  //
        {0, 0, 0, -1, 2, -1},  //
        {0, 0, 0, 0, -1, 2},
    };
    MatrixK a = MatrixK::from_int_rows(cartan, d);

    std::vector<MatrixK> refs;
    refs.reserve(6);
    for (unsigned i = 0; i < 6; ++i) {
        MatrixK s = MatrixK::identity(6, d);
        for (unsigned j = 0; j < 6; ++j)
            s.at(i, j) = TowerElement::from_int((i == j ? 1 : 0) - cartan[i][j], d);
        refs.push_back(std::move(s));
    }

    RootSystemModel model{a, std::move(refs), SymmetricForm(a)};
    for (const MatrixK& s : model.simple_reflections) {
        if (!matmul(s, s).is_identity() || det(s) != TowerElement::from_int(-1, d) ||
            rank(s - MatrixK::identity(6, d)) != 1 ||
            matmul(s.transpose(), matmul(a, s)) != a)
            throw ArithmeticError("simple reflection failed its defining contract");
    }
    return model;
}

}  // namespace wedge32
