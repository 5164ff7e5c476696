#include "wedge32/reflection.hpp"

#include "doctest.h"
#include "oracles.hpp"
#include "wedge32/rootsystem.hpp"

using namespace wedge32;

namespace {
const FieldDescriptor* base() { return FieldDescriptor::base(); }

std::vector<MatrixK> a2_generators() {
    return {MatrixK::from_int_rows({{-1, 1}, {0, 1}}, base()),
            MatrixK::from_int_rows({{1, 0}, {1, -1}}, base())};
}
}  // namespace

TEST_CASE("reflection detection") {
    CHECK_FALSE(is_reflection(MatrixK::identity(4, base())));
    for (const MatrixK& s : a2_generators()) CHECK(is_reflection(s));
    // complex reflection of order 3
    MatrixK m = MatrixK::identity(2, base());
    m.at(0, 0) = TowerElement::cube_root_of_unity(base());
    CHECK(is_reflection(m));
    CHECK(matmul(m, matmul(m, m)).is_identity());
}

TEST_CASE("reflection scan matches the degree identity on the rank-2 model") {
    const auto s3 = FiniteMatrixGroup::closure(a2_generators(), 100);
    CHECK(reflections_of(s3).size() == 3);  // = (2-1) + (3-1)
}

TEST_CASE("the E6 model has the expected reflection structure") {
    const RootSystemModel model = build_e6();
    for (const MatrixK& s : model.simple_reflections) {
        CHECK(is_reflection(s));
        CHECK(matmul(s, s).is_identity());
        CHECK(det(s) == TowerElement::from_int(-1, base()));
        CHECK(matmul(s.transpose(), matmul(model.invariant_gram.gram, s)) ==
              model.invariant_gram.gram);
    }
}

TEST_CASE("regular vector search on the trivial group returns the whole group") {
    const auto triv = FiniteMatrixGroup::closure({MatrixK::identity(3, base())}, 2);
    const auto res = regular_vector_check(triv, MatrixK::identity(3, base()),
                                          TowerElement::one(base()));
    CHECK(res.eigenspace_dim == 3);
    CHECK(res.stabilizer_order == triv.size());
}

TEST_CASE("regular vector search finds a free vector for the symmetric group") {
    const auto s3 = FiniteMatrixGroup::closure(a2_generators(), 100);
    const auto res = regular_vector_check(s3, MatrixK::identity(2, base()),
                                          TowerElement::one(base()));
    CHECK(res.eigenspace_dim == 2);
    CHECK(res.stabilizer_order == 1);  // a vector off every reflecting line
    CHECK_THROWS_AS(regular_vector_check(s3, MatrixK::identity(2, base()),
                                         TowerElement::cube_root_of_unity(base())),
                    DomainError);
}

TEST_CASE("order-8 profile on a cyclic block model") {
    // 6x6 companion model: an order-8 block plus a det -1 two-block
    const std::vector<std::vector<long>> rows = {
        {0, 0, 0, -1, 0, 0},  //
        {1, 0, 0, 0, 0, 0},   //
        {0, 1, 0, 0, 0, 0},   //
        {0, 0, 1, 0, 0, 0},   //
        {0, 0, 0, 0, 1, 0},   //
        {0, 0, 0, 0, 0, -1},
    };
    const auto g = MatrixK::from_int_rows(rows, base());
    const auto c8 = FiniteMatrixGroup::closure({g}, 20);
    CHECK(c8.size() == 8);
    const auto table = c8.conjugacy_partition();
    const auto profile = order8_profile(c8, table);
    CHECK(profile.order8_count == 4);  // the four primitive powers
    CHECK(profile.charpolys_match);
    CHECK(profile.dets_minus_one);
    CHECK(profile.order8_in_det1_count == 0);
}
