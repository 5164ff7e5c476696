#include "wedge32/group.hpp"

#include <set>

#include "doctest.h"
#include "oracles.hpp"

using namespace wedge32;

namespace {
const FieldDescriptor* base() { return FieldDescriptor::base(); }

// 2-dimensional reflection representation of the rank-2 simply-laced Weyl
// group (symmetric group on 3 letters, order 6)
std::vector<MatrixK> a2_generators() {
    return {MatrixK::from_int_rows({{-1, 1}, {0, 1}}, base()),
            MatrixK::from_int_rows({{1, 0}, {1, -1}}, base())};
}

// 3-dimensional reflection representation of the symmetric group on 4
// letters (order 24)
std::vector<MatrixK> a3_generators() {
    const std::vector<std::vector<long>> cartan = {{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}};
    std::vector<MatrixK> gens;
    for (unsigned i = 0; i < 3; ++i) {
        MatrixK s = MatrixK::identity(3, base());
        for (unsigned j = 0; j < 3; ++j)
            s.at(i, j) = TowerElement::from_int((i == j ? 1 : 0) - cartan[i][j], base());
        gens.push_back(std::move(s));
    }
    return gens;
}
}  // namespace

TEST_CASE("closure of the identity alone is the trivial group") {
    const auto g = FiniteMatrixGroup::closure({MatrixK::identity(3, base())}, 10);
    CHECK(g.size() == 1);
    CHECK(g.element(0).is_identity());
}

TEST_CASE("closure enumerates small Weyl groups with the right orders") {
    const auto s3 = FiniteMatrixGroup::closure(a2_generators(), 100);
    CHECK(s3.size() == 6);
    const auto s4 = FiniteMatrixGroup::closure(a3_generators(), 100);
    CHECK(s4.size() == 24);
    // identity sits at position 0
    CHECK(s4.element(0).is_identity());
}

TEST_CASE("closure aborts past its order bound") {
    // an infinite-order generator can never close
    const auto m = MatrixK::from_int_rows({{2}}, base());
    CHECK_THROWS_AS(FiniteMatrixGroup::closure({m}, 64), RunawayClosureError);
    CHECK_THROWS_AS(FiniteMatrixGroup::closure({MatrixK(2, 2, base())}, 64), DomainError);
}

TEST_CASE("parallel closure discovers elements in the serial order") {
    const auto serial = FiniteMatrixGroup::closure(a3_generators(), 100, 1);
    const auto parallel = FiniteMatrixGroup::closure(a3_generators(), 100, 3);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i)
        CHECK(serial.element(i) == parallel.element(i));
}

TEST_CASE("products and inverses stay inside the index") {
    const auto s4 = FiniteMatrixGroup::closure(a3_generators(), 100);
    oracles::SplitMix rng(oracles::kPropertySeed);
    for (int t = 0; t < 50; ++t) {
        const auto a = static_cast<std::size_t>(rng.next() % s4.size());
        const auto b = static_cast<std::size_t>(rng.next() % s4.size());
        CHECK_NOTHROW(s4.multiply(a, b));
    }
    for (std::size_t pos = 0; pos < s4.size(); ++pos) {
        const std::size_t inv = s4.inverse_position(pos);
        CHECK(s4.multiply(pos, inv) == 0);
    }
}

TEST_CASE("determinant tracking matches direct computation") {
    const auto s4 = FiniteMatrixGroup::closure(a3_generators(), 100);
    for (std::size_t pos = 0; pos < s4.size(); ++pos)
        CHECK(s4.determinant(pos) == det(s4.element(pos)));
}

TEST_CASE("det-1 subgroup of the symmetric group is the alternating half") {
    const auto s4 = FiniteMatrixGroup::closure(a3_generators(), 100);
    const auto a4 = s4.subgroup_by_det({TowerElement::one(base())});
    CHECK(a4.size() == 12);
    CHECK(a4.element(0).is_identity());
    // allowing every determinant keeps the whole group
    const auto all = s4.subgroup_by_det(
        {TowerElement::one(base()), TowerElement::from_int(-1, base())});
    CHECK(all.size() == 24);
    // Lagrange
    CHECK(s4.size() % a4.size() == 0);
}

TEST_CASE("class equation and centralizers on the symmetric group") {
    const auto s4 = FiniteMatrixGroup::closure(a3_generators(), 100);
    const auto table = s4.conjugacy_partition();
    CHECK(table.class_count() == 5);  // cycle types of 4 letters
    std::size_t total = 0;
    for (std::size_t c = 0; c < table.class_count(); ++c) {
        total += table.sizes[c];
        const auto cent = s4.centralizer(table.representatives[c]);
        CHECK(table.sizes[c] * cent.size() == s4.size());
    }
    CHECK(total == s4.size());
    CHECK(s4.center().size() == 1);
}

TEST_CASE("conjugacy scan agrees with the class table") {
    const auto s3 = FiniteMatrixGroup::closure(a2_generators(), 100);
    const auto table = s3.conjugacy_partition();
    for (std::size_t a = 0; a < s3.size(); ++a)
        for (std::size_t b = 0; b < s3.size(); ++b)
            CHECK(s3.are_conjugate(a, b) == (table.class_of[a] == table.class_of[b]));
    CHECK_THROWS_AS(s3.are_conjugate(0, 99), DomainError);
}

TEST_CASE("element orders and the order spectrum") {
    const auto s3 = FiniteMatrixGroup::closure(a2_generators(), 100);
    const auto spectrum = s3.order_spectrum();
    REQUIRE(spectrum.size() == 3);
    CHECK(spectrum.at(1) == 1);
    CHECK(spectrum.at(2) == 3);
    CHECK(spectrum.at(3) == 2);
}

TEST_CASE("normal closures separate normal from non-normal subgroups") {
    const auto s3 = FiniteMatrixGroup::closure(a2_generators(), 100);
    // a reflection generates a non-normal subgroup of order 2; its normal
    // closure is everything
    std::size_t reflection_pos = 0, rotation_pos = 0;
    for (std::size_t pos = 1; pos < s3.size(); ++pos) {
        if (s3.element_order(pos) == 2) reflection_pos = pos;
        if (s3.element_order(pos) == 3) rotation_pos = pos;
    }
    CHECK(s3.normal_closure(reflection_pos).size() == 6);
    CHECK(s3.normal_closure(rotation_pos).size() == 3);
    CHECK_FALSE(s3.simplicity_certificate());
}

TEST_CASE("simplicity certificate rejects the cyclic group of order 4") {
    // scalar matrices generated by the imaginary unit
    const auto i = TowerElement::imaginary_unit(base());
    const auto c4 = FiniteMatrixGroup::closure({MatrixK::scalar(2, i)}, 10);
    CHECK(c4.size() == 4);
    CHECK_FALSE(c4.simplicity_certificate());
    // while a prime cyclic group passes
    const auto j = TowerElement::cube_root_of_unity(base());
    const auto c3 = FiniteMatrixGroup::closure({MatrixK::scalar(2, j)}, 10);
    CHECK(c3.size() == 3);
    CHECK(c3.simplicity_certificate());
}

TEST_CASE("packed char poly equals the materialized one") {
    const auto s4 = FiniteMatrixGroup::closure(a3_generators(), 100);
    for (std::size_t pos = 0; pos < s4.size(); ++pos)
        CHECK(s4.element_char_poly(pos).key() == char_poly(s4.element(pos)).key());
}

TEST_CASE("generating subsets found greedily actually generate") {
    const auto s4 = FiniteMatrixGroup::closure(a3_generators(), 100);
    const auto a4 = s4.subgroup_by_det({TowerElement::one(base())});
    const auto gens = a4.find_generating_subset();
    CHECK(!gens.empty());
    std::vector<MatrixK> mats;
    for (const auto pos : gens) mats.push_back(a4.element(pos));
    CHECK(FiniteMatrixGroup::closure(mats, 100).size() == a4.size());
}

TEST_CASE("groups over a nontrivial tower descriptor work the same way") {
    // dihedral flavor: rotation by zeta12 and a real reflection
    const auto z = TowerElement::zeta12(base());
    MatrixK rot(2, 2, base());
    rot.at(0, 0) = z;
    rot.at(1, 1) = z.conjugate();
    const auto flip = MatrixK::from_int_rows({{0, 1}, {1, 0}}, base());
    const auto d12 = FiniteMatrixGroup::closure({rot, flip}, 100);
    CHECK(d12.size() == 24);
    CHECK(d12.element_order(d12.find(rot).value()) == 12);
}
