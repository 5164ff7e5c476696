#include "wedge32/exterior.hpp"

#include "doctest.h"
#include "oracles.hpp"

using namespace wedge32;

namespace {
const FieldDescriptor* base() { return FieldDescriptor::base(); }

std::vector<TowerElement> random_vec4(oracles::SplitMix& rng) {
    std::vector<TowerElement> v;
    for (int i = 0; i < 4; ++i)
        v.push_back(TowerElement::from_rational(oracles::random_rational(rng), base()));
    return v;
}

Bivector random_bivector(oracles::SplitMix& rng) {
    Bivector b = Bivector::zero(base());
    for (auto& c : b.c) c = TowerElement::from_rational(oracles::random_rational(rng), base());
    return b;
}
}  // namespace

TEST_CASE("exterior square of the identity is the identity") {
    CHECK(exterior_square(MatrixK::identity(4, base())).is_identity());
}

TEST_CASE("exterior square of a diagonal matrix has pairwise products on the diagonal") {
    oracles::SplitMix rng(oracles::kPropertySeed);
    const Rational a = oracles::random_rational(rng), b = oracles::random_rational(rng),
                   c = oracles::random_rational(rng), d = oracles::random_rational(rng);
    MatrixK g(4, 4, base());
    const Rational vals[4] = {a, b, c, d};
    for (unsigned i = 0; i < 4; ++i)
        g.at(i, i) = TowerElement::from_rational(vals[i], base());
    const MatrixK lam = exterior_square(g);
    const Rational expected[6] = {a * b, a * c, a * d, b * c, b * d, c * d};
    for (unsigned i = 0; i < 6; ++i) {
        for (unsigned j = 0; j < 6; ++j) {
            if (i == j)
                CHECK(lam.at(i, j) == TowerElement::from_rational(expected[i], base()));
            else
                CHECK(lam.at(i, j).is_zero());
        }
    }
}

TEST_CASE("exterior square is multiplicative and kills -1, det is cubed") {
    oracles::SplitMix rng(oracles::kPropertySeed);
    for (int t = 0; t < 100; ++t) {
        const auto g = oracles::random_rational_matrix(rng, 4, base());
        const auto h = oracles::random_rational_matrix(rng, 4, base());
        CHECK(exterior_square(matmul(g, h)) == matmul(exterior_square(g), exterior_square(h)));
        CHECK(exterior_square(-g) == exterior_square(g));
        const auto dg = det(g);
        CHECK(det(exterior_square(g)) == dg * dg * dg);
    }
}

TEST_CASE("wedge Gram matrix matches the permutation-sign oracle") {
    const MatrixK j = gram_of_wedge_form(base());
    for (unsigned r = 0; r < 6; ++r) {
        const auto [i1, j1] = kBivectorBasis[r];
        for (unsigned c = 0; c < 6; ++c) {
            const auto [i2, j2] = kBivectorBasis[c];
            const int sign = oracles::four_form_coefficient(i1, j1, i2, j2);
            CHECK(j.at(r, c) == TowerElement::from_int(sign, base()));
        }
    }
    // explicitly the antidiagonal 1, -1, 1, 1, -1, 1
    const long anti[6] = {1, -1, 1, 1, -1, 1};
    for (unsigned r = 0; r < 6; ++r)
        CHECK(j.at(r, 5 - r) == TowerElement::from_int(anti[r], base()));
    CHECK(det(j) == TowerElement::from_int(-1, base()));
}

TEST_CASE("wedge form against itself vanishes on decomposables") {
    oracles::SplitMix rng(oracles::kPropertySeed ^ 7);
    for (int t = 0; t < 100; ++t) {
        const auto u = random_vec4(rng);
        const auto v = random_vec4(rng);
        const Bivector b = Bivector::wedge(u, v);
        CHECK(wedge_form(b, b).is_zero());
        CHECK(pfaffian(b).is_zero());
    }
}

TEST_CASE("wedge form is det-equivariant under the exterior square") {
    oracles::SplitMix rng(oracles::kPropertySeed);
    for (int t = 0; t < 100; ++t) {
        const auto g = oracles::random_rational_matrix(rng, 4, base());
        const Bivector x = random_bivector(rng);
        const Bivector y = random_bivector(rng);
        const MatrixK lam = exterior_square(g);
        Bivector lx = Bivector::zero(base()), ly = Bivector::zero(base());
        for (unsigned r = 0; r < 6; ++r)
            for (unsigned c = 0; c < 6; ++c) {
                lx.c[r] += lam.at(r, c) * x.c[c];
                ly.c[r] += lam.at(r, c) * y.c[c];
            }
        CHECK(wedge_form(lx, ly) == det(g) * wedge_form(x, y));
    }
}

TEST_CASE("pfaffian and support of basic bivectors") {
    SUBCASE("e1^e2 is decomposable with support span(e1, e2)") {
        Bivector b = Bivector::zero(base());
        b.c[0] = TowerElement::one(base());
        const auto ps = pfaffian_and_support(b);
        CHECK(ps.pfaffian.is_zero());
        REQUIRE(ps.support.size() == 2);
        // echelonized: e1 and e2 up to sign/scale
        CHECK_FALSE(ps.support[0][0].is_zero());
        CHECK(ps.support[0][2].is_zero());
        CHECK(ps.support[0][3].is_zero());
        CHECK_FALSE(ps.support[1][1].is_zero());
    }
    SUBCASE("e1^e2 + e3^e4 has pfaffian 1") {
        Bivector b = Bivector::zero(base());
        b.c[0] = TowerElement::one(base());
        b.c[5] = TowerElement::one(base());
        CHECK(pfaffian(b).is_one());
        // b wedge b = 2 * volume, which the form sees as 2
        CHECK(wedge_form(b, b) == TowerElement::from_int(2, base()));
        CHECK_THROWS_AS(bivector_support(b), DomainError);
    }
    SUBCASE("zero bivector has no support") {
        CHECK_THROWS_AS(pfaffian_and_support(Bivector::zero(base())), DomainError);
    }
}

TEST_CASE("pfaffian squared is the determinant of the bivector matrix") {
    oracles::SplitMix rng(oracles::kPropertySeed ^ 8);
    for (int t = 0; t < 30; ++t) {
        const Bivector b = random_bivector(rng);
        const auto pf = pfaffian(b);
        CHECK(pf * pf == det(bivector_matrix(b)));
    }
}

TEST_CASE("support of u^v spans u and v") {
    oracles::SplitMix rng(oracles::kPropertySeed ^ 9);
    int tested = 0;
    while (tested < 20) {
        const auto u = random_vec4(rng);
        const auto v = random_vec4(rng);
        const Bivector b = Bivector::wedge(u, v);
        if (b.is_zero()) continue;
        ++tested;
        const auto sup = bivector_support(b);
        REQUIRE(sup.size() == 2);
        // u and v lie in the support: span{sup} + u has rank 2 still
        auto with_u = sup;
        with_u.push_back(u);
        auto with_v = sup;
        with_v.push_back(v);
        CHECK(span_basis(with_u).size() == 2);
        CHECK(span_basis(with_v).size() == 2);
    }
}
