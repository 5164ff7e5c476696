#include "wedge32/matrix.hpp"

#include "doctest.h"
#include "oracles.hpp"

using namespace wedge32;

namespace {
const FieldDescriptor* base() { return FieldDescriptor::base(); }
}

TEST_CASE("identity basics") {
    const auto i4 = MatrixK::identity(4, base());
    CHECK(inverse(i4) == i4);
    CHECK(det(i4).is_one());
    CHECK(rank(i4) == 4);
    CHECK(kernel_basis(i4).empty());
}

TEST_CASE("char poly of diag(1, j, j, j) matches the expanded product") {
    const auto j = TowerElement::cube_root_of_unity(base());
    MatrixK m(4, 4, base());
    m.at(0, 0) = TowerElement::one(base());
    for (unsigned i = 1; i < 4; ++i) m.at(i, i) = j;

    // oracle: expand (x-1)(x-j)^3 by test-side polynomial multiplication
    auto expect = oracles::linear_factor(TowerElement::one(base()));
    for (int i = 0; i < 3; ++i) expect = oracles::poly_mul(expect, oracles::linear_factor(j));

    const CharPoly p = char_poly(m);
    REQUIRE(p.coeffs.size() == expect.size());
    for (std::size_t i = 0; i < expect.size(); ++i) CHECK(p.coeffs[i] == expect[i]);
}

TEST_CASE("Cayley-Hamilton spot check on random matrices") {
    oracles::SplitMix rng(oracles::kPropertySeed);
    for (int t = 0; t < 10; ++t) {
        const auto m = oracles::random_rational_matrix(rng, 4, base());
        CHECK(char_poly(m).evaluate(m).is_zero());
    }
    for (int t = 0; t < 5; ++t) {
        const auto m = oracles::random_rational_matrix(rng, 6, base());
        CHECK(char_poly(m).evaluate(m).is_zero());
    }
}

TEST_CASE("det via char poly agrees with multiplicativity") {
    oracles::SplitMix rng(oracles::kPropertySeed ^ 1);
    for (int t = 0; t < 20; ++t) {
        const auto a = oracles::random_rational_matrix(rng, 4, base());
        const auto b = oracles::random_rational_matrix(rng, 4, base());
        CHECK(det(matmul(a, b)) == det(a) * det(b));
    }
}

TEST_CASE("inverse and inverse_via_charpoly agree") {
    oracles::SplitMix rng(oracles::kPropertySeed ^ 2);
    int tested = 0;
    while (tested < 10) {
        const auto m = oracles::random_rational_matrix(rng, 4, base());
        if (det(m).is_zero()) continue;
        ++tested;
        const auto inv1 = inverse(m);
        CHECK(matmul(inv1, m).is_identity());
        CHECK(inverse_via_charpoly(m) == inv1);
    }
    MatrixK singular(3, 3, base());
    singular.at(0, 0) = TowerElement::one(base());
    CHECK_THROWS_AS(inverse(singular), DomainError);
}

TEST_CASE("kernel vectors are exact kernel vectors and dimensions add up") {
    oracles::SplitMix rng(oracles::kPropertySeed ^ 3);
    for (int t = 0; t < 15; ++t) {
        // random products of rank-deficient shapes show up as g - lambda too
        MatrixK m = oracles::random_rational_matrix(rng, 5, base());
        if (t % 3 == 0) {
            // force rank drop: duplicate a row
            for (unsigned c = 0; c < 5; ++c) m.at(4, c) = m.at(0, c);
        }
        const auto ker = kernel_basis(m);
        CHECK(rank(m) + ker.size() == 5);
        for (const auto& v : ker) {
            const auto image = matvec(m, v);
            for (const auto& x : image) CHECK(x.is_zero());
        }
    }
}

TEST_CASE("char poly is a similarity invariant") {
    oracles::SplitMix rng(oracles::kPropertySeed ^ 4);
    int tested = 0;
    while (tested < 8) {
        const auto m = oracles::random_rational_matrix(rng, 4, base());
        const auto p = oracles::random_rational_matrix(rng, 4, base());
        if (det(p).is_zero()) continue;
        ++tested;
        const auto conj = matmul(matmul(p, m), inverse(p));
        CHECK(char_poly(conj).key() == char_poly(m).key());
    }
}

TEST_CASE("rank-one detector matches the general rank") {
    oracles::SplitMix rng(oracles::kPropertySeed ^ 5);
    const auto* d = base();
    // build u v^T + optional noise
    for (int t = 0; t < 10; ++t) {
        MatrixK m(4, 4, d);
        std::vector<TowerElement> u, v;
        for (int i = 0; i < 4; ++i) {
            u.push_back(TowerElement::from_rational(oracles::random_rational(rng), d));
            v.push_back(TowerElement::from_rational(oracles::random_rational(rng), d));
        }
        for (unsigned r = 0; r < 4; ++r)
            for (unsigned c = 0; c < 4; ++c) m.at(r, c) = u[r] * v[c];
        CHECK(is_rank_at_most_one(m));
        CHECK(rank(m) <= 1);
    }
    const auto full = MatrixK::identity(4, d);
    CHECK_FALSE(is_rank_at_most_one(full));
}

TEST_CASE("span and intersection of subspaces") {
    const auto* d = base();
    auto vec = [&](std::initializer_list<long> xs) {
        std::vector<TowerElement> v;
        for (long x : xs) v.push_back(TowerElement::from_int(x, d));
        return v;
    };
    // span{e1, e2} meet span{e2, e3} = span{e2}
    const auto inter = intersect_subspaces({vec({1, 0, 0, 0}), vec({0, 1, 0, 0})},
                                           {vec({0, 1, 0, 0}), vec({0, 0, 1, 0})});
    REQUIRE(inter.size() == 1);
    CHECK(inter[0] == vec({0, 1, 0, 0}));

    const auto sp = span_basis({vec({1, 1, 0, 0}), vec({2, 2, 0, 0}), vec({0, 0, 1, 0})});
    CHECK(sp.size() == 2);
}
