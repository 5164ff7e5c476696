#include "wedge32/tower.hpp"

#include <algorithm>
#include <set>

#include "doctest.h"
#include "oracles.hpp"

using namespace wedge32;

namespace {
const FieldDescriptor* base() { return FieldDescriptor::base(); }

TowerElement zeta_power(const FieldDescriptor* d, unsigned e) {
    TowerElement z = TowerElement::zeta12(d);
    TowerElement acc = TowerElement::one(d);
    for (unsigned i = 0; i < e; ++i) acc *= z;
    return acc;
}
}  // namespace

TEST_CASE("zeta^4 reduces to zeta^2 - 1, which is the cube root of unity") {
    const auto z4 = zeta_power(base(), 4);
    const auto j = TowerElement::cube_root_of_unity(base());
    CHECK(z4 == j);
    CHECK((zeta_power(base(), 4) - TowerElement::zeta6(base()) +
           TowerElement::one(base())).is_zero());
}

TEST_CASE("Phi12 evaluates to exactly zero") {
    const auto z = TowerElement::zeta12(base());
    CHECK((z * z * z * z - z * z + TowerElement::one(base())).is_zero());
}

TEST_CASE("inverse of zeta is zeta - zeta^3") {
    const auto z = TowerElement::zeta12(base());
    const auto z3 = zeta_power(base(), 3);
    CHECK(z.inverse() == z - z3);
    CHECK((z * (z - z3)).is_one());
}

TEST_CASE("identity cases: j^3 = 1 and 1 + (-1) = 0") {
    const auto j = TowerElement::cube_root_of_unity(base());
    CHECK((j * j * j).is_one());
    CHECK((TowerElement::one(base()) + TowerElement::from_int(-1, base())).is_zero());
}

TEST_CASE("inversion of zero is a domain error") {
    CHECK_THROWS_AS(TowerElement::zero(base()).inverse(), DomainError);
}

TEST_CASE("adjoin_sqrt handles squares, 3-parts and fresh primes") {
    SUBCASE("sqrt(1) is 1 over an unchanged descriptor") {
        const auto r = adjoin_sqrt(base(), 1);
        CHECK(r.descriptor == base());
        CHECK(r.root.is_one());
    }
    SUBCASE("sqrt(12) = 2*(2 zeta - zeta^3) stays in the base field") {
        const auto r = adjoin_sqrt(base(), 12);
        CHECK(r.descriptor == base());
        CHECK(r.root == TowerElement::sqrt3(base()).mul_rational(Rational(2)));
        CHECK(r.root * r.root == TowerElement::from_int(12, base()));
    }
    SUBCASE("sqrt(2) adjoins the radical 2") {
        const auto r = adjoin_sqrt(base(), 2);
        CHECK(r.descriptor->radicals() == std::vector<unsigned>{2});
        CHECK(r.root * r.root == TowerElement::from_int(2, r.descriptor));
    }
    SUBCASE("(2 zeta - zeta^3)^2 = 3") {
        const auto s3 = TowerElement::sqrt3(base());
        CHECK(s3 * s3 == TowerElement::from_int(3, base()));
    }
    SUBCASE("negative rationals pick up the imaginary unit") {
        const auto r = adjoin_sqrt_rational(base(), Rational(-4, 9));
        CHECK(r.root * r.root == TowerElement::from_rational(Rational(-4, 9), r.descriptor));
    }
}

TEST_CASE("descriptor rejects 3 and non-primes as radicals") {
    CHECK_THROWS_AS(FieldDescriptor::with_radicals({3}), DomainError);
    CHECK_THROWS_AS(FieldDescriptor::with_radicals({4}), DomainError);
    CHECK_THROWS_AS(FieldDescriptor::with_radicals({1}), DomainError);
}

TEST_CASE("malformed element text is refused") {
    CHECK_THROWS(TowerElement::from_text(base(), "1/0,0/1,0/1,0/1"));
    CHECK_THROWS(TowerElement::from_text(base(), "1/1"));
}

TEST_CASE("conjugation is complex conjugation under the distinguished embedding") {
    const auto z = TowerElement::zeta12(base());
    CHECK(z.conjugate() == z - zeta_power(base(), 3));
    CHECK(z.conjugate() == z.inverse());

    const auto q = TowerElement::from_rational(Rational(7, 3), base());
    CHECK(q.conjugate() == q);

    oracles::SplitMix rng(oracles::kPropertySeed);
    const auto* k = FieldDescriptor::with_radicals({2, 5});
    for (int i = 0; i < 50; ++i) {
        const auto a = oracles::random_tower_element(rng, k);
        const auto b = oracles::random_tower_element(rng, k);
        CHECK(a.conjugate().conjugate() == a);
        CHECK((a * b).conjugate() == a.conjugate() * b.conjugate());
        CHECK((a + b).conjugate() == a.conjugate() + b.conjugate());
        // sqrt radicals stay fixed
        const auto im = a.approx() - a.conjugate().approx();
        CHECK(std::abs(im.real()) < 1e-9);
    }
}

TEST_CASE("field axioms hold exactly on random elements") {
    oracles::SplitMix rng(oracles::kPropertySeed);
    const auto* k = FieldDescriptor::with_radicals({2, 5});
    for (int i = 0; i < 40; ++i) {
        const auto a = oracles::random_tower_element(rng, k);
        const auto b = oracles::random_tower_element(rng, k);
        const auto c = oracles::random_tower_element(rng, k);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        if (!a.is_zero()) {
            CHECK((a.inverse() * a).is_one());
        }
    }
}

TEST_CASE("canonical keys respect equality") {
    const auto z4 = zeta_power(base(), 4);
    const auto j = TowerElement::cube_root_of_unity(base());
    CHECK(z4.canonical_key() == j.canonical_key());
    CHECK(TowerElement::zero(base()).canonical_key() ==
          TowerElement::from_rational(Rational(0, 7), base()).canonical_key());

    // distinctness on random elements: sorted keys collide only for equal values
    oracles::SplitMix rng(oracles::kPropertySeed);
    const auto* k = FieldDescriptor::with_radicals({2});
    std::vector<TowerElement> elems;
    for (int i = 0; i < 1000; ++i) elems.push_back(oracles::random_tower_element(rng, k));
    std::vector<std::pair<std::string, std::size_t>> keys;
    for (std::size_t i = 0; i < elems.size(); ++i) keys.emplace_back(elems[i].canonical_key(), i);
    std::sort(keys.begin(), keys.end());
    for (std::size_t i = 1; i < keys.size(); ++i) {
        const bool same_key = keys[i].first == keys[i - 1].first;
        const bool same_val = elems[keys[i].second] == elems[keys[i - 1].second];
        CHECK(same_key == same_val);
    }
}

TEST_CASE("float embedding lands where it should") {
    const auto j = TowerElement::cube_root_of_unity(base());
    const auto ja = j.approx();
    CHECK(std::abs(ja.real() - (-0.5)) < 1e-12);
    CHECK(std::abs(ja.imag() - 0.8660254037844386) < 1e-12);
    CHECK(TowerElement::one(base()).approx() == std::complex<double>(1.0, 0.0));

    oracles::SplitMix rng(oracles::kPropertySeed);
    const auto* k = FieldDescriptor::with_radicals({2, 5});
    for (int i = 0; i < 50; ++i) {
        const auto a = oracles::random_tower_element(rng, k);
        const auto b = oracles::random_tower_element(rng, k);
        CHECK(std::abs((a * b).approx() - a.approx() * b.approx()) < 1e-9);
    }
}

TEST_CASE("promotion round trip between descriptors") {
    const auto* k = FieldDescriptor::with_radicals({2, 5});
    const auto j = TowerElement::cube_root_of_unity(base());
    const auto up = j.promoted_to(k);
    CHECK(up.descriptor() == k);
    CHECK(up.restricted_to(base()) == j);
    CHECK(up.lies_in(base()));
    const auto r2 = adjoin_sqrt(base(), 2).root.promoted_to(k);
    CHECK_FALSE(r2.lies_in(base()));
    // mixed-descriptor arithmetic promotes automatically
    CHECK(j + r2 == up + r2);
}

TEST_CASE("text serialization round trips") {
    oracles::SplitMix rng(oracles::kPropertySeed ^ 0x1234);
    const auto* k = FieldDescriptor::with_radicals({2, 5});
    for (int i = 0; i < 30; ++i) {
        const auto a = oracles::random_tower_element(rng, k);
        CHECK(TowerElement::from_text(k, a.to_text()) == a);
    }
}
