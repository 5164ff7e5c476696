#include "wedge32/forms.hpp"

#include "doctest.h"
#include "oracles.hpp"
#include "wedge32/exterior.hpp"
#include "wedge32/rootsystem.hpp"

using namespace wedge32;

namespace {
const FieldDescriptor* base() { return FieldDescriptor::base(); }
}

TEST_CASE("congruence diagonalization of the identity is trivial") {
    const auto res = congruence_diagonalize(SymmetricForm(MatrixK::identity(4, base())));
    CHECK(res.q.is_identity());
    for (const auto& d : res.diag) CHECK(d.is_one());
}

TEST_CASE("congruence diagonalization of the wedge Gram keeps det = -1") {
    const auto res = congruence_diagonalize(SymmetricForm(gram_of_wedge_form(base())));
    TowerElement prod = TowerElement::one(base());
    for (const auto& d : res.diag) {
        CHECK_FALSE(d.is_zero());
        prod *= d;
    }
    // Q has det +-1, so the pivot product equals det J exactly
    CHECK(prod == TowerElement::from_int(-1, base()));
}

TEST_CASE("congruence diagonalization re-verifies its contract on random forms") {
    oracles::SplitMix rng(oracles::kPropertySeed ^ 21);
    int tested = 0;
    while (tested < 10) {
        auto m = oracles::random_rational_matrix(rng, 5, base());
        auto s = m + m.transpose();
        if (det(s).is_zero()) continue;
        ++tested;
        const auto res = congruence_diagonalize(SymmetricForm(s));
        const auto check = matmul(res.q.transpose(), matmul(s, res.q));
        for (unsigned r = 0; r < 5; ++r)
            for (unsigned c = 0; c < 5; ++c) {
                if (r == c)
                    CHECK(check.at(r, c) == res.diag[r]);
                else
                    CHECK(check.at(r, c).is_zero());
            }
    }
    CHECK_THROWS_AS(congruence_diagonalize(SymmetricForm(MatrixK(3, 3, base()))), DomainError);
}

TEST_CASE("form transport carries the Cartan Gram onto the wedge Gram") {
    const RootSystemModel e6 = build_e6();
    const SymmetricForm j(gram_of_wedge_form(base()));
    const FormTransport t = solve_form_transport(e6.invariant_gram, j);

    // defining contract, re-checked here
    const auto lhs = matmul(t.p.transpose(), matmul(j.gram.promoted_to(t.descriptor), t.p));
    const auto rhs = e6.invariant_gram.gram.promoted_to(t.descriptor)
                         .scaled(TowerElement::from_rational(t.c, t.descriptor));
    CHECK(lhs == rhs);

    // every transported simple reflection preserves the wedge form
    const MatrixK pinv = inverse(t.p);
    const MatrixK jg = j.gram.promoted_to(t.descriptor);
    for (const MatrixK& s : e6.simple_reflections) {
        const MatrixK st = matmul(matmul(t.p, s.promoted_to(t.descriptor)), pinv);
        CHECK(matmul(st.transpose(), matmul(jg, st)) == jg);
    }
}

TEST_CASE("transport is deterministic and its field degree is basis-independent") {
    const RootSystemModel e6 = build_e6();
    const SymmetricForm j(gram_of_wedge_form(base()));
    const FormTransport t1 = solve_form_transport(e6.invariant_gram, j);
    const FormTransport t2 = solve_form_transport(e6.invariant_gram, j);
    CHECK(t1.p == t2.p);
    CHECK(t1.c == t2.c);
    CHECK(t1.descriptor == t2.descriptor);

    // permute the Cartan basis by a fixed permutation and re-run: the
    // realized field degree must not change
    const unsigned perm[6] = {2, 0, 5, 1, 4, 3};
    MatrixK pm(6, 6, base());
    for (unsigned i = 0; i < 6; ++i) pm.at(perm[i], i) = TowerElement::one(base());
    const MatrixK a2 = matmul(pm.transpose(), matmul(e6.invariant_gram.gram, pm));
    const FormTransport t3 = solve_form_transport(SymmetricForm(a2), j);
    CHECK(t3.descriptor->dim() == t1.descriptor->dim());
}
