#include "wedge32/forms.hpp"

#include <algorithm>
#include <optional>

namespace wedge32 {

SymmetricForm::SymmetricForm(MatrixK g) : gram(std::move(g)) {
    if (gram.rows() != gram.cols()) throw DomainError("Gram matrix must be square");
    if (gram != gram.transpose()) throw DomainError("Gram matrix must be symmetric");
}

CongruenceResult congruence_diagonalize(const SymmetricForm& form) {
    const unsigned n = form.dim();
    const FieldDescriptor* d = form.gram.descriptor();
    MatrixK s = form.gram;
    MatrixK q = MatrixK::identity(n, d);

    for (unsigned k = 0; k < n; ++k) {
        unsigned piv = k;
        while (piv < n && s.at(piv, piv).is_zero()) ++piv;
        if (piv == n) {
            // whole remaining diagonal is zero: hyperbolic fix-up at the
            // lowest off-diagonal nonzero
            std::optional<std::pair<unsigned, unsigned>> found;
            for (unsigned r = k; r < n && !found; ++r)
                for (unsigned c = r + 1; c < n; ++c)
                    if (!s.at(r, c).is_zero()) {
                        found = {r, c};
                        break;
                    }
            if (!found) throw DomainError("degenerate form");
            const auto [r, c] = *found;
            for (unsigned t = 0; t < n; ++t) s.at(r, t) += s.at(c, t);
            for (unsigned t = 0; t < n; ++t) s.at(t, r) += s.at(t, c);
            for (unsigned t = 0; t < n; ++t) q.at(t, r) += q.at(t, c);
            piv = r;
        }
        if (piv != k) {
            for (unsigned t = 0; t < n; ++t) std::swap(s.at(k, t), s.at(piv, t));
            for (unsigned t = 0; t < n; ++t) std::swap(s.at(t, k), s.at(t, piv));
            for (unsigned t = 0; t < n; ++t) std::swap(q.at(t, k), q.at(t, piv));
        }
        const TowerElement pinv = s.at(k, k).inverse();
        for (unsigned r = k + 1; r < n; ++r) {
            if (s.at(r, k).is_zero()) continue;
            const TowerElement f = s.at(r, k) * pinv;
            for (unsigned t = 0; t < n; ++t) s.at(r, t) -= f * s.at(k, t);
            for (unsigned t = 0; t < n; ++t) s.at(t, r) -= f * s.at(t, k);
            for (unsigned t = 0; t < n; ++t) q.at(t, r) -= f * q.at(t, k);
        }
    }

    CongruenceResult out{std::move(q), {}};
    out.diag.reserve(n);
    for (unsigned i = 0; i < n; ++i) out.diag.push_back(s.at(i, i));

    const MatrixK check = matmul(out.q.transpose(), matmul(form.gram, out.q));
    for (unsigned r = 0; r < n; ++r)
        for (unsigned c = 0; c < n; ++c) {
            const bool ok = (r == c) ? check.at(r, c) == out.diag[r] : check.at(r, c).is_zero();
            if (!ok) throw ArithmeticError("congruence diagonalization self-check failed");
        }
    return out;
}

namespace {

// primes that a square root of q would adjoin (odd-exponent primes != 3)
std::vector<unsigned> radical_primes_of(const Rational& q) {
    Int uv = Int(q.get_num()) * Int(q.get_den());
    if (uv < 0) uv = -uv;
    std::vector<unsigned> out;
    Int f(2);
    while (f * f <= uv) {
        int e = 0;
        while (mpz_divisible_p(uv.get_mpz_t(), f.get_mpz_t())) {
            mpz_divexact(uv.get_mpz_t(), uv.get_mpz_t(), f.get_mpz_t());
            ++e;
        }
        if (e % 2 && f != 3) out.push_back(static_cast<unsigned>(f.get_ui()));
        f += (f == 2) ? 1 : 2;
    }
    if (uv > 1 && uv != 3) out.push_back(static_cast<unsigned>(uv.get_ui()));
    return out;
}

}  // namespace

namespace {

std::vector<unsigned> primes_for_scaling(const std::vector<Rational>& da,
                                         const std::vector<Rational>& dj, const Rational& c) {
    std::vector<unsigned> primes;
    for (std::size_t i = 0; i < da.size(); ++i) {
        Rational r = c * da[i] / dj[i];
        r.canonicalize();
        for (unsigned p : radical_primes_of(r)) primes.push_back(p);
    }
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    return primes;
}

}  // namespace

FormTransport solve_form_transport(const SymmetricForm& a, const SymmetricForm& j) {
    if (a.dim() != j.dim()) throw DomainError("form transport: dimension mismatch");
    const unsigned n = a.dim();
    const FieldDescriptor* start = a.gram.descriptor();

    const CongruenceResult cj = congruence_diagonalize(j);
    std::vector<Rational> dj(n);
    for (unsigned i = 0; i < n; ++i) {
        dj[i] = cj.diag[i].rational_value();
        if (dj[i] == 0) throw DomainError("form transport needs non-degenerate forms");
    }

    const Rational candidates[] = {Rational(1), Rational(2),    Rational(3),
                                   Rational(6), Rational(1, 2), Rational(1, 3)};

    // The pivot sequence, and with it the adjoined radical set, depends on
    // the basis order fed to the elimination. Scan all basis permutations
    // of the first form in lexicographic order and keep the first
    // permutation and scale realizing the fewest adjoined primes; the
    // minimum is basis-independent, so reruns land in the same field.
    std::vector<unsigned> perm(n), best_perm(n);
    Rational best_c;
    std::size_t best_count = SIZE_MAX;
    for (unsigned i = 0; i < n; ++i) perm[i] = i;
    std::vector<unsigned> scan = perm;
    do {
        MatrixK permuted(n, n, start);
        for (unsigned r = 0; r < n; ++r)
            for (unsigned c = 0; c < n; ++c) permuted.at(r, c) = a.gram.at(scan[r], scan[c]);
        CongruenceResult ca;
        try {
            ca = congruence_diagonalize(SymmetricForm(std::move(permuted)));
        } catch (const DomainError&) {
            throw;  // degenerate form: hopeless for every permutation
        }
        std::vector<Rational> da(n);
        bool usable = true;
        for (unsigned i = 0; i < n && usable; ++i) {
            da[i] = ca.diag[i].rational_value();
            if (da[i] == 0) usable = false;
        }
        if (!usable) continue;
        for (const Rational& c : candidates) {
            const std::size_t count = primes_for_scaling(da, dj, c).size();
            if (count < best_count) {
                best_count = count;
                best_c = c;
                best_perm = scan;
            }
            if (best_count == 0) break;
        }
    } while (best_count != 0 && std::next_permutation(scan.begin(), scan.end()));

    // rebuild the winning diagonalization, composed with its permutation
    MatrixK permuted(n, n, start);
    for (unsigned r = 0; r < n; ++r)
        for (unsigned c = 0; c < n; ++c) permuted.at(r, c) = a.gram.at(best_perm[r], best_perm[c]);
    const CongruenceResult ca = congruence_diagonalize(SymmetricForm(std::move(permuted)));
    MatrixK perm_matrix(n, n, start);
    for (unsigned i = 0; i < n; ++i)
        perm_matrix.at(best_perm[i], i) = TowerElement::one(start);
    const MatrixK qa = matmul(perm_matrix, ca.q);  // qa^T A qa = Da

    std::vector<Rational> da(n);
    for (unsigned i = 0; i < n; ++i) da[i] = ca.diag[i].rational_value();

    // adjoin all needed radicals, then build the diagonal scaling
    const FieldDescriptor* desc = start;
    std::vector<TowerElement> scale;
    scale.reserve(n);
    for (unsigned i = 0; i < n; ++i) {
        Rational r = best_c * da[i] / dj[i];
        r.canonicalize();
        AdjoinResult res = adjoin_sqrt_rational(desc, r);
        desc = res.descriptor;
        scale.push_back(std::move(res.root));
    }

    MatrixK s(n, n, desc);
    for (unsigned i = 0; i < n; ++i) s.at(i, i) = scale[i].promoted_to(desc);
    const MatrixK p = matmul(cj.q.promoted_to(desc), matmul(s, inverse(qa.promoted_to(desc))));

    const MatrixK lhs = matmul(p.transpose(), matmul(j.gram.promoted_to(desc), p));
    const MatrixK rhs = a.gram.promoted_to(desc).scaled(TowerElement::from_rational(best_c, desc));
    if (lhs != rhs) throw ArithmeticError("form transport self-check failed: P^T J P != c A");

    return {p, best_c, desc};
}

}  // namespace wedge32
