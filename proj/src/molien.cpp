#include "wedge32/molien.hpp"

#include <map>

#include "wedge32/parallel.hpp"

namespace wedge32 {

MolienSeries molien_series(const FiniteMatrixGroup& g, unsigned truncation, unsigned jobs) {
    if (truncation < 1) throw DomainError("molien series needs truncation >= 1");
    const unsigned n = g.dim();
    const FieldDescriptor* d = g.pool()->descriptor();

    // group elements by characteristic polynomial
    struct Bucket {
        CharPoly poly;
        std::size_t count = 0;
    };
    std::map<std::string, Bucket> buckets;
    for (std::size_t pos = 0; pos < g.size(); ++pos) {
        CharPoly p = g.element_char_poly(pos);
        auto [it, inserted] = buckets.try_emplace(p.key());
        if (inserted) it->second.poly = std::move(p);
        ++it->second.count;
    }

    std::vector<const Bucket*> order;
    order.reserve(buckets.size());
    for (const auto& [key, b] : buckets) order.push_back(&b);

    // per char poly: 1/det(I - t g) by linear recurrence; det(I - t g) has
    // coefficient a_{n-k} of the (ascending, monic) char poly at t^k
    std::vector<std::vector<TowerElement>> series(order.size());
    parallel_blocks(order.size(), jobs, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t b = lo; b < hi; ++b) {
            const CharPoly& cp = order[b]->poly;
            std::vector<TowerElement> s(truncation + 1, TowerElement::zero(d));
            s[0] = TowerElement::one(d);
            for (unsigned m = 1; m <= truncation; ++m) {
                TowerElement acc = TowerElement::zero(d);
                const unsigned kmax = std::min(m, n);
                for (unsigned k = 1; k <= kmax; ++k) acc += cp.coeffs[n - k] * s[m - k];
                s[m] = -acc;
            }
            series[b] = std::move(s);
        }
    });

    // deterministic reduction in bucket key order, then divide by |G|
    MolienSeries out;
    out.coefficients.reserve(truncation + 1);
    const Rational group_order(static_cast<unsigned long>(g.size()));
    for (unsigned m = 0; m <= truncation; ++m) {
        TowerElement total = TowerElement::zero(d);
        for (std::size_t b = 0; b < order.size(); ++b) {
            TowerElement weighted =
                series[b][m].mul_rational(Rational(static_cast<unsigned long>(order[b]->count)));
            total += weighted;
        }
        if (!total.is_rational())
            throw ArithmeticError("molien coefficient is not rational: broken arithmetic");
        Rational c = total.rational_value() / group_order;
        c.canonicalize();
        if (c.get_den() != 1 || c < 0)
            throw ArithmeticError("molien coefficient is not a non-negative integer");
        out.coefficients.push_back(std::move(c));
    }
    return out;
}

Int DegreeList::product() const {
    Int p(1);
    for (unsigned d : degrees) p *= static_cast<unsigned long>(d);
    return p;
}

unsigned long DegreeList::sum() const {
    unsigned long s = 0;
    for (unsigned d : degrees) s += d;
    return s;
}

DegreeList extract_degrees(const MolienSeries& s, unsigned rank, const Int& group_order,
                           std::size_t reflection_count) {
    const unsigned n = s.truncation();
    std::vector<Rational> cur = s.coefficients;
    if (cur.empty() || cur[0] != 1)
        throw ArithmeticError("not a reflection-group series: constant term is not 1");

    DegreeList out;
    for (unsigned step = 0; step < rank; ++step) {
        unsigned deg = 0;
        for (unsigned m = 1; m <= n; ++m)
            if (cur[m] != 0) {
                deg = m;
                break;
            }
        if (deg == 0)
            throw ArithmeticError("not a reflection-group series: ran out of exponents");
        // multiply by (1 - t^deg)
        for (unsigned m = n; m >= deg; --m) cur[m] -= cur[m - deg];
        out.degrees.push_back(deg);
    }

    for (unsigned m = 1; m <= n; ++m)
        if (cur[m] != 0)
            throw ArithmeticError("not a reflection-group series: residue differs from 1");

    std::sort(out.degrees.begin(), out.degrees.end());
    if (out.product() != group_order)
        throw ArithmeticError("degree product does not match the group order");
    if (out.sum() != reflection_count + rank)
        throw ArithmeticError("degree sum does not match the reflection count");
    return out;
}

Rational character_norm(const FiniteMatrixGroup& g) {
    const FieldDescriptor* d = g.pool()->descriptor();
    const ScalarPool& pool = *g.pool();
    TowerElement total = TowerElement::zero(d);
    for (std::size_t pos = 0; pos < g.size(); ++pos) {
        const auto ids = g.packed(pos);
        TowerElement t = TowerElement::zero(d);
        for (unsigned i = 0; i < g.dim(); ++i) t += pool.at(ids[i * g.dim() + i]);
        total += t * t.conjugate();
    }
    if (!total.is_rational())
        throw ArithmeticError("character norm is not rational: broken conjugation");
    Rational r = total.rational_value() / Rational(static_cast<unsigned long>(g.size()));
    r.canonicalize();
    return r;
}

}  // namespace wedge32
