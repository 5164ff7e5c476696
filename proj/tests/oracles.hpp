#pragma once

// Test-side oracles, independent of the library paths they check.

#include <array>
#include <cstdint>
#include <vector>

#include "wedge32/matrix.hpp"

namespace oracles {

// fixed seed for every randomized property suite in this repo
inline constexpr std::uint64_t kPropertySeed = 0x77ED6E32ULL;

struct SplitMix {
    std::uint64_t state;
    explicit SplitMix(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    // uniform in [lo, hi]
    long range(long lo, long hi) {
        return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
};

inline wedge32::Rational random_rational(SplitMix& rng, long num_bound = 9, long den_bound = 5) {
    wedge32::Rational q(rng.range(-num_bound, num_bound), rng.range(1, den_bound));
    q.canonicalize();
    return q;
}

inline wedge32::MatrixK random_rational_matrix(SplitMix& rng, unsigned n,
                                               const wedge32::FieldDescriptor* d) {
    wedge32::MatrixK m(n, n, d);
    for (unsigned r = 0; r < n; ++r)
        for (unsigned c = 0; c < n; ++c)
            m.at(r, c) = wedge32::TowerElement::from_rational(random_rational(rng), d);
    return m;
}

inline wedge32::TowerElement random_tower_element(SplitMix& rng,
                                                  const wedge32::FieldDescriptor* d) {
    wedge32::TowerElement acc = wedge32::TowerElement::zero(d);
    for (std::size_t i = 0; i < d->dim(); ++i) {
        acc += wedge32::TowerElement::basis_monomial(d, static_cast<unsigned>(i & 3),
                                                     static_cast<unsigned>(i >> 2))
                   .mul_rational(random_rational(rng, 6, 4));
    }
    return acc;
}

// sign of a 4-permutation given as array of distinct indices 0..3
inline int permutation_sign(const std::array<unsigned, 4>& p) {
    int s = 1;
    for (unsigned a = 0; a < 4; ++a)
        for (unsigned b = a + 1; b < 4; ++b)
            if (p[a] > p[b]) s = -s;
    return s;
}

// coefficient of e1^e2^e3^e4 in e_{i}^e_{j}^e_{k}^e_{l}; 0 on repeats
inline int four_form_coefficient(unsigned i, unsigned j, unsigned k, unsigned l) {
    const std::array<unsigned, 4> p{i, j, k, l};
    for (unsigned a = 0; a < 4; ++a)
        for (unsigned b = a + 1; b < 4; ++b)
            if (p[a] == p[b]) return 0;
    return permutation_sign(p);
}

// polynomial multiplication over the tower field, ascending coefficients
inline std::vector<wedge32::TowerElement> poly_mul(const std::vector<wedge32::TowerElement>& a,
                                                   const std::vector<wedge32::TowerElement>& b) {
    const auto* d = a[0].descriptor();
    std::vector<wedge32::TowerElement> out(a.size() + b.size() - 1,
                                           wedge32::TowerElement::zero(d));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

// (x - r) as ascending coefficients
inline std::vector<wedge32::TowerElement> linear_factor(const wedge32::TowerElement& r) {
    return {-r, wedge32::TowerElement::one(r.descriptor())};
}

}  // namespace oracles
