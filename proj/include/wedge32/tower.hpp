#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wedge32/errors.hpp"

namespace wedge32 {

using Int = mpz_class;
using Rational = mpq_class;

/// Describes the coefficient field K = Q(zeta12)(sqrt(p1), ..., sqrt(pk)).
///
/// The base field is always Q(zeta12) with zeta12 a root of
/// Phi12 = x^4 - x^2 + 1; sqrt(3) = 2*zeta - zeta^3 and i = zeta^3 already
/// live there, so 3 is never adjoined as a radical. Descriptors are
/// interned: pointer equality is descriptor equality.
class FieldDescriptor {
  public:
    static const FieldDescriptor* base();
    /// Interned descriptor for a set of radical primes (sorted, distinct, no 3).
    static const FieldDescriptor* with_radicals(std::vector<unsigned> primes);
    static const FieldDescriptor* join(const FieldDescriptor* a, const FieldDescriptor* b);

    unsigned id() const { return id_; }
    const std::vector<unsigned>& radicals() const { return radicals_; }
    std::size_t dim() const { return std::size_t{4} << radicals_.size(); }

    /// true if other's radicals are a subset of ours
    bool contains(const FieldDescriptor* other) const;

    struct MulTerm {
        std::uint16_t index;
        std::int64_t coef;
    };
    /// Expansion of basis_i * basis_j in the basis (at most two terms).
    std::span<const MulTerm> mul_terms(std::size_t i, std::size_t j) const;

    /// Coordinate index of this descriptor corresponding to index `idx` of a
    /// sub-descriptor.
    std::size_t promote_index(const FieldDescriptor* sub, std::size_t idx) const;

    FieldDescriptor(const FieldDescriptor&) = delete;
    FieldDescriptor& operator=(const FieldDescriptor&) = delete;

  private:
    explicit FieldDescriptor(std::vector<unsigned> primes, unsigned id);
    void build_mul_table();

    std::vector<unsigned> radicals_;
    unsigned id_;
    struct PairTerms {
        MulTerm t[2];
        std::uint8_t count;
    };
    std::vector<PairTerms> mul_table_;  // dim*dim entries
};

/// An exact scalar of the tower field, stored as dim() integer coordinates
/// over a single positive denominator, fully reduced. Coordinates refer to
/// the basis {zeta^a * prod sqrt(p_i)^{b_i} : 0 <= a <= 3, b_i in {0,1}}
/// with index a + 4*(radical bitmask). Values are immutable in spirit: all
/// operations return fresh elements and are safe to run concurrently.
class TowerElement {
  public:
    TowerElement();  // zero over the base descriptor

    static TowerElement zero(const FieldDescriptor* d);
    static TowerElement one(const FieldDescriptor* d);
    static TowerElement from_rational(const Rational& q, const FieldDescriptor* d);
    static TowerElement from_int(long v, const FieldDescriptor* d);
    static TowerElement basis_monomial(const FieldDescriptor* d, unsigned zeta_pow,
                                       unsigned radical_mask);

    // distinguished scalars (under the embedding zeta |-> e^{i pi/6})
    static TowerElement zeta12(const FieldDescriptor* d);
    static TowerElement zeta6(const FieldDescriptor* d);            // zeta^2
    static TowerElement imaginary_unit(const FieldDescriptor* d);   // zeta^3
    static TowerElement cube_root_of_unity(const FieldDescriptor* d);  // zeta^2 - 1
    static TowerElement sqrt3(const FieldDescriptor* d);            // 2 zeta - zeta^3

    const FieldDescriptor* descriptor() const { return desc_; }

    TowerElement operator+(const TowerElement& o) const;
    TowerElement operator-(const TowerElement& o) const;
    TowerElement operator*(const TowerElement& o) const;
    TowerElement operator-() const;
    TowerElement& operator+=(const TowerElement& o);
    TowerElement& operator-=(const TowerElement& o);
    TowerElement& operator*=(const TowerElement& o);

    TowerElement mul_rational(const Rational& q) const;
    TowerElement div_int(long v) const;

    /// Multiplicative inverse. DomainError on zero. A nonzero element
    /// without an inverse means a dependent radical set and raises
    /// RadicalDependenceError; nothing may continue past that.
    TowerElement inverse() const;

    /// Complex conjugation: fixes rationals and every sqrt(p), sends
    /// zeta |-> zeta^-1 = zeta - zeta^3.
    TowerElement conjugate() const;

    bool operator==(const TowerElement& o) const;
    bool operator!=(const TowerElement& o) const { return !(*this == o); }

    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const;  // only coordinate 0 nonzero (or zero)
    Rational rational_value() const;

    TowerElement promoted_to(const FieldDescriptor* d) const;
    /// Inverse of promotion; DomainError when a coordinate outside the
    /// smaller field is nonzero.
    TowerElement restricted_to(const FieldDescriptor* d) const;
    bool lies_in(const FieldDescriptor* d) const;

    /// Injective byte encoding (per descriptor): descriptor id, then each
    /// coordinate as sign byte + length-prefixed big-endian numerator and
    /// denominator magnitudes.
    std::string canonical_key() const;

    /// Machine-precision embedding, zeta |-> e^{i pi/6}, sqrt(p) positive.
    /// Diagnostic only; never feeds back into exact computation.
    std::complex<double> approx() const;

    /// Decimal text form: "num/den" per coordinate, comma separated.
    std::string to_text() const;
    static TowerElement from_text(const FieldDescriptor* d, const std::string& text);

    // raw accumulation primitives for dot products; the accumulator is not
    // canonical until finish_accumulation() / with_denominator() runs
    void accumulate_product(const TowerElement& a, const TowerElement& b);
    void finish_accumulation() { normalize(); }
    TowerElement mul_int_raw(const Int& f) const;  // scales numerators only
    void add_raw(const TowerElement& o);           // adds numerators only
    TowerElement with_denominator(Int den) const;  // attach denominator, reduce

    const std::vector<Int>& raw_numerators() const { return num_; }
    const Int& raw_denominator() const { return den_; }

  private:
    TowerElement(const FieldDescriptor* d, std::vector<Int> num, Int den);
    void normalize();
    static void reconcile(TowerElement& a, TowerElement& b);

    const FieldDescriptor* desc_;
    std::vector<Int> num_;
    Int den_;
};

struct AdjoinResult {
    const FieldDescriptor* descriptor;
    TowerElement root;
};

/// Square root of a positive integer. Factors s as square * 3^e * prod p_i;
/// the square part stays rational, sqrt(3) is expressed in the base field,
/// and each remaining prime is adjoined as a radical if absent.
AdjoinResult adjoin_sqrt(const FieldDescriptor* d, const Int& s);

/// Square root of a nonzero rational; negative values pick up the
/// imaginary unit (which is a base-field element).
AdjoinResult adjoin_sqrt_rational(const FieldDescriptor* d, const Rational& q);

}  // namespace wedge32
