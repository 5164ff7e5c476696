#include "wedge32/tower.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <deque>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>

namespace wedge32 {

namespace {

// zeta^e for e in 0..6 expanded in the power basis 1, zeta, zeta^2, zeta^3
// using zeta^4 = zeta^2 - 1 (and hence zeta^6 = -1)
struct Red {
    struct {
        int exp;
        int coef;
    } t[2];
    int count;
};
constexpr Red kZetaReduction[7] = {
    {{{0, 1}, {0, 0}}, 1},   // 1
    {{{1, 1}, {0, 0}}, 1},   // zeta
    {{{2, 1}, {0, 0}}, 1},   // zeta^2
    {{{3, 1}, {0, 0}}, 1},   // zeta^3
    {{{2, 1}, {0, -1}}, 2},  // zeta^4 = zeta^2 - 1
    {{{3, 1}, {1, -1}}, 2},  // zeta^5 = zeta^3 - zeta
    {{{0, -1}, {0, 0}}, 1},  // zeta^6 = -1
};

// complex conjugation on the zeta block: row a = coordinates of conj(zeta^a)
constexpr int kConj[4][4] = {
    {1, 0, 0, 0},   // 1
    {0, 1, 0, -1},  // zeta - zeta^3
    {1, 0, -1, 0},  // 1 - zeta^2
    {0, 0, 0, -1},  // -zeta^3
};

struct Registry {
    std::mutex mutex;
    std::deque<std::unique_ptr<FieldDescriptor>> all;
};

Registry& registry() {
    static Registry reg;
    return reg;
}

void append_u32_be(std::string& out, std::uint32_t v) {
    out.push_back(static_cast<char>((v >> 24) & 0xff));
    out.push_back(static_cast<char>((v >> 16) & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
    out.push_back(static_cast<char>(v & 0xff));
}

void append_magnitude(std::string& out, const Int& v) {
    if (v == 0) {
        append_u32_be(out, 0);
        return;
    }
    std::size_t count = 0;
    // big-endian byte export of |v|
    std::vector<unsigned char> buf((mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8);
    mpz_export(buf.data(), &count, 1, 1, 1, 0, v.get_mpz_t());
    append_u32_be(out, static_cast<std::uint32_t>(count));
    out.append(reinterpret_cast<const char*>(buf.data()), count);
}

}  // namespace

FieldDescriptor::FieldDescriptor(std::vector<unsigned> primes, unsigned id)
    : radicals_(std::move(primes)), id_(id) {
    build_mul_table();
}

void FieldDescriptor::build_mul_table() {
    const std::size_t n = dim();
    const std::size_t k = radicals_.size();
    mul_table_.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        const unsigned a1 = static_cast<unsigned>(i & 3);
        const unsigned m1 = static_cast<unsigned>(i >> 2);
        for (std::size_t j = 0; j < n; ++j) {
            const unsigned a2 = static_cast<unsigned>(j & 3);
            const unsigned m2 = static_cast<unsigned>(j >> 2);
            std::int64_t coef = 1;
            for (std::size_t b = 0; b < k; ++b) {
                if ((m1 & m2) >> b & 1u) coef *= radicals_[b];
            }
            const unsigned m = m1 ^ m2;
            const Red& red = kZetaReduction[a1 + a2];
            PairTerms& pt = mul_table_[i * n + j];
            pt.count = static_cast<std::uint8_t>(red.count);
            for (int t = 0; t < red.count; ++t) {
                pt.t[t].index =
                    static_cast<std::uint16_t>(red.t[t].exp + 4 * m);
                pt.t[t].coef = coef * red.t[t].coef;
            }
        }
    }
}

std::span<const FieldDescriptor::MulTerm> FieldDescriptor::mul_terms(std::size_t i,
                                                                     std::size_t j) const {
    const PairTerms& pt = mul_table_[i * dim() + j];
    return {pt.t, pt.count};
}

const FieldDescriptor* FieldDescriptor::base() {
    static const FieldDescriptor* b = with_radicals({});
    return b;
}

namespace {
bool is_prime(unsigned p) {
    if (p < 2) return false;
    for (unsigned f = 2; f * f <= p; ++f)
        if (p % f == 0) return false;
    return true;
}
}  // namespace

const FieldDescriptor* FieldDescriptor::with_radicals(std::vector<unsigned> primes) {
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    for (unsigned p : primes) {
        if (p == 3) throw DomainError("sqrt(3) lies in the base field; 3 is not a radical");
        if (!is_prime(p)) throw DomainError("radicals must be primes");
    }
    Registry& reg = registry();
    std::lock_guard<std::mutex> lock(reg.mutex);
    for (const auto& d : reg.all) {
        if (d->radicals_ == primes) return d.get();
    }
    auto* raw = new FieldDescriptor(std::move(primes), static_cast<unsigned>(reg.all.size()));
    reg.all.emplace_back(raw);
    return raw;
}

const FieldDescriptor* FieldDescriptor::join(const FieldDescriptor* a, const FieldDescriptor* b) {
    if (a == b) return a;
    std::vector<unsigned> primes = a->radicals_;
    primes.insert(primes.end(), b->radicals_.begin(), b->radicals_.end());
    return with_radicals(std::move(primes));
}

bool FieldDescriptor::contains(const FieldDescriptor* other) const {
    return std::includes(radicals_.begin(), radicals_.end(), other->radicals_.begin(),
                         other->radicals_.end());
}

std::size_t FieldDescriptor::promote_index(const FieldDescriptor* sub, std::size_t idx) const {
    const unsigned a = static_cast<unsigned>(idx & 3);
    unsigned m_sub = static_cast<unsigned>(idx >> 2);
    unsigned m = 0;
    for (std::size_t b = 0; b < sub->radicals_.size(); ++b) {
        if (m_sub >> b & 1u) {
            auto it = std::find(radicals_.begin(), radicals_.end(), sub->radicals_[b]);
            if (it == radicals_.end())
                throw DomainError("descriptor promotion: radical not present in target");
            m |= 1u << (it - radicals_.begin());
        }
    }
    return a + 4 * m;
}

// ---------------------------------------------------------------------------

TowerElement::TowerElement() : TowerElement(FieldDescriptor::base(), {}, 1) {
    num_.assign(desc_->dim(), Int(0));
}

TowerElement::TowerElement(const FieldDescriptor* d, std::vector<Int> num, Int den)
    : desc_(d), num_(std::move(num)), den_(std::move(den)) {}

TowerElement TowerElement::zero(const FieldDescriptor* d) {
    return TowerElement(d, std::vector<Int>(d->dim(), Int(0)), Int(1));
}

TowerElement TowerElement::one(const FieldDescriptor* d) {
    TowerElement e = zero(d);
    e.num_[0] = 1;
    return e;
}

TowerElement TowerElement::from_rational(const Rational& q, const FieldDescriptor* d) {
    Rational c = q;
    c.canonicalize();
    TowerElement e = zero(d);
    e.num_[0] = c.get_num();
    e.den_ = c.get_den();
    return e;
}

TowerElement TowerElement::from_int(long v, const FieldDescriptor* d) {
    TowerElement e = zero(d);
    e.num_[0] = v;
    return e;
}

TowerElement TowerElement::basis_monomial(const FieldDescriptor* d, unsigned zeta_pow,
                                          unsigned radical_mask) {
    TowerElement e = zero(d);
    e.num_.at(zeta_pow + 4 * radical_mask) = 1;
    return e;
}

TowerElement TowerElement::zeta12(const FieldDescriptor* d) { return basis_monomial(d, 1, 0); }
TowerElement TowerElement::zeta6(const FieldDescriptor* d) { return basis_monomial(d, 2, 0); }
TowerElement TowerElement::imaginary_unit(const FieldDescriptor* d) {
    return basis_monomial(d, 3, 0);
}
TowerElement TowerElement::cube_root_of_unity(const FieldDescriptor* d) {
    TowerElement e = zero(d);
    e.num_[2] = 1;
    e.num_[0] = -1;
    return e;
}
TowerElement TowerElement::sqrt3(const FieldDescriptor* d) {
    TowerElement e = zero(d);
    e.num_[1] = 2;
    e.num_[3] = -1;
    return e;
}

void TowerElement::normalize() {
    bool all_zero = true;
    for (const Int& n : num_) {
        if (n != 0) {
            all_zero = false;
            break;
        }
    }
    if (all_zero) {
        den_ = 1;
        return;
    }
    Int g = den_;
    for (const Int& n : num_) {
        if (n == 0) continue;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
        if (g == 1) return;
    }
    if (g > 1) {
        for (Int& n : num_) {
            if (n != 0) mpz_divexact(n.get_mpz_t(), n.get_mpz_t(), g.get_mpz_t());
        }
        mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
    }
}

void TowerElement::reconcile(TowerElement& a, TowerElement& b) {
    if (a.desc_ == b.desc_) return;
    if (a.desc_->contains(b.desc_)) {
        b = b.promoted_to(a.desc_);
    } else if (b.desc_->contains(a.desc_)) {
        a = a.promoted_to(b.desc_);
    } else {
        throw DomainError("tower elements live in incomparable descriptors");
    }
}

TowerElement TowerElement::promoted_to(const FieldDescriptor* d) const {
    if (d == desc_) return *this;
    if (!d->contains(desc_)) throw DomainError("cannot promote to a non-superset descriptor");
    TowerElement out = zero(d);
    for (std::size_t i = 0; i < num_.size(); ++i) {
        if (num_[i] != 0) out.num_[d->promote_index(desc_, i)] = num_[i];
    }
    out.den_ = den_;
    return out;
}

bool TowerElement::lies_in(const FieldDescriptor* d) const {
    if (d == desc_) return true;
    if (!desc_->contains(d)) return false;
    std::vector<bool> reachable(desc_->dim(), false);
    for (std::size_t i = 0; i < d->dim(); ++i) reachable[desc_->promote_index(d, i)] = true;
    for (std::size_t i = 0; i < num_.size(); ++i)
        if (num_[i] != 0 && !reachable[i]) return false;
    return true;
}

TowerElement TowerElement::restricted_to(const FieldDescriptor* d) const {
    if (d == desc_) return *this;
    if (!desc_->contains(d)) throw DomainError("restriction target is not a subfield");
    TowerElement out = zero(d);
    std::vector<bool> assigned(desc_->dim(), false);
    for (std::size_t i = 0; i < d->dim(); ++i) {
        const std::size_t src = desc_->promote_index(d, i);
        out.num_[i] = num_[src];
        assigned[src] = true;
    }
    for (std::size_t i = 0; i < num_.size(); ++i)
        if (num_[i] != 0 && !assigned[i])
            throw DomainError("element does not lie in the smaller field");
    out.den_ = den_;
    return out;
}

TowerElement TowerElement::operator+(const TowerElement& o) const {
    TowerElement a = *this, b = o;
    reconcile(a, b);
    const std::size_t n = a.num_.size();
    std::vector<Int> num(n);
    if (a.den_ == b.den_) {
        for (std::size_t i = 0; i < n; ++i) num[i] = a.num_[i] + b.num_[i];
        TowerElement out(a.desc_, std::move(num), a.den_);
        if (out.den_ != 1) out.normalize();
        return out;
    }
    Int t;
    for (std::size_t i = 0; i < n; ++i) {
        num[i] = a.num_[i] * b.den_;
        t = b.num_[i] * a.den_;
        num[i] += t;
    }
    TowerElement out(a.desc_, std::move(num), a.den_ * b.den_);
    out.normalize();
    return out;
}

TowerElement TowerElement::operator-(const TowerElement& o) const { return *this + (-o); }

TowerElement TowerElement::operator-() const {
    TowerElement out = *this;
    for (Int& n : out.num_) n = -n;
    return out;
}

TowerElement TowerElement::operator*(const TowerElement& o) const {
    TowerElement a = *this, b = o;
    reconcile(a, b);
    TowerElement out = zero(a.desc_);
    out.accumulate_product(a, b);
    out.den_ = a.den_ * b.den_;
    out.normalize();
    return out;
}

void TowerElement::accumulate_product(const TowerElement& a, const TowerElement& b) {
    // adds the numerator convolution of a and b into this->num_; the caller
    // owns denominator bookkeeping
    const FieldDescriptor* d = desc_;
    const std::size_t n = num_.size();
    Int prod;
    for (std::size_t i = 0; i < n; ++i) {
        if (a.num_[i] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (b.num_[j] == 0) continue;
            prod = a.num_[i] * b.num_[j];
            for (const auto& term : d->mul_terms(i, j)) {
                if (term.coef == 1) {
                    num_[term.index] += prod;
                } else if (term.coef == -1) {
                    num_[term.index] -= prod;
                } else {
                    num_[term.index] += prod * static_cast<long>(term.coef);
                }
            }
        }
    }
}

TowerElement TowerElement::mul_int_raw(const Int& f) const {
    TowerElement out = *this;
    for (Int& n : out.num_) n *= f;
    return out;
}

void TowerElement::add_raw(const TowerElement& o) {
    for (std::size_t i = 0; i < num_.size(); ++i) num_[i] += o.num_[i];
}

TowerElement TowerElement::with_denominator(Int den) const {
    TowerElement out(desc_, num_, std::move(den));
    out.normalize();
    return out;
}

TowerElement& TowerElement::operator+=(const TowerElement& o) {
    *this = *this + o;
    return *this;
}
TowerElement& TowerElement::operator-=(const TowerElement& o) {
    *this = *this - o;
    return *this;
}
TowerElement& TowerElement::operator*=(const TowerElement& o) {
    *this = *this * o;
    return *this;
}

TowerElement TowerElement::mul_rational(const Rational& q) const {
    Rational c = q;
    c.canonicalize();
    TowerElement out = *this;
    for (Int& n : out.num_) n *= c.get_num();
    out.den_ *= c.get_den();
    out.normalize();
    return out;
}

TowerElement TowerElement::div_int(long v) const {
    if (v == 0) throw DomainError("division by zero");
    return mul_rational(Rational(1, v));
}

bool TowerElement::operator==(const TowerElement& o) const {
    if (desc_ != o.desc_) {
        TowerElement a = *this, b = o;
        reconcile(a, b);
        return a == b;
    }
    return den_ == o.den_ && num_ == o.num_;
}

bool TowerElement::is_zero() const {
    for (const Int& n : num_)
        if (n != 0) return false;
    return true;
}

bool TowerElement::is_one() const {
    if (den_ != 1 || num_[0] != 1) return false;
    for (std::size_t i = 1; i < num_.size(); ++i)
        if (num_[i] != 0) return false;
    return true;
}

bool TowerElement::is_rational() const {
    for (std::size_t i = 1; i < num_.size(); ++i)
        if (num_[i] != 0) return false;
    return true;
}

Rational TowerElement::rational_value() const {
    if (!is_rational()) throw DomainError("element is not rational");
    Rational q(num_[0], den_);
    q.canonicalize();
    return q;
}

TowerElement TowerElement::inverse() const {
    if (is_zero()) throw DomainError("inversion of zero");
    const std::size_t n = desc_->dim();
    // multiplication-by-(*this) matrix over Q, columns indexed by basis
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n + 1, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) {
        if (num_[i] == 0) continue;
        for (std::size_t col = 0; col < n; ++col) {
            for (const auto& term : desc_->mul_terms(i, col)) {
                Rational add(num_[i] * term.coef, den_);
                add.canonicalize();
                m[term.index][col] += add;
            }
        }
    }
    m[0][n] = 1;  // solve M v = e0
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n)
            throw RadicalDependenceError(
                "nonzero element has singular multiplication matrix: dependent radicals");
        std::swap(m[col], m[piv]);
        const Rational pv = m[col][col];
        for (std::size_t c = col; c <= n; ++c) m[col][c] /= pv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || m[r][col] == 0) continue;
            const Rational f = m[r][col];
            for (std::size_t c = col; c <= n; ++c) m[r][c] -= f * m[col][c];
        }
    }
    Int den(1);
    for (std::size_t i = 0; i < n; ++i) den = lcm(den, Int(m[i][n].get_den()));
    std::vector<Int> num(n);
    for (std::size_t i = 0; i < n; ++i)
        num[i] = Int(m[i][n].get_num()) * (den / Int(m[i][n].get_den()));
    TowerElement out(desc_, std::move(num), std::move(den));
    out.normalize();
    return out;
}

TowerElement TowerElement::conjugate() const {
    TowerElement out = zero(desc_);
    const std::size_t blocks = desc_->dim() / 4;
    for (std::size_t m = 0; m < blocks; ++m) {
        for (unsigned a = 0; a < 4; ++a) {
            const Int& v = num_[a + 4 * m];
            if (v == 0) continue;
            for (unsigned b = 0; b < 4; ++b) {
                if (kConj[a][b] == 1)
                    out.num_[b + 4 * m] += v;
                else if (kConj[a][b] == -1)
                    out.num_[b + 4 * m] -= v;
            }
        }
    }
    out.den_ = den_;
    out.normalize();
    return out;
}

std::string TowerElement::canonical_key() const {
    std::string out;
    out.reserve(8 + num_.size() * 12);
    append_u32_be(out, desc_->id());
    Int g, n, d;
    for (const Int& coord : num_) {
        if (coord == 0) {
            out.push_back('\x00');
            append_u32_be(out, 0);
            append_u32_be(out, 1);
            out.push_back('\x01');
            continue;
        }
        mpz_gcd(g.get_mpz_t(), coord.get_mpz_t(), den_.get_mpz_t());
        n = coord / g;
        d = den_ / g;
        out.push_back(n > 0 ? '\x01' : '\x02');
        append_magnitude(out, n > 0 ? n : Int(-n));
        append_magnitude(out, d);
    }
    return out;
}

std::complex<double> TowerElement::approx() const {
    using std::numbers::pi;
    const std::size_t k = desc_->radicals().size();
    std::complex<double> acc(0.0, 0.0);
    const double den = den_.get_d();
    for (std::size_t i = 0; i < num_.size(); ++i) {
        if (num_[i] == 0) continue;
        const unsigned a = static_cast<unsigned>(i & 3);
        const unsigned m = static_cast<unsigned>(i >> 2);
        double rad = 1.0;
        for (std::size_t b = 0; b < k; ++b) {
            if (m >> b & 1u) rad *= std::sqrt(static_cast<double>(desc_->radicals()[b]));
        }
        const std::complex<double> zp(std::cos(pi * a / 6.0), std::sin(pi * a / 6.0));
        acc += (num_[i].get_d() / den) * rad * zp;
    }
    return acc;
}

std::string TowerElement::to_text() const {
    std::ostringstream os;
    Int g, n, d;
    for (std::size_t i = 0; i < num_.size(); ++i) {
        if (i) os << ',';
        if (num_[i] == 0) {
            os << "0/1";
            continue;
        }
        mpz_gcd(g.get_mpz_t(), num_[i].get_mpz_t(), den_.get_mpz_t());
        n = num_[i] / g;
        d = den_ / g;
        os << n.get_str() << '/' << d.get_str();
    }
    return os.str();
}

TowerElement TowerElement::from_text(const FieldDescriptor* d, const std::string& text) {
    std::vector<Rational> coords;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        std::string tok = text.substr(pos, comma - pos);
        coords.emplace_back(tok);
        if (coords.back().get_den() == 0) throw DomainError("zero denominator in element text");
        coords.back().canonicalize();
        pos = comma + 1;
        if (comma == text.size()) break;
    }
    if (coords.size() != d->dim())
        throw DomainError("tower element text has wrong coordinate count");
    Int den(1);
    for (const Rational& q : coords) den = lcm(den, Int(q.get_den()));
    std::vector<Int> num(coords.size());
    for (std::size_t i = 0; i < coords.size(); ++i)
        num[i] = Int(coords[i].get_num()) * (den / Int(coords[i].get_den()));
    TowerElement out(d, std::move(num), std::move(den));
    out.normalize();
    return out;
}

// ---------------------------------------------------------------------------

AdjoinResult adjoin_sqrt(const FieldDescriptor* d, const Int& s) {
    if (s < 1) throw DomainError("adjoin_sqrt expects a positive integer");
    Int rest = s, square(1);
    int three_exp = 0;
    std::vector<unsigned> primes;
    Int f(2);
    while (f * f <= rest) {
        int e = 0;
        while (mpz_divisible_p(rest.get_mpz_t(), f.get_mpz_t())) {
            mpz_divexact(rest.get_mpz_t(), rest.get_mpz_t(), f.get_mpz_t());
            ++e;
        }
        for (int i = 0; i < e / 2; ++i) square *= f;
        if (e % 2) {
            if (f == 3)
                three_exp = 1;
            else
                primes.push_back(static_cast<unsigned>(f.get_ui()));
        }
        f += (f == 2) ? 1 : 2;
    }
    if (rest > 1) {
        if (rest == 3) {
            three_exp = 1;
        } else {
            if (!rest.fits_uint_p()) throw DomainError("radical prime too large to adjoin");
            primes.push_back(static_cast<unsigned>(rest.get_ui()));
        }
    }
    std::vector<unsigned> all = d->radicals();
    all.insert(all.end(), primes.begin(), primes.end());
    const FieldDescriptor* nd = FieldDescriptor::with_radicals(std::move(all));

    unsigned mask = 0;
    for (unsigned p : primes) {
        auto it = std::find(nd->radicals().begin(), nd->radicals().end(), p);
        mask |= 1u << (it - nd->radicals().begin());
    }
    TowerElement r = TowerElement::basis_monomial(nd, 0, mask);
    r = r.mul_rational(Rational(square));
    if (three_exp) r = r * TowerElement::sqrt3(nd);
    return {nd, std::move(r)};
}

AdjoinResult adjoin_sqrt_rational(const FieldDescriptor* d, const Rational& q) {
    if (q == 0) throw DomainError("adjoin_sqrt_rational expects nonzero input");
    Rational c = q;
    c.canonicalize();
    const bool negative = c < 0;
    Int u = negative ? Int(-c.get_num()) : Int(c.get_num());
    Int v = c.get_den();
    // sqrt(u/v) = sqrt(u*v)/v
    AdjoinResult res = adjoin_sqrt(d, u * v);
    res.root = res.root.mul_rational(Rational(1, v));
    if (negative) res.root = res.root * TowerElement::imaginary_unit(res.descriptor);
    return res;
}

}  // namespace wedge32
