#include "wedge32/matrix.hpp"

#include <sstream>

namespace wedge32 {

MatrixK::MatrixK(unsigned rows, unsigned cols, const FieldDescriptor* d)
    : rows_(rows), cols_(cols), desc_(d),
      e_(std::size_t(rows) * cols, TowerElement::zero(d)) {}

MatrixK MatrixK::identity(unsigned n, const FieldDescriptor* d) {
    MatrixK m(n, n, d);
    for (unsigned i = 0; i < n; ++i) m.at(i, i) = TowerElement::one(d);
    return m;
}

MatrixK MatrixK::from_int_rows(const std::vector<std::vector<long>>& rows,
                               const FieldDescriptor* d) {
    const unsigned r = static_cast<unsigned>(rows.size());
    const unsigned c = r ? static_cast<unsigned>(rows[0].size()) : 0;
    MatrixK m(r, c, d);
    for (unsigned i = 0; i < r; ++i) {
        if (rows[i].size() != c) throw DomainError("ragged integer matrix");
        for (unsigned j = 0; j < c; ++j) m.at(i, j) = TowerElement::from_int(rows[i][j], d);
    }
    return m;
}

MatrixK MatrixK::scalar(unsigned n, const TowerElement& s) {
    MatrixK m(n, n, s.descriptor());
    for (unsigned i = 0; i < n; ++i) m.at(i, i) = s;
    return m;
}

MatrixK MatrixK::promoted_to(const FieldDescriptor* d) const {
    if (d == desc_) return *this;
    MatrixK out(rows_, cols_, d);
    for (std::size_t i = 0; i < e_.size(); ++i) out.e_[i] = e_[i].promoted_to(d);
    return out;
}

MatrixK MatrixK::restricted_to(const FieldDescriptor* d) const {
    if (d == desc_) return *this;
    MatrixK out(rows_, cols_, d);
    for (std::size_t i = 0; i < e_.size(); ++i) out.e_[i] = e_[i].restricted_to(d);
    return out;
}

bool MatrixK::lies_in(const FieldDescriptor* d) const {
    for (const TowerElement& x : e_)
        if (!x.lies_in(d)) return false;
    return true;
}

namespace {
void reconcile(MatrixK& a, MatrixK& b) {
    if (a.descriptor() == b.descriptor()) return;
    const FieldDescriptor* d = FieldDescriptor::join(a.descriptor(), b.descriptor());
    a = a.promoted_to(d);
    b = b.promoted_to(d);
}
}  // namespace

MatrixK MatrixK::operator*(const MatrixK& o) const { return matmul(*this, o); }

MatrixK matmul(const MatrixK& a0, const MatrixK& b0) {
    MatrixK a = a0, b = b0;
    reconcile(a, b);
    if (a.cols() != b.rows()) throw DomainError("matmul shape mismatch");
    MatrixK out(a.rows(), b.cols(), a.descriptor());
    for (unsigned r = 0; r < a.rows(); ++r) {
        for (unsigned c = 0; c < b.cols(); ++c) {
            // accumulate over a common denominator, normalize once
            TowerElement acc = TowerElement::zero(a.descriptor());
            Int den(1);
            bool any = false;
            for (unsigned k = 0; k < a.cols(); ++k) {
                const TowerElement& x = a.at(r, k);
                const TowerElement& y = b.at(k, c);
                if (x.is_zero() || y.is_zero()) continue;
                Int term_den = x.raw_denominator() * y.raw_denominator();
                if (!any) {
                    acc.accumulate_product(x, y);
                    den = term_den;
                    any = true;
                } else if (term_den == den) {
                    acc.accumulate_product(x, y);
                } else {
                    // rescale to lcm
                    Int g = gcd(den, term_den);
                    Int lf = term_den / g;  // multiply existing acc by this
                    Int rf = den / g;       // multiply new term by this
                    TowerElement scaled = TowerElement::zero(a.descriptor());
                    scaled.accumulate_product(x, y);
                    acc = acc.mul_int_raw(lf);
                    acc.add_raw(scaled.mul_int_raw(rf));
                    den = den * lf;
                }
            }
            if (any) out.at(r, c) = acc.with_denominator(den);
        }
    }
    return out;
}

MatrixK MatrixK::operator+(const MatrixK& o0) const {
    MatrixK a = *this, b = o0;
    reconcile(a, b);
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DomainError("matrix add shape mismatch");
    MatrixK out(a.rows_, a.cols_, a.desc_);
    for (std::size_t i = 0; i < a.e_.size(); ++i) out.e_[i] = a.e_[i] + b.e_[i];
    return out;
}

MatrixK MatrixK::operator-(const MatrixK& o0) const {
    MatrixK a = *this, b = o0;
    reconcile(a, b);
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DomainError("matrix sub shape mismatch");
    MatrixK out(a.rows_, a.cols_, a.desc_);
    for (std::size_t i = 0; i < a.e_.size(); ++i) out.e_[i] = a.e_[i] - b.e_[i];
    return out;
}

MatrixK MatrixK::operator-() const {
    MatrixK out(rows_, cols_, desc_);
    for (std::size_t i = 0; i < e_.size(); ++i) out.e_[i] = -e_[i];
    return out;
}

MatrixK MatrixK::scaled(const TowerElement& s) const {
    MatrixK self = *this;
    TowerElement sc = s;
    if (sc.descriptor() != desc_) {
        const FieldDescriptor* d = FieldDescriptor::join(desc_, sc.descriptor());
        self = self.promoted_to(d);
        sc = sc.promoted_to(d);
    }
    MatrixK out(self.rows_, self.cols_, self.desc_);
    for (std::size_t i = 0; i < self.e_.size(); ++i) out.e_[i] = self.e_[i] * sc;
    return out;
}

MatrixK MatrixK::transpose() const {
    MatrixK out(cols_, rows_, desc_);
    for (unsigned r = 0; r < rows_; ++r)
        for (unsigned c = 0; c < cols_; ++c) out.at(c, r) = at(r, c);
    return out;
}

bool MatrixK::operator==(const MatrixK& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    if (desc_ != o.desc_) {
        MatrixK a = *this, b = o;
        reconcile(a, b);
        return a == b;
    }
    return e_ == o.e_;
}

bool MatrixK::is_identity() const {
    if (rows_ != cols_) return false;
    for (unsigned r = 0; r < rows_; ++r)
        for (unsigned c = 0; c < cols_; ++c) {
            if (r == c ? !at(r, c).is_one() : !at(r, c).is_zero()) return false;
        }
    return true;
}

bool MatrixK::is_zero() const {
    for (const TowerElement& x : e_)
        if (!x.is_zero()) return false;
    return true;
}

TowerElement MatrixK::trace() const {
    TowerElement t = TowerElement::zero(desc_);
    for (unsigned i = 0; i < rows_; ++i) t += at(i, i);
    return t;
}

std::string MatrixK::canonical_key() const {
    std::string out;
    out.push_back(static_cast<char>(rows_));
    out.push_back(static_cast<char>(cols_));
    for (const TowerElement& x : e_) {
        const std::string k = x.canonical_key();
        out.append(k);
    }
    return out;
}

std::vector<TowerElement> matvec(const MatrixK& m, std::span<const TowerElement> v) {
    if (m.cols() != v.size()) throw DomainError("matvec shape mismatch");
    std::vector<TowerElement> out;
    out.reserve(m.rows());
    for (unsigned r = 0; r < m.rows(); ++r) {
        TowerElement acc = TowerElement::zero(m.descriptor());
        for (unsigned c = 0; c < m.cols(); ++c) {
            if (m.at(r, c).is_zero() || v[c].is_zero()) continue;
            acc += m.at(r, c) * v[c];
        }
        out.push_back(std::move(acc));
    }
    return out;
}

CharPoly char_poly(const MatrixK& m) {
    if (m.rows() != m.cols()) throw DomainError("char_poly of non-square matrix");
    const unsigned n = m.rows();
    const FieldDescriptor* d = m.descriptor();
    CharPoly p;
    p.coeffs.assign(n + 1, TowerElement::zero(d));
    p.coeffs[n] = TowerElement::one(d);
    if (n == 0) return p;
    MatrixK work = m;
    TowerElement ck = -work.trace();
    p.coeffs[n - 1] = ck;
    for (unsigned k = 2; k <= n; ++k) {
        MatrixK shifted = work;
        for (unsigned i = 0; i < n; ++i) shifted.at(i, i) += ck;
        work = matmul(m, shifted);
        ck = (-work.trace()).div_int(static_cast<long>(k));
        p.coeffs[n - k] = ck;
    }
    return p;
}

std::string CharPoly::key() const {
    std::string out;
    for (const TowerElement& c : coeffs) out.append(c.canonical_key());
    return out;
}

MatrixK CharPoly::evaluate(const MatrixK& m) const {
    const unsigned n = m.rows();
    MatrixK acc = MatrixK::scalar(n, coeffs.back());
    for (std::size_t i = coeffs.size() - 1; i-- > 0;) {
        acc = matmul(acc, m);
        for (unsigned r = 0; r < n; ++r) acc.at(r, r) += coeffs[i];
    }
    return acc;
}

bool CharPoly::rational_coeffs() const {
    for (const TowerElement& c : coeffs)
        if (!c.is_rational()) return false;
    return true;
}

TowerElement det(const MatrixK& m) {
    if (m.rows() != m.cols()) throw DomainError("det of non-square matrix");
    const CharPoly p = char_poly(m);
    TowerElement d0 = p.coeffs[0];
    return (m.rows() % 2) ? -d0 : d0;
}

MatrixK inverse(const MatrixK& m) {
    if (m.rows() != m.cols()) throw DomainError("inverse of non-square matrix");
    const unsigned n = m.rows();
    const FieldDescriptor* d = m.descriptor();
    MatrixK a = m;
    MatrixK inv = MatrixK::identity(n, d);
    for (unsigned col = 0; col < n; ++col) {
        unsigned piv = col;
        while (piv < n && a.at(piv, col).is_zero()) ++piv;
        if (piv == n) throw DomainError("matrix is singular");
        if (piv != col) {
            for (unsigned c = 0; c < n; ++c) {
                std::swap(a.at(col, c), a.at(piv, c));
                std::swap(inv.at(col, c), inv.at(piv, c));
            }
        }
        const TowerElement pinv = a.at(col, col).inverse();
        for (unsigned c = 0; c < n; ++c) {
            a.at(col, c) *= pinv;
            inv.at(col, c) *= pinv;
        }
        for (unsigned r = 0; r < n; ++r) {
            if (r == col || a.at(r, col).is_zero()) continue;
            const TowerElement f = a.at(r, col);
            for (unsigned c = 0; c < n; ++c) {
                a.at(r, c) -= f * a.at(col, c);
                inv.at(r, c) -= f * inv.at(col, c);
            }
        }
    }
    return inv;
}

MatrixK inverse_via_charpoly(const MatrixK& m) {
    const unsigned n = m.rows();
    const CharPoly p = char_poly(m);
    if (p.coeffs[0].is_zero()) throw DomainError("matrix is singular");
    // m * (m^{n-1} + c_{n-1} m^{n-2} + ... + c_1 I) = -c_0 I
    MatrixK acc = MatrixK::scalar(n, p.coeffs[n]);  // = I
    for (unsigned i = n - 1; i >= 1; --i) {
        acc = matmul(acc, m);
        for (unsigned r = 0; r < n; ++r) acc.at(r, r) += p.coeffs[i];
    }
    const TowerElement scale = -(p.coeffs[0].inverse());
    return acc.scaled(scale);
}

namespace {
// row echelon on a copy; returns pivot column list and the reduced rows
struct Echelon {
    std::vector<std::vector<TowerElement>> rows;
    std::vector<unsigned> pivot_cols;
};

Echelon echelonize(const MatrixK& m) {
    const unsigned nr = m.rows(), nc = m.cols();
    std::vector<std::vector<TowerElement>> rows(nr);
    for (unsigned r = 0; r < nr; ++r) {
        rows[r].reserve(nc);
        for (unsigned c = 0; c < nc; ++c) rows[r].push_back(m.at(r, c));
    }
    Echelon out;
    unsigned rank_row = 0;
    for (unsigned col = 0; col < nc && rank_row < nr; ++col) {
        unsigned piv = rank_row;
        while (piv < nr && rows[piv][col].is_zero()) ++piv;
        if (piv == nr) continue;
        std::swap(rows[rank_row], rows[piv]);
        const TowerElement pinv = rows[rank_row][col].inverse();
        for (unsigned c = col; c < nc; ++c) rows[rank_row][c] *= pinv;
        for (unsigned r = 0; r < nr; ++r) {
            if (r == rank_row || rows[r][col].is_zero()) continue;
            const TowerElement f = rows[r][col];
            for (unsigned c = col; c < nc; ++c) rows[r][c] -= f * rows[rank_row][c];
        }
        out.pivot_cols.push_back(col);
        ++rank_row;
    }
    rows.resize(rank_row);
    out.rows = std::move(rows);
    return out;
}
}  // namespace

unsigned rank(const MatrixK& m) { return static_cast<unsigned>(echelonize(m).pivot_cols.size()); }

std::vector<std::vector<TowerElement>> kernel_basis(const MatrixK& m) {
    const Echelon ech = echelonize(m);
    const unsigned nc = m.cols();
    const FieldDescriptor* d = m.descriptor();
    std::vector<bool> is_pivot(nc, false);
    for (unsigned c : ech.pivot_cols) is_pivot[c] = true;
    std::vector<std::vector<TowerElement>> basis;
    for (unsigned fc = 0; fc < nc; ++fc) {
        if (is_pivot[fc]) continue;
        std::vector<TowerElement> v(nc, TowerElement::zero(d));
        v[fc] = TowerElement::one(d);
        for (std::size_t i = 0; i < ech.pivot_cols.size(); ++i)
            v[ech.pivot_cols[i]] = -ech.rows[i][fc];
        basis.push_back(std::move(v));
    }
    return basis;
}

bool is_rank_at_most_one(const MatrixK& m) {
    for (unsigned r1 = 0; r1 < m.rows(); ++r1)
        for (unsigned r2 = r1 + 1; r2 < m.rows(); ++r2)
            for (unsigned c1 = 0; c1 < m.cols(); ++c1)
                for (unsigned c2 = c1 + 1; c2 < m.cols(); ++c2) {
                    TowerElement minor =
                        m.at(r1, c1) * m.at(r2, c2) - m.at(r1, c2) * m.at(r2, c1);
                    if (!minor.is_zero()) return false;
                }
    return true;
}

std::vector<std::vector<TowerElement>> span_basis(
    const std::vector<std::vector<TowerElement>>& vectors) {
    if (vectors.empty()) return {};
    const unsigned nc = static_cast<unsigned>(vectors[0].size());
    MatrixK m(static_cast<unsigned>(vectors.size()), nc, vectors[0][0].descriptor());
    for (unsigned r = 0; r < vectors.size(); ++r)
        for (unsigned c = 0; c < nc; ++c) m.at(r, c) = vectors[r][c];
    Echelon ech = echelonize(m);
    return std::move(ech.rows);
}

std::vector<std::vector<TowerElement>> intersect_subspaces(
    const std::vector<std::vector<TowerElement>>& a,
    const std::vector<std::vector<TowerElement>>& b) {
    if (a.empty() || b.empty()) return {};
    const unsigned dim = static_cast<unsigned>(a[0].size());
    const FieldDescriptor* d = a[0][0].descriptor();
    // solve [a^T | -b^T] (x;y) = 0; intersection vectors are a^T x
    MatrixK m(dim, static_cast<unsigned>(a.size() + b.size()), d);
    for (unsigned r = 0; r < dim; ++r) {
        for (unsigned i = 0; i < a.size(); ++i) m.at(r, i) = a[i][r];
        for (unsigned i = 0; i < b.size(); ++i)
            m.at(r, static_cast<unsigned>(a.size() + i)) = -b[i][r];
    }
    std::vector<std::vector<TowerElement>> out;
    for (const auto& k : kernel_basis(m)) {
        std::vector<TowerElement> v(dim, TowerElement::zero(d));
        for (unsigned i = 0; i < a.size(); ++i) {
            if (k[i].is_zero()) continue;
            for (unsigned r = 0; r < dim; ++r) v[r] += k[i] * a[i][r];
        }
        out.push_back(std::move(v));
    }
    return span_basis(out);
}

}  // namespace wedge32
