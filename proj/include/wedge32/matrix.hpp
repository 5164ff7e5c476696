#pragma once

#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "wedge32/tower.hpp"

namespace wedge32 {

/// Dense exact matrix over the tower field, row-major. All entries share
/// one descriptor; mixed-descriptor operations promote to the larger field.
class MatrixK {
  public:
    MatrixK() : rows_(0), cols_(0), desc_(FieldDescriptor::base()) {}
    MatrixK(unsigned rows, unsigned cols, const FieldDescriptor* d);

    static MatrixK identity(unsigned n, const FieldDescriptor* d);
    static MatrixK from_int_rows(const std::vector<std::vector<long>>& rows,
                                 const FieldDescriptor* d);
    static MatrixK scalar(unsigned n, const TowerElement& s);

    unsigned rows() const { return rows_; }
    unsigned cols() const { return cols_; }
    const FieldDescriptor* descriptor() const { return desc_; }

    TowerElement& at(unsigned r, unsigned c) { return e_[std::size_t(r) * cols_ + c]; }
    const TowerElement& at(unsigned r, unsigned c) const {
        return e_[std::size_t(r) * cols_ + c];
    }

    MatrixK operator*(const MatrixK& o) const;
    MatrixK operator+(const MatrixK& o) const;
    MatrixK operator-(const MatrixK& o) const;
    MatrixK operator-() const;
    MatrixK scaled(const TowerElement& s) const;
    MatrixK transpose() const;
    bool operator==(const MatrixK& o) const;
    bool operator!=(const MatrixK& o) const { return !(*this == o); }

    bool is_identity() const;
    bool is_zero() const;
    TowerElement trace() const;

    MatrixK promoted_to(const FieldDescriptor* d) const;
    MatrixK restricted_to(const FieldDescriptor* d) const;
    bool lies_in(const FieldDescriptor* d) const;

    /// dims + concatenated entry keys; injective per descriptor
    std::string canonical_key() const;

  private:
    unsigned rows_, cols_;
    const FieldDescriptor* desc_;
    std::vector<TowerElement> e_;
};

/// Monic characteristic polynomial, coefficients ascending (a0 ... an = 1).
struct CharPoly {
    std::vector<TowerElement> coeffs;

    unsigned degree() const { return static_cast<unsigned>(coeffs.size()) - 1; }
    bool operator==(const CharPoly& o) const { return coeffs == o.coeffs; }
    std::string key() const;
    MatrixK evaluate(const MatrixK& m) const;  // Cayley-Hamilton spot checks
    bool rational_coeffs() const;
};

MatrixK matmul(const MatrixK& a, const MatrixK& b);
std::vector<TowerElement> matvec(const MatrixK& m, std::span<const TowerElement> v);

CharPoly char_poly(const MatrixK& m);  // Faddeev-LeVerrier; divides only by 1..n
TowerElement det(const MatrixK& m);
MatrixK inverse(const MatrixK& m);  // Gauss-Jordan; DomainError when singular
/// Inverse through the characteristic polynomial: one scalar inversion of
/// det, no eliminations. The right tool for bulk passes over group elements.
MatrixK inverse_via_charpoly(const MatrixK& m);
unsigned rank(const MatrixK& m);
/// Echelonized kernel basis; vectors k satisfy m*k = 0 exactly.
std::vector<std::vector<TowerElement>> kernel_basis(const MatrixK& m);
bool is_rank_at_most_one(const MatrixK& m);  // via 2x2 minors, no divisions

/// Echelonized basis of the span of the given vectors (row space).
std::vector<std::vector<TowerElement>> span_basis(
    const std::vector<std::vector<TowerElement>>& vectors);
/// Intersection of two subspaces given by bases.
std::vector<std::vector<TowerElement>> intersect_subspaces(
    const std::vector<std::vector<TowerElement>>& a,
    const std::vector<std::vector<TowerElement>>& b);

}  // namespace wedge32
