#pragma once

#include "kwlie/field.hpp"
#include "kwlie/poly.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace kwlie {

/// Coordinate vector over a Field (raw packed entries).
struct Vec {
    Field fld;
    std::vector<std::uint64_t> a;

    Vec() = default;
    Vec(Field f, std::size_t n) : fld(std::move(f)), a(n, 0) {}
    Vec(Field f, std::vector<std::uint64_t> entries) : fld(std::move(f)), a(std::move(entries)) {}

    std::size_t size() const { return a.size(); }
    bool is_zero() const;
    FieldElement at(std::size_t i) const { return FieldElement(fld, a[i]); }
    void set(std::size_t i, const FieldElement& x);

    Vec operator+(const Vec& o) const;
    Vec operator-(const Vec& o) const;
    Vec scaled(std::uint64_t s) const;
    bool operator==(const Vec& o) const { return fld == o.fld && a == o.a; }

    /// Entries joined with ';' in the field's element-string format.
    std::string str() const;
};

/// Dense row-major matrix over a Field.
class Matrix {
public:
    Matrix() = default;
    Matrix(Field f, std::size_t rows, std::size_t cols)
        : fld_(std::move(f)), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

    static Matrix identity(const Field& f, std::size_t n);

    const Field& field() const { return fld_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    std::uint64_t raw(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
    void set_raw(std::size_t i, std::size_t j, std::uint64_t v) { a_[i * cols_ + j] = v; }
    FieldElement at(std::size_t i, std::size_t j) const { return FieldElement(fld_, raw(i, j)); }
    void set(std::size_t i, std::size_t j, const FieldElement& x);

    bool is_zero() const;
    bool operator==(const Matrix& o) const {
        return fld_ == o.fld_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix operator*(const Matrix& o) const;
    Matrix scaled(std::uint64_t s) const;
    Matrix transpose() const;
    Vec apply(const Vec& v) const; // matrix * column vector
    Vec row(std::size_t i) const;

    /// Naive repeated-squaring power (test oracle and small utility).
    Matrix pow(std::uint64_t e) const;

    /// Flatten row-major into a Vec of length rows*cols.
    Vec flatten() const;
    static Matrix unflatten(const Vec& v, std::size_t rows, std::size_t cols);

    std::string str() const;

private:
    Field fld_;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<std::uint64_t> a_;
};

/// A^{p^e} by e-fold p-th powering.
Matrix mat_p_power(const Matrix& a, unsigned e);

struct RankKernel {
    std::size_t rank = 0;
    Matrix kernel; // rows = reduced-echelon basis of the right null space
};

/// Exact rank and right kernel; the kernel basis rows are in reduced row
/// echelon form, hence canonical.
RankKernel rank_kernel(const Matrix& a);

/// Coordinates c with sum c_i S_i = v, or nullopt if v is outside the span.
/// All matrices-as-vectors must share one shape and field.
std::optional<std::vector<FieldElement>> solve_membership(const Matrix& v,
                                                          const std::vector<Matrix>& basis);
std::optional<Vec> solve_membership(const Vec& v, const std::vector<Vec>& basis);

/// Incrementally maintained reduced-row-echelon basis of a subspace of F^n.
class EchelonBasis {
public:
    EchelonBasis() = default;
    EchelonBasis(Field f, std::size_t ambient) : fld_(std::move(f)), ambient_(ambient) {}

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return rows_.size(); }
    const Field& field() const { return fld_; }

    /// Reduce v against the basis; returns the residual.
    Vec reduce(const Vec& v) const;
    bool contains(const Vec& v) const { return reduce(v).is_zero(); }
    /// Insert if independent; returns true when the dimension grew.
    bool insert(const Vec& v);

    const std::vector<Vec>& rows() const { return rows_; }
    Matrix as_matrix() const;

private:
    void normalize();
    Field fld_;
    std::size_t ambient_ = 0;
    std::vector<Vec> rows_;            // kept in RREF, pivots strictly increasing
    std::vector<std::size_t> pivots_;
};

/// Canonical subspace: ambient dimension plus an RREF basis.
struct Subspace {
    std::size_t ambient = 0;
    Matrix basis; // rows in RREF

    std::size_t dim() const { return basis.rows(); }
};

Subspace subspace_from(const EchelonBasis& e);

/// Minimal polynomial via Krylov spans over the standard basis (deterministic).
UPoly min_poly(const Matrix& a);

/// Evaluate a polynomial at a square matrix (Horner).
Matrix eval_poly(const UPoly& f, const Matrix& a);

} // namespace kwlie
