#pragma once

#include "kwlie/matrix.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <vector>

namespace kwlie {

/// Graded-lex ordered multivariate monomial exponents.
struct GradedLexLess {
    bool operator()(const std::vector<std::uint16_t>& a, const std::vector<std::uint16_t>& b) const;
};

/// Sparse multivariate polynomial over a Field; only what fraction-free
/// elimination needs (ring ops plus exact division).
class MultiPoly {
public:
    using Exp = std::vector<std::uint16_t>;

    MultiPoly() = default;
    MultiPoly(Field f, unsigned nvars) : fld_(std::move(f)), nvars_(nvars) {}

    static MultiPoly constant(const Field& f, unsigned nvars, std::uint64_t c);
    static MultiPoly variable(const Field& f, unsigned nvars, unsigned idx);

    const Field& field() const { return fld_; }
    unsigned nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    unsigned total_degree() const;
    std::size_t term_count() const { return terms_.size(); }

    void add_term(const Exp& e, std::uint64_t c);

    MultiPoly operator+(const MultiPoly& o) const;
    MultiPoly operator-(const MultiPoly& o) const;
    MultiPoly operator*(const MultiPoly& o) const;
    /// Exact quotient; raises Internal if the division leaves a remainder.
    MultiPoly exact_div(const MultiPoly& d) const;

    bool operator==(const MultiPoly& o) const {
        return fld_ == o.fld_ && nvars_ == o.nvars_ && terms_ == o.terms_;
    }

    std::string str() const;

private:
    Field fld_;
    unsigned nvars_ = 0;
    std::map<Exp, std::uint64_t, GradedLexLess> terms_; // leading term = rbegin
};

/// Matrix whose entries are degree-<=1 polynomials c_0 + sum c_v t_v over a
/// Field; the carrier for generic coadjoint forms with the chi-coordinates
/// as indeterminates.
class LinearPolyMatrix {
public:
    LinearPolyMatrix() = default;
    LinearPolyMatrix(Field f, std::size_t rows, std::size_t cols, unsigned nvars);

    const Field& field() const { return fld_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    unsigned nvars() const { return nvars_; }

    /// entry(i,j) coefficient of t_v; v = nvars() means the constant term.
    std::uint64_t coeff(std::size_t i, std::size_t j, unsigned v) const;
    void set_coeff(std::size_t i, std::size_t j, unsigned v, std::uint64_t c);

    MultiPoly entry_poly(std::size_t i, std::size_t j) const;

    /// Evaluate at a point whose entries live in `target` (the matrix field
    /// must embed into target).
    Matrix eval(const std::vector<std::uint64_t>& point_raw, const Field& target) const;

private:
    Field fld_;
    std::size_t rows_ = 0, cols_ = 0;
    unsigned nvars_ = 0;
    std::vector<std::uint64_t> c_; // (i,j) entry stores nvars+1 coefficients
};

/// Exact rank over the rational function field (equivalently, the maximum of
/// the evaluated rank over the algebraic closure), by fraction-free Bareiss
/// elimination with row-major first-nonzero pivoting.
std::size_t symbolic_rank(const LinearPolyMatrix& m);

/// Randomized cross-check: max evaluated rank over `trials` uniform points of
/// F_{p^(m*ext_factor)}. Never used as the source of truth.
std::size_t sampled_rank(const LinearPolyMatrix& m, unsigned ext_factor, unsigned trials,
                         std::uint64_t seed);

} // namespace kwlie
