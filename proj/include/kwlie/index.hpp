#pragma once

#include "kwlie/liealg.hpp"
#include "kwlie/polymat.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace kwlie {

/// Skew form B_chi with B[i][j] = chi([e_i, e_j]). chi may live in an
/// extension of the algebra's field; the form is over chi's field.
Matrix coadjoint_form(const LieAlgebra& l, const Vec& chi);

/// dim of the radical of B_chi (the stabilizer L_chi).
std::size_t stabilizer_dim(const LieAlgebra& l, const Vec& chi);

/// Generic coadjoint form with the chi-coordinates as indeterminates:
/// entry (i,j) = sum_k c_{ij}^k t_k.
LinearPolyMatrix generic_coadjoint(const LieAlgebra& l);

struct IndexReport {
    std::size_t dim = 0;
    std::size_t index = 0;
    std::size_t generic_rank = 0;
    unsigned kw1_exponent = 0;      // (dim - index)/2
    std::optional<Vec> witness_chi; // sampled minimizer, when sampling ran

    std::string to_kv() const; // flat key:value block
};

/// Exact index over the algebraic closure: dim - symbolic_rank of the generic
/// coadjoint form. Raises ParityViolation if dim - index comes out odd.
IndexReport index_symbolic(const LieAlgebra& l);

struct SampledIndex {
    std::size_t min_stabilizer_dim = 0; // upper bound on the index
    Vec witness_chi;
};

/// Probabilistic cross-check: min stabilizer dimension over `trials` uniform
/// characters of F_{p^(m*ext_factor)}. Always >= the true index.
SampledIndex index_sampled(const LieAlgebra& l, unsigned trials, unsigned ext_factor,
                           std::uint64_t seed);

/// KW1 exponent d with prediction p^d = p^{(dim - ind)/2}.
unsigned kw1_predicted(const LieAlgebra& l);

} // namespace kwlie
