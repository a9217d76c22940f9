#pragma once

#include "kwlie/liealg.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace kwlie {

/// Exponent vector of a PBW monomial, one exponent per basis element in
/// basis order; graded-lex term order.
using ExpVec = std::vector<std::uint32_t>;

unsigned expvec_degree(const ExpVec& e);

struct PbwLess {
    bool operator()(const ExpVec& a, const ExpVec& b) const;
};

/// Degree-capped element of U(L) in PBW normal form. The cap is explicit and
/// overflow is a hard error, never silent truncation.
struct PbwElement {
    unsigned cap = 0;
    std::map<ExpVec, std::uint64_t, PbwLess> terms;

    bool is_zero() const { return terms.empty(); }
    unsigned degree() const;
    bool same_terms(const PbwElement& o) const { return terms == o.terms; }
};

/// Arithmetic context for U(L): straightening-based products with the
/// classical rewriting e_j e_i = e_i e_j + [e_j, e_i] for j > i.
class Envelope {
public:
    explicit Envelope(LieAlgebra alg) : alg_(std::move(alg)) {}

    const LieAlgebra& algebra() const { return alg_; }
    const Field& field() const { return alg_.field(); }

    PbwElement zero(unsigned cap) const;
    PbwElement one(unsigned cap) const;
    PbwElement gen(std::size_t i, unsigned cap) const;
    PbwElement monomial(const ExpVec& e, std::uint64_t coeff, unsigned cap) const;
    /// Degree <= 1 element from Lie-algebra coordinates.
    PbwElement from_lie(const Vec& x, unsigned cap) const;

    PbwElement add(const PbwElement& u, const PbwElement& v) const;
    PbwElement sub(const PbwElement& u, const PbwElement& v) const;
    PbwElement scale(const PbwElement& u, std::uint64_t c) const;
    PbwElement mul(const PbwElement& u, const PbwElement& v) const;
    PbwElement commutator(const PbwElement& u, const PbwElement& v) const;
    PbwElement pow(const PbwElement& u, unsigned n) const;

    /// Straighten an arbitrary word of generator indices into PBW terms,
    /// accumulating into `out` (word length must be <= out.cap).
    void straighten_into(const std::vector<std::uint32_t>& word, std::uint64_t coeff,
                         PbwElement& out) const;

    std::string str(const PbwElement& u) const;

private:
    LieAlgebra alg_;
};

/// Witness for an enveloping-algebra homomorphism L' -> U(L) built from the
/// counterexample family: identity on the shared subalgebra, D' -> D^p + D0.
struct IsoWitness {
    LieAlgebra source; // L'
    LieAlgebra target; // L
    unsigned cap = 0;
    std::vector<PbwElement> images; // per source basis index

    // family bookkeeping used by the surjectivity check
    std::optional<std::size_t> src_d_index;
    std::optional<std::size_t> src_dprime_index;
    std::optional<std::size_t> tgt_d0_index;
};

struct IsoReport {
    bool brackets_ok = true;
    bool surjective_ok = true;
    std::string first_failure;
    std::vector<std::string> log;

    bool pass() const { return brackets_ok && surjective_ok; }
};

/// Build the witness for the family at (p, m, k); cap defaults to p + 2.
IsoWitness iso_build(std::uint64_t p, unsigned m, unsigned k, unsigned cap = 0);

/// Check bracket compatibility on all source basis pairs and the recovery of
/// D0 as image(D') - image(D)^p (generator surjectivity). Verifies the
/// constructive half only; injectivity is not certified here.
IsoReport iso_verify(const IsoWitness& w);

/// Finite-dimensional quotient of U(L) by the central elements f_e(e) - mu_e,
/// materialized as left-multiplication matrices on the PBW monomial basis
/// with exponent of e below p^{deg f_e}. By default each f_e is the minimal
/// annihilating p-polynomial of p-degree >= 1 (so central e still get the
/// e^p - mu cut); per-element degree floors can override that, with floor 0
/// meaning the exact minimal p-polynomial (f = T for central e).
struct ReducedAlgebra {
    Field fld;
    std::size_t dim = 0;
    LieAlgebra alg;
    std::vector<std::vector<FieldElement>> p_polys; // lambda lists per basis element
    std::vector<std::uint64_t> bounds;              // p^{p-degree of f_e}
    std::vector<FieldElement> mu;
    std::vector<Matrix> gens; // one N x N matrix per Lie basis element

    ExpVec monomial_of(std::size_t index) const;
    std::size_t index_of(const ExpVec& e) const;
};

ReducedAlgebra reduced_algebra(const LieAlgebra& l, const std::vector<FieldElement>& mu,
                               const std::vector<unsigned>& p_degree_floor = {});

/// Central character from a linear form: mu_e = f_e(chi(e)). chi may live in
/// an extension of the algebra's field; the result is over chi's field. The
/// floors must match the ones handed to reduced_algebra.
std::vector<FieldElement> chi_to_mu(const LieAlgebra& l, const Vec& chi,
                                    const std::vector<unsigned>& p_degree_floor = {});

/// The family's natural p-center cut: x_i^p relations for the abelian ideal
/// (indices 0..k-1), exact minimal p-polynomials for the adjoined derivations.
std::vector<unsigned> family_p_degree_floor(unsigned k, std::size_t dim);

} // namespace kwlie
