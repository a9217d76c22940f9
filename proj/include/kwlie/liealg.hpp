#pragma once

#include "kwlie/matrix.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace kwlie {

struct BracketTerm {
    std::size_t target;
    std::uint64_t coeff; // raw, nonzero
};

struct ValidationReport {
    bool ok = true;
    std::string axiom;                  // "antisymmetry" or "jacobi" when failing
    std::vector<std::string> where;     // offending basis names
    std::string message;
};

/// Finite-dimensional Lie algebra given by structure constants over a Field.
/// Canonical constructors only store triples with left < right (antisymmetry
/// is generated, never stored); the raw table constructor keeps whatever the
/// caller declared so validation can catch antisymmetry violations.
class LieAlgebra {
public:
    using Table = std::map<std::pair<std::size_t, std::size_t>, std::vector<BracketTerm>>;

    LieAlgebra() = default;

    static LieAlgebra from_canonical(Field f, std::vector<std::string> names, Table triples);
    static LieAlgebra from_table(Field f, std::vector<std::string> names, Table table);

    std::size_t dim() const { return names_.size(); }
    const Field& field() const { return fld_; }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(std::size_t i) const { return names_[i]; }
    std::optional<std::size_t> index_of(const std::string& name) const;

    /// [e_i, e_j] as a coordinate vector.
    Vec bracket_basis(std::size_t i, std::size_t j) const;
    /// Bilinear extension.
    Vec bracket(const Vec& x, const Vec& y) const;

    /// Canonical sparse triples (left < right, nonzero), for emission.
    Table canonical_table() const;

    ValidationReport validate() const;

    /// Matrix of [x, .] in the basis (columns = images of basis vectors).
    Matrix ad(const Vec& x) const;
    Matrix ad_basis(std::size_t i) const;

    LieAlgebra base_change(const Field& target) const;
    /// Reorder the basis; order[new_index] = old_index.
    LieAlgebra permuted(const std::vector<std::size_t>& order) const;

    bool operator==(const LieAlgebra& o) const;

private:
    Field fld_;
    std::vector<std::string> names_;
    Table table_;
};

/// A square matrix claimed to satisfy the Leibniz rule on L.
struct DerivationMatrix {
    Matrix mat;
    std::string label;
};

/// First basis pair violating Leibniz, or nullopt when D is a derivation.
std::optional<std::pair<std::size_t, std::size_t>> leibniz_violation(const LieAlgebra& l,
                                                                     const Matrix& d);

/// Semidirect product L x <name> with [name, x] = D(x).
LieAlgebra semidirect(const LieAlgebra& l, const DerivationMatrix& d, const std::string& name);

enum class FamilyKind { A, AD, L, Lprime };
FamilyKind family_kind_from_string(const std::string& s);
const char* family_kind_name(FamilyKind k);

/// The counterexample family over F_{p^m}: the abelian algebra A = <x_1..x_k>,
/// its extension A_D by the derivation D (D x_i = x_i for i <= k-2,
/// D x_{k-1} = x_k, D x_k = 0), and the two further extensions
/// L = (A_D)_{D0} with basis (x_1..x_k, D0, D) and L' = (A_D)_{D'} with basis
/// (x_1..x_k, D, D') where D' = ad(D)^p.
LieAlgebra family_build(std::uint64_t p, unsigned m, unsigned k, FamilyKind which);

/// Smallest p-power- and bracket-closed subspace of Der(L) containing ad(L),
/// as a canonical subspace of the n^2-dimensional matrix space (fixpoint of
/// adjoining p-th matrix powers and pairwise commutators).
Subspace restricted_closure(const LieAlgebra& l);

struct RestrictabilityReport {
    bool restrictable = true;
    std::string witness_name;  // basis element e with ad(e)^p outside ad(L)
    Matrix witness_power;      // the matrix ad(e)^p
};

/// ad(L) closed under p-th powers? Basis checks suffice by Jacobson's formula.
RestrictabilityReport is_restrictable(const LieAlgebra& l);

/// Minimal monic p-polynomial f(T) = T^{p^r} + sum_{i<r} lambda_i T^{p^i}
/// with f(ad e) = 0, returned as coefficients lambda_0..lambda_r (lambda_r = 1).
/// Degenerate case ad(e) = 0 gives f(T) = T. A nonzero `min_p_degree` asks for
/// the minimal annihilating p-polynomial with r >= min_p_degree instead (used
/// to cut reduced algebras by e^p-type relations even for central e).
std::vector<FieldElement> central_p_polynomial(const LieAlgebra& l, std::size_t e_index,
                                               unsigned min_p_degree = 0);

/// Evaluate a p-polynomial (coefficient list as above) at a scalar.
FieldElement eval_p_polynomial(const std::vector<FieldElement>& lambda, const FieldElement& x);

/// Evaluate a p-polynomial at a square matrix.
Matrix eval_p_polynomial(const std::vector<FieldElement>& lambda, const Matrix& a);

} // namespace kwlie
