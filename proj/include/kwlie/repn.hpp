#pragma once

#include "kwlie/env.hpp"
#include "kwlie/index.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace kwlie {

/// A module over an algebra given by its generator action matrices
/// (vectors are columns; generators act by left multiplication).
struct ModuleAction {
    Field fld;
    std::size_t dim = 0;
    std::vector<Matrix> gens;
};

ModuleAction regular_module(const ReducedAlgebra& ra);

/// Entrywise scalar extension to F_{q^factor}.
ModuleAction extend_scalars(const ModuleAction& m, unsigned factor);

/// Spot-check that the generators satisfy the algebra's bracket relations.
bool check_relations(const ModuleAction& m, const LieAlgebra& l);

/// Smallest generator-invariant subspace containing v (breadth-first
/// closure, echelonized). v must be nonzero.
Subspace spin(const ModuleAction& m, const Vec& v);

struct FactorCertificate {
    std::string split_element; // description of the element theta used
    std::string factor_poly;   // irreducible factor g of its minimal polynomial
    std::size_t nullity = 0;   // dim Null g(theta) (= deg g when certifying)
    bool transpose_checked = false;
};

struct ChopFactor {
    ModuleAction action; // the composition factor with its induced action
    std::size_t multiplicity = 1;
    unsigned endo_degree = 1;  // dim of the endomorphism algebra over the base field
    std::size_t abs_dim = 0;   // dim / endo_degree
    FactorCertificate cert;
};

struct ChopResult {
    std::uint64_t seed = 0;
    std::size_t module_dim = 0;
    std::vector<ChopFactor> factors; // grouped by isomorphism, largest dim first

    std::size_t dim_accounted() const;
    std::size_t max_abs_dim() const;
    std::string factors_str() const; // e.g. "4^8" or "2^2(e=1), 1^1(e=1)"
};

/// MeatAxe composition series: random split elements, kernel spins, Norton
/// irreducibility certificates; deterministic for a fixed seed.
ChopResult chop(const ModuleAction& m, std::uint64_t seed);

/// Endomorphism-algebra dimension of an irreducible module, by solving the
/// commutation system through a spin schedule.
unsigned endo_degree(const ModuleAction& irreducible);

struct AbsoluteDims {
    unsigned endo_degree = 1; // e = dim of the endomorphism algebra
    std::size_t abs_dim = 0;  // dim / e, the dimension after splitting
};

/// Splitting data of a certified-irreducible module: extending scalars by
/// endo_degree and re-chopping yields endo_degree factors of abs_dim each.
AbsoluteDims absolute_dims(const ModuleAction& irreducible);

/// Hom(S, T) != 0 test for irreducible modules over the same algebra.
bool modules_isomorphic(const ModuleAction& s, const ModuleAction& t);

/// Independent certificate: `count` seeded random nonzero vectors all spin to
/// the full module.
bool spin_certificate(const ModuleAction& m, std::uint64_t seed, unsigned count = 20);

// --- module file format (text; consumed by tests and the CLI) --------------

std::string emit_module(const ModuleAction& m);
ModuleAction parse_module(const std::string& text);

// --- the desk-scale M(L) sweep ---------------------------------------------

struct CharacterSet {
    bool all_base = true;           // every chi over the base field
    unsigned random_ext_count = 50; // seeded random chis over F_{q^ext_factor}
    unsigned ext_factor = 4;
    std::vector<Vec> explicit_chis; // used instead when non-empty
};

struct SweepRow {
    std::string chi;
    std::string field_desc;
    std::vector<std::array<std::size_t, 4>> factors; // dim, mult, endo, abs_dim
    std::size_t max_abs = 0;
    bool all_abs_div_p2 = true;
};

struct SweepReport {
    std::uint64_t p = 0;
    unsigned m = 1;
    unsigned k = 0;
    FamilyKind which = FamilyKind::L;
    std::uint64_t seed = 0;
    std::size_t algebra_dim = 0;
    std::size_t reduced_dim = 0;
    unsigned kw1_exponent = 0;
    std::uint64_t kw1_predicted_dim = 0; // p^exponent
    std::size_t observed_max_abs = 0;
    bool max_div_p = false;
    bool max_div_p2 = false;
    std::string verdict;
    std::vector<SweepRow> rows;
};

/// Chop the regular module of the reduced algebra at every character in the
/// set; report the observed maximum absolute simple dimension and the KW1
/// verdict. Guarded by `budget` on the reduced dimension.
SweepReport m_sweep(std::uint64_t p, unsigned m, unsigned k, FamilyKind which,
                    const CharacterSet& chars, std::uint64_t seed, std::size_t budget = 4096);

} // namespace kwlie
