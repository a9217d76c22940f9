#include <doctest.h>

#include "kwlie/repn.hpp"
#include "kwlie/index.hpp"

#include <random>

using namespace kwlie;

TEST_SUITE_BEGIN("repn");

namespace {

LieAlgebra heisenberg(const Field& F) {
    LieAlgebra::Table t;
    t[{0, 1}] = {{2, F.from_int(1)}};
    return LieAlgebra::from_canonical(F, {"x", "y", "z"}, t);
}

// the regular module of k[x]/(x^n - a): x acts as the companion matrix
ModuleAction cyclic_algebra_module(const Field& F, std::size_t n, std::uint64_t a) {
    Matrix m(F, n, n);
    for (std::size_t i = 1; i < n; ++i) m.set_raw(i, i - 1, F.from_int(1));
    m.set_raw(0, n - 1, a);
    return ModuleAction{F, n, {m}};
}

Vec unit(const Field& F, std::size_t n, std::size_t i) {
    Vec v(F, n);
    v.a[i] = F.from_int(1);
    return v;
}

ModuleAction reduced_family_module(std::uint64_t p, unsigned k, bool all_ones) {
    LieAlgebra L = family_build(p, 1, k, FamilyKind::L);
    Vec chi(L.field(), L.dim());
    if (all_ones)
        for (auto& c : chi.a) c = 1;
    auto floors = family_p_degree_floor(k, L.dim());
    return regular_module(reduced_algebra(L, chi_to_mu(L, chi, floors), floors));
}

} // namespace

TEST_CASE("spin") {
    // regular module of F_3[x]/(x^2 - 1): 1 spins to everything
    Field f3 = Field::make(3);
    ModuleAction m = cyclic_algebra_module(f3, 2, 1);
    CHECK(spin(m, unit(f3, 2, 0)).dim() == 2);

    // a known invariant line stays put: x^2 = 1 fixes v = 1 + x ... x*(1+x) = x + 1
    Vec v(f3, 2);
    v.a[0] = 1;
    v.a[1] = 1;
    CHECK(spin(m, v).dim() == 1);

    CHECK_THROWS_AS(spin(m, Vec(f3, 2)), error);

    // regular module of the reduced family algebra: the class of 1 generates
    ModuleAction reg = reduced_family_module(2, 3, true);
    CHECK(reg.dim == 32);
    CHECK(spin(reg, unit(reg.fld, 32, 0)).dim() == 32);

    // spin output is generator-invariant
    Subspace s = spin(m, v);
    EchelonBasis eb(f3, 2);
    for (std::size_t r = 0; r < s.basis.rows(); ++r) eb.insert(s.basis.row(r));
    for (std::size_t r = 0; r < s.basis.rows(); ++r)
        for (const auto& g : m.gens) CHECK(eb.contains(g.apply(s.basis.row(r))));
}

TEST_CASE("chop: commutative torsion algebra") {
    // F_3[x]/(x^3 - 1) = F_3[x]/((x-1)^3): three composition factors of dim 1
    Field f3 = Field::make(3);
    ModuleAction m = cyclic_algebra_module(f3, 3, 1);
    ChopResult cr = chop(m, 17);
    CHECK(cr.module_dim == 3);
    CHECK(cr.dim_accounted() == 3);
    REQUIRE(cr.factors.size() == 1);
    CHECK(cr.factors[0].action.dim == 1);
    CHECK(cr.factors[0].multiplicity == 3);
    CHECK(cr.factors[0].abs_dim == 1);
}

TEST_CASE("chop: Heisenberg control case") {
    // the dim-8 reduced Heisenberg at chi(z) = 1 over F_2 has a nilpotent
    // central ideal generated by z - 1; modulo it everything is the 2x2
    // matrix algebra, so the regular module has four copies of the
    // 2-dimensional simple and the max absolute factor dimension is p = 2
    Field f2 = Field::make(2);
    LieAlgebra h = heisenberg(f2);
    Vec chi(f2, 3);
    chi.a[2] = 1;
    ModuleAction reg = regular_module(reduced_algebra(h, chi_to_mu(h, chi)));
    CHECK(reg.dim == 8);
    ChopResult cr = chop(reg, 5);
    CHECK(cr.dim_accounted() == 8);
    REQUIRE(cr.factors.size() == 1);
    CHECK(cr.factors[0].action.dim == 2);
    CHECK(cr.factors[0].multiplicity == 4);
    CHECK(cr.factors[0].endo_degree == 1);
    CHECK(cr.factors[0].abs_dim == 2);
    CHECK(cr.max_abs_dim() == 2);
}

TEST_CASE("chop: family L at the all-ones character") {
    ModuleAction reg = reduced_family_module(2, 3, true);
    ChopResult cr = chop(reg, 42);
    CHECK(cr.module_dim == 32);
    CHECK(cr.dim_accounted() == 32);
    CHECK(cr.max_abs_dim() == 4);
    for (const auto& f : cr.factors) {
        CHECK(f.abs_dim % 4 == 0); // p^2 divides every absolute factor dimension
        CHECK(spin_certificate(f.action, 1000 + f.action.dim, 20));
    }
}

TEST_CASE("chop determinism") {
    ModuleAction reg = reduced_family_module(2, 3, true);
    ChopResult a = chop(reg, 7);
    ChopResult b = chop(reg, 7);
    REQUIRE(a.factors.size() == b.factors.size());
    for (std::size_t i = 0; i < a.factors.size(); ++i) {
        CHECK(a.factors[i].action.dim == b.factors[i].action.dim);
        CHECK(a.factors[i].multiplicity == b.factors[i].multiplicity);
        CHECK(a.factors[i].action.gens[0] == b.factors[i].action.gens[0]);
    }
    CHECK(a.factors_str() == b.factors_str());
}

TEST_CASE("absolute dimensions via the endomorphism algebra") {
    // 1-dim module: e = 1
    Field f2 = Field::make(2);
    Matrix one(f2, 1, 1);
    one.set_raw(0, 0, 1);
    ModuleAction triv{f2, 1, {one}};
    CHECK(endo_degree(triv) == 1);

    // companion matrix of t^2+t+1 over F_2: a field-type module, e = 2
    Matrix comp(f2, 2, 2);
    comp.set_raw(0, 1, 1);
    comp.set_raw(1, 0, 1);
    comp.set_raw(1, 1, 1);
    ModuleAction fieldmod{f2, 2, {comp}};
    CHECK(spin(fieldmod, unit(f2, 2, 0)).dim() == 2); // irreducible
    CHECK(endo_degree(fieldmod) == 2);
    AbsoluteDims ad = absolute_dims(fieldmod);
    CHECK(ad.endo_degree == 2);
    CHECK(ad.abs_dim == 1); // the endomorphism ring is F_4

    // extending scalars by e = 2 splits it into 2 factors of absolute dim 1
    ModuleAction ext = extend_scalars(fieldmod, 2);
    ChopResult cr = chop(ext, 3);
    CHECK(cr.dim_accounted() == 2);
    std::size_t count = 0;
    for (const auto& f : cr.factors) {
        CHECK(f.action.dim == 1);
        count += f.multiplicity;
    }
    CHECK(count == 2);
}

TEST_CASE("absolute-dimension consistency on a family factor") {
    // chop over F_2 at the zero character: factors can pick up endo degree,
    // and re-chopping after scalar extension by e yields e absolute factors
    ModuleAction reg = reduced_family_module(2, 3, false);
    ChopResult cr = chop(reg, 11);
    CHECK(cr.dim_accounted() == 32);
    for (const auto& f : cr.factors) {
        if (f.endo_degree == 1) continue;
        ModuleAction ext = extend_scalars(f.action, f.endo_degree);
        ChopResult sub = chop(ext, 13);
        std::size_t pieces = 0;
        for (const auto& g : sub.factors) {
            CHECK(g.action.dim == f.abs_dim);
            pieces += g.multiplicity;
        }
        CHECK(pieces == f.endo_degree);
    }
}

TEST_CASE("module relations and file round-trip") {
    Field f2 = Field::make(2);
    LieAlgebra h = heisenberg(f2);
    Vec chi(f2, 3);
    chi.a[2] = 1;
    ReducedAlgebra ra = reduced_algebra(h, chi_to_mu(h, chi));
    ModuleAction reg = regular_module(ra);
    CHECK(check_relations(reg, h));

    std::string text = emit_module(reg);
    ModuleAction back = parse_module(text);
    CHECK(back.dim == reg.dim);
    REQUIRE(back.gens.size() == reg.gens.size());
    for (std::size_t i = 0; i < reg.gens.size(); ++i) CHECK(back.gens[i] == reg.gens[i]);
    CHECK(emit_module(back) == text);
}

TEST_CASE("m_sweep at (2,1,3): the counterexample shows up") {
    SweepReport rep = m_sweep(2, 1, 3, FamilyKind::L, CharacterSet{true, 10, 4, {}}, 321);
    CHECK(rep.algebra_dim == 5);
    CHECK(rep.reduced_dim == 32);
    CHECK(rep.kw1_exponent == 1);
    CHECK(rep.kw1_predicted_dim == 2);
    CHECK(rep.rows.size() == 32 + 10);
    CHECK(rep.observed_max_abs == 4);
    CHECK(rep.max_div_p2);
    CHECK(rep.verdict.find("KW1 FAILS") != std::string::npos);

    // the all-ones row over the base field: every absolute dim divisible by 4
    bool found = false;
    for (const auto& row : rep.rows) {
        if (row.chi == "1;1;1;1;1") {
            found = true;
            CHECK(row.all_abs_div_p2);
            CHECK(row.max_abs == 4);
        }
    }
    CHECK(found);
}

TEST_CASE("absolute factor dims divisible by p^((dim-s)/2) at every base character") {
    LieAlgebra L = family_build(2, 1, 3, FamilyKind::L);
    const Field& F = L.field();
    auto floors = family_p_degree_floor(3, 5);
    for (std::uint64_t idx = 0; idx < 32; ++idx) {
        Vec chi(F, 5);
        std::uint64_t v = idx;
        for (std::size_t i = 0; i < 5; ++i) {
            chi.a[i] = v & 1;
            v >>= 1;
        }
        std::size_t s = stabilizer_dim(L, chi);
        std::uint64_t want = 1;
        for (std::size_t i = 0; i < (5 - s) / 2; ++i) want *= 2;
        ReducedAlgebra ra = reduced_algebra(L, chi_to_mu(L, chi, floors), floors);
        ChopResult cr = chop(regular_module(ra), 1700 + idx);
        for (const auto& f : cr.factors) CHECK(f.abs_dim % want == 0);
    }
}

TEST_CASE("m_sweep of L' reaches the same maximum (isomorphic envelopes)") {
    CharacterSet cs{true, 10, 4, {}};
    SweepReport l = m_sweep(2, 1, 3, FamilyKind::L, cs, 99);
    SweepReport lp = m_sweep(2, 1, 3, FamilyKind::Lprime, cs, 99);
    CHECK(lp.reduced_dim == 64);
    CHECK(lp.observed_max_abs == l.observed_max_abs);
    // the prediction differs (ind L' = 1), so L' shows KW1 holding
    CHECK(lp.kw1_exponent == 2);
    CHECK(lp.verdict.find("KW1 HOLDS") != std::string::npos);
}

TEST_CASE("m_sweep budget guard") {
    CHECK_THROWS_AS(m_sweep(2, 1, 12, FamilyKind::L, CharacterSet{}, 1), error);
    try {
        m_sweep(2, 1, 12, FamilyKind::L, CharacterSet{}, 1);
    } catch (const error& e) {
        CHECK(e.code() == errc::budget_exceeded);
    }
}

TEST_SUITE_END();
