#include <doctest.h>

#include "kwlie/liealg.hpp"

#include <random>

using namespace kwlie;

TEST_SUITE_BEGIN("liealg");

namespace {

LieAlgebra abelian(const Field& F, unsigned n) {
    std::vector<std::string> names;
    for (unsigned i = 1; i <= n; ++i) names.push_back("a" + std::to_string(i));
    return LieAlgebra::from_canonical(F, names, {});
}

LieAlgebra heisenberg(const Field& F) {
    LieAlgebra::Table t;
    t[{0, 1}] = {{2, F.from_int(1)}}; // [x, y] = z
    return LieAlgebra::from_canonical(F, {"x", "y", "z"}, t);
}

Vec basis_vec(const LieAlgebra& l, std::size_t i) {
    Vec v(l.field(), l.dim());
    v.a[i] = l.field().from_int(1);
    return v;
}

} // namespace

TEST_CASE("validation") {
    Field f3 = Field::make(3);
    CHECK(abelian(f3, 4).validate().ok);
    CHECK(family_build(3, 1, 3, FamilyKind::L).validate().ok);

    // table with [x,y] = z and [y,x] = z violates antisymmetry at (x, y)
    LieAlgebra::Table bad;
    bad[{0, 1}] = {{2, f3.from_int(1)}};
    bad[{1, 0}] = {{2, f3.from_int(1)}};
    LieAlgebra b = LieAlgebra::from_table(f3, {"x", "y", "z"}, bad);
    auto rep = b.validate();
    CHECK_FALSE(rep.ok);
    CHECK(rep.axiom == "antisymmetry");
    REQUIRE(rep.where.size() >= 2);
    CHECK(rep.where[0] == "x");
    CHECK(rep.where[1] == "y");

    // a Jacobi violation: [x,y] = z, [x,z] = x leaves [[z,x],y] = -z unmatched
    LieAlgebra::Table nj;
    nj[{0, 1}] = {{2, std::uint64_t(1)}};
    nj[{0, 2}] = {{0, std::uint64_t(1)}};
    Field f5 = Field::make(5);
    auto repj = LieAlgebra::from_table(f5, {"x", "y", "z"}, nj).validate();
    CHECK_FALSE(repj.ok);
    CHECK(repj.axiom == "jacobi");
}

TEST_CASE("ad") {
    // central element -> zero matrix
    LieAlgebra L = family_build(2, 1, 3, FamilyKind::L);
    auto d0 = L.index_of("D0");
    REQUIRE(d0.has_value());
    CHECK(L.ad_basis(*d0).is_zero());

    // family L, X = D at (p=2, k=3): x1 -> x1, x2 -> x3, x3 -> 0, D0 -> 0
    auto d = L.index_of("D");
    REQUIRE(d.has_value());
    Matrix adD = L.ad_basis(*d);
    Field f2 = L.field();
    Matrix expect(f2, 5, 5);
    expect.set_raw(0, 0, 1); // x1 -> x1
    expect.set_raw(2, 1, 1); // x2 -> x3
    CHECK(adD == expect);

    // X = x1: D -> -x1, everything else -> 0
    Matrix adx1 = L.ad_basis(0);
    Matrix expect2(f2, 5, 5);
    expect2.set_raw(0, *d, f2.neg(1));
    CHECK(adx1 == expect2);
}

TEST_CASE("ad is a Lie homomorphism on random pairs") {
    std::mt19937_64 rng(5);
    for (auto which : {FamilyKind::L, FamilyKind::Lprime}) {
        LieAlgebra L = family_build(3, 1, 4, which);
        std::uniform_int_distribution<std::uint64_t> dist(0, 2);
        for (int t = 0; t < 20; ++t) {
            Vec x(L.field(), L.dim()), y(L.field(), L.dim());
            for (auto& c : x.a) c = dist(rng);
            for (auto& c : y.a) c = dist(rng);
            Matrix lhs = L.ad(L.bracket(x, y));
            Matrix rhs = L.ad(x) * L.ad(y) - L.ad(y) * L.ad(x);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("semidirect products") {
    Field f5 = Field::make(5);
    LieAlgebra ab = abelian(f5, 3);
    LieAlgebra ext = semidirect(ab, {Matrix(f5, 3, 3), "zero"}, "t");
    CHECK(ext.dim() == 4);
    CHECK(ext.validate().ok);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j) CHECK(ext.bracket_basis(i, j).is_zero());

    LieAlgebra AD = family_build(2, 1, 3, FamilyKind::AD);
    CHECK(AD.dim() == 4);
    CHECK(AD.validate().ok);

    // the identity map is not a derivation of Heisenberg (z is a product)
    LieAlgebra h = heisenberg(Field::make(3));
    Matrix notd = Matrix::identity(Field::make(3), 3);
    CHECK_THROWS_AS(semidirect(h, {notd, "bad"}, "t"), error);
    try {
        semidirect(h, {notd, "bad"}, "t");
    } catch (const error& e) {
        CHECK(e.code() == errc::not_a_derivation);
    }
}

TEST_CASE("family_build shapes and brackets") {
    // (2,1,3,L): dim 5, basis order (x1,x2,x3,D0,D), brackets {[D,x1]=x1, [D,x2]=x3}
    LieAlgebra L = family_build(2, 1, 3, FamilyKind::L);
    CHECK(L.dim() == 5);
    CHECK(L.names() == std::vector<std::string>{"x1", "x2", "x3", "D0", "D"});
    std::size_t d = 4, d0 = 3;
    CHECK(L.bracket(basis_vec(L, d), basis_vec(L, 0)) == basis_vec(L, 0)); // [D,x1]=x1
    CHECK(L.bracket(basis_vec(L, d), basis_vec(L, 1)) == basis_vec(L, 2)); // [D,x2]=x3
    CHECK(L.bracket(basis_vec(L, d), basis_vec(L, 2)).is_zero());          // [D,x3]=0
    for (std::size_t j = 0; j < 5; ++j) CHECK(L.bracket_basis(d0, j).is_zero()); // D0 central
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j) CHECK(L.bracket_basis(i, j).is_zero());

    // (2,1,3,Lprime): [D',x1]=x1, [D',x2]=0, [D',x3]=0, [D',D]=0
    LieAlgebra Lp = family_build(2, 1, 3, FamilyKind::Lprime);
    CHECK(Lp.names() == std::vector<std::string>{"x1", "x2", "x3", "D", "D'"});
    std::size_t dp = 4;
    CHECK(Lp.bracket(basis_vec(Lp, dp), basis_vec(Lp, 0)) == basis_vec(Lp, 0));
    CHECK(Lp.bracket(basis_vec(Lp, dp), basis_vec(Lp, 1)).is_zero());
    CHECK(Lp.bracket(basis_vec(Lp, dp), basis_vec(Lp, 2)).is_zero());
    CHECK(Lp.bracket(basis_vec(Lp, dp), basis_vec(Lp, 3)).is_zero());
    CHECK(Lp.validate().ok);

    CHECK_THROWS_AS(family_build(5, 1, 2, FamilyKind::L), error);
    try {
        family_build(5, 1, 2, FamilyKind::L);
    } catch (const error& e) {
        CHECK(e.code() == errc::bad_k);
    }

    for (auto [p, k] :
         std::vector<std::pair<std::uint64_t, unsigned>>{{2, 3}, {3, 3}, {3, 4}, {5, 3}, {7, 4}}) {
        for (auto which : {FamilyKind::A, FamilyKind::AD, FamilyKind::L, FamilyKind::Lprime})
            CHECK(family_build(p, 1, k, which).validate().ok);
        CHECK(family_build(p, 1, k, FamilyKind::L).dim() == k + 2);
        CHECK(family_build(p, 1, k, FamilyKind::Lprime).dim() == k + 2);
    }
}

TEST_CASE("restricted closure") {
    Field f5 = Field::make(5);
    Subspace z = restricted_closure(abelian(f5, 4));
    CHECK(z.dim() == 0);

    // A_D at (p=2, k=3): ad has dim 3 (x3 is central), closure adjoins ad(D)^2
    LieAlgebra AD = family_build(2, 1, 3, FamilyKind::AD);
    EchelonBasis ad_span(AD.field(), 16);
    for (std::size_t i = 0; i < 4; ++i) ad_span.insert(AD.ad_basis(i).flatten());
    CHECK(ad_span.dim() == 3);
    Subspace cl = restricted_closure(AD);
    CHECK(cl.dim() == 4);
    // and nothing more: span{ad(A_D), ad(D)^2} already is the closure
    EchelonBasis with_sq(AD.field(), 16);
    for (std::size_t i = 0; i < 4; ++i) with_sq.insert(AD.ad_basis(i).flatten());
    with_sq.insert(mat_p_power(AD.ad_basis(3), 1).flatten());
    CHECK(with_sq.dim() == 4);
    for (std::size_t r = 0; r < cl.basis.rows(); ++r) CHECK(with_sq.contains(cl.basis.row(r)));

    // L' at (p=2, k=3): ad(L') is already p-closed
    LieAlgebra Lp = family_build(2, 1, 3, FamilyKind::Lprime);
    EchelonBasis adp(Lp.field(), 25);
    for (std::size_t i = 0; i < 5; ++i) adp.insert(Lp.ad_basis(i).flatten());
    Subspace clp = restricted_closure(Lp);
    CHECK(clp.dim() == adp.dim());
    // entrywise: ad(D)^2 = ad(D') and ad(D')^2 = ad(D')
    Matrix adD = Lp.ad_basis(3), adDp = Lp.ad_basis(4);
    CHECK(mat_p_power(adD, 1) == adDp);
    CHECK(mat_p_power(adDp, 1) == adDp);
}

TEST_CASE("closure output is p- and bracket-closed and matches the power-span shape") {
    for (std::uint64_t p : {2ULL, 3ULL}) {
        LieAlgebra AD = family_build(p, 1, 3, FamilyKind::AD);
        std::size_t n = AD.dim();
        Subspace cl = restricted_closure(AD);
        EchelonBasis eb(AD.field(), n * n);
        for (std::size_t r = 0; r < cl.basis.rows(); ++r) eb.insert(cl.basis.row(r));
        std::vector<Matrix> mats;
        for (std::size_t r = 0; r < cl.basis.rows(); ++r)
            mats.push_back(Matrix::unflatten(cl.basis.row(r), n, n));
        for (const auto& b : mats) CHECK(eb.contains(mat_p_power(b, 1).flatten()));
        for (std::size_t i = 0; i < mats.size(); ++i)
            for (std::size_t j = i + 1; j < mats.size(); ++j)
                CHECK(eb.contains((mats[i] * mats[j] - mats[j] * mats[i]).flatten()));
        for (std::size_t i = 0; i < n; ++i) CHECK(eb.contains(AD.ad_basis(i).flatten()));

        // every closure element lies in sum_i span{ad(e)^{p^i}} over basis powers
        EchelonBasis powers(AD.field(), n * n);
        for (std::size_t i = 0; i < n; ++i) {
            Matrix cur = AD.ad_basis(i);
            for (unsigned e = 0; e <= 4; ++e) {
                powers.insert(cur.flatten());
                cur = mat_p_power(cur, 1);
            }
        }
        for (std::size_t r = 0; r < cl.basis.rows(); ++r) CHECK(powers.contains(cl.basis.row(r)));
    }
}

TEST_CASE("restrictability") {
    for (auto [p, k] :
         std::vector<std::pair<std::uint64_t, unsigned>>{{2, 3}, {3, 3}, {3, 4}, {5, 3}, {7, 4}}) {
        auto repL = is_restrictable(family_build(p, 1, k, FamilyKind::L));
        CHECK_FALSE(repL.restrictable);
        CHECK(repL.witness_name == "D");

        auto repLp = is_restrictable(family_build(p, 1, k, FamilyKind::Lprime));
        CHECK(repLp.restrictable);
    }
    CHECK(is_restrictable(abelian(Field::make(3), 4)).restrictable);
}

TEST_CASE("central p-polynomials") {
    LieAlgebra L = family_build(2, 1, 3, FamilyKind::L);
    const Field& F = L.field();

    // D0: ad = 0 so f(T) = T
    auto fd0 = central_p_polynomial(L, 3);
    REQUIRE(fd0.size() == 1);
    CHECK(fd0[0] == F.one());

    // x1: ad(x1)^2 = 0 by direct computation, so f(T) = T^p
    CHECK(mat_p_power(L.ad_basis(0), 1).is_zero());
    auto fx1 = central_p_polynomial(L, 0);
    REQUIRE(fx1.size() == 2);
    CHECK(fx1[0] == F.zero());
    CHECK(fx1[1] == F.one());

    // D: f(T) = T^{p^2} - T^p
    auto fd = central_p_polynomial(L, 4);
    REQUIRE(fd.size() == 3);
    CHECK(fd[0] == F.zero());
    CHECK(fd[1] == -F.one());
    CHECK(fd[2] == F.one());

    // f(ad e) = 0 exactly; minimality: no monic p-polynomial of smaller
    // p-degree annihilates ad e
    for (auto which : {FamilyKind::L, FamilyKind::Lprime}) {
        for (std::uint64_t p : {2ULL, 3ULL}) {
            LieAlgebra alg = family_build(p, 1, 3, which);
            for (std::size_t e = 0; e < alg.dim(); ++e) {
                auto lam = central_p_polynomial(alg, e);
                Matrix ade = alg.ad_basis(e);
                CHECK(eval_p_polynomial(lam, ade).is_zero());
                if (lam.size() > 1) {
                    std::vector<Matrix> lower;
                    Matrix cur = ade;
                    for (std::size_t i = 0; i + 2 < lam.size(); ++i) {
                        lower.push_back(cur);
                        cur = mat_p_power(cur, 1);
                    }
                    // cur = ad(e)^{p^{r-1}} must not be a combination of the
                    // earlier p-powers
                    CHECK_FALSE(solve_membership(cur, lower).has_value());
                } else {
                    CHECK(ade.is_zero());
                }
            }
        }
    }
}

TEST_CASE("base change and permutation") {
    LieAlgebra L = family_build(2, 1, 3, FamilyKind::L);
    Field f4 = Field::make(2, 2);
    LieAlgebra L4 = L.base_change(f4);
    CHECK(L4.validate().ok);
    CHECK(L4.dim() == L.dim());
    CHECK(L4.field() == f4);

    std::vector<std::size_t> order{4, 3, 2, 1, 0};
    LieAlgebra rev = L.permuted(order);
    CHECK(rev.validate().ok);
    CHECK(rev.name(0) == "D");
    // [D, x1] = x1 survives the relabeling
    Vec d(rev.field(), 5), x1(rev.field(), 5);
    d.a[0] = 1;
    x1.a[4] = 1;
    CHECK(rev.bracket(d, x1) == x1);
}

TEST_SUITE_END();
