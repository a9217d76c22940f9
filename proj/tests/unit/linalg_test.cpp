#include <doctest.h>

#include "kwlie/index.hpp"
#include "kwlie/liealg.hpp"
#include "kwlie/polymat.hpp"

#include <random>

using namespace kwlie;

TEST_SUITE_BEGIN("linalg");

namespace {

Matrix from_ints(const Field& F, std::size_t r, std::size_t c,
                 const std::vector<std::vector<int>>& rows) {
    Matrix m(F, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.set_raw(i, j, F.from_int(rows[i][j]));
    return m;
}

} // namespace

TEST_CASE("rank_kernel basics") {
    Field f5 = Field::make(5);
    auto rk = rank_kernel(Matrix::identity(f5, 3));
    CHECK(rk.rank == 3);
    CHECK(rk.kernel.rows() == 0);

    Matrix z(f5, 2, 4);
    auto rkz = rank_kernel(z);
    CHECK(rkz.rank == 0);
    CHECK(rkz.kernel.rows() == 4);

    Field f2 = Field::make(2);
    Matrix jordan = from_ints(f2, 2, 2, {{0, 1}, {0, 0}});
    auto rkj = rank_kernel(jordan);
    CHECK(rkj.rank == 1);
    REQUIRE(rkj.kernel.rows() == 1);
    CHECK(rkj.kernel.raw(0, 0) == 1);
    CHECK(rkj.kernel.raw(0, 1) == 0);
}

TEST_CASE("kernel re-multiplication and permutation invariance") {
    std::mt19937_64 rng(42);
    Field f7 = Field::make(7);
    std::uniform_int_distribution<std::uint64_t> dist(0, 6);
    for (int trial = 0; trial < 25; ++trial) {
        Matrix a(f7, 4, 5);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 5; ++j) a.set_raw(i, j, dist(rng));
        auto rk = rank_kernel(a);
        CHECK(rk.rank + rk.kernel.rows() == 5);
        for (std::size_t r = 0; r < rk.kernel.rows(); ++r)
            CHECK(a.apply(rk.kernel.row(r)).is_zero());
        // permute rows and columns: rank is invariant
        Matrix b(f7, 4, 5);
        std::vector<std::size_t> rp{2, 0, 3, 1}, cp{4, 2, 0, 1, 3};
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 5; ++j) b.set_raw(i, j, a.raw(rp[i], cp[j]));
        CHECK(rank_kernel(b).rank == rk.rank);
    }
}

TEST_CASE("mat_p_power") {
    Field f2 = Field::make(2);
    Matrix n2 = from_ints(f2, 2, 2, {{0, 1}, {0, 0}});
    CHECK(mat_p_power(n2, 1).is_zero());
    CHECK(mat_p_power(Matrix::identity(f2, 3), 5) == Matrix::identity(f2, 3));

    // ad(D) on A_D at (p=2, k=3), squared by hand: fixes x1, kills x2, x3, D
    LieAlgebra ad_alg = family_build(2, 1, 3, FamilyKind::AD);
    Matrix adD = ad_alg.ad_basis(3);
    Matrix sq = mat_p_power(adD, 1);
    Matrix expect(f2, 4, 4);
    expect.set_raw(0, 0, 1);
    CHECK(sq == expect);

    CHECK_THROWS_AS(mat_p_power(Matrix(f2, 2, 3), 1), error);

    // oracle: iterated plain power on random 4x4 inputs
    Field f3 = Field::make(3);
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::uint64_t> dist(0, 2);
    for (int trial = 0; trial < 10; ++trial) {
        Matrix a(f3, 4, 4);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) a.set_raw(i, j, dist(rng));
        Matrix naive = a;
        for (int t = 1; t < 9; ++t) naive = naive * a; // a^9 = a^{3^2}
        CHECK(mat_p_power(a, 2) == naive);
    }
}

TEST_CASE("solve_membership") {
    Field f3 = Field::make(3);
    std::vector<Matrix> basis;
    basis.push_back(from_ints(f3, 2, 2, {{1, 0}, {0, 0}}));
    basis.push_back(from_ints(f3, 2, 2, {{0, 1}, {1, 0}}));

    auto c1 = solve_membership(basis[0], basis);
    REQUIRE(c1.has_value());
    CHECK((*c1)[0] == f3.one());
    CHECK((*c1)[1] == f3.zero());

    auto c0 = solve_membership(Matrix(f3, 2, 2), basis);
    REQUIRE(c0.has_value());
    CHECK((*c0)[0] == f3.zero());
    CHECK((*c0)[1] == f3.zero());

    CHECK_FALSE(solve_membership(Matrix::identity(f3, 2), basis).has_value());

    // ad(D)^p of the family L is outside the span of the ad images
    LieAlgebra L = family_build(2, 1, 3, FamilyKind::L);
    std::vector<Matrix> ads;
    for (std::size_t i = 0; i < L.dim(); ++i) ads.push_back(L.ad_basis(i));
    auto d_index = L.index_of("D");
    REQUIRE(d_index.has_value());
    CHECK_FALSE(solve_membership(mat_p_power(L.ad_basis(*d_index), 1), ads).has_value());
}

TEST_CASE("symbolic rank: small cases") {
    Field f5 = Field::make(5);
    LinearPolyMatrix m(f5, 2, 2, 1);
    m.set_coeff(0, 1, 0, f5.from_int(1));
    m.set_coeff(1, 0, 0, f5.from_int(-1));
    CHECK(symbolic_rank(m) == 2);

    LinearPolyMatrix z(f5, 3, 4, 2);
    CHECK(symbolic_rank(z) == 0);
}

TEST_CASE("symbolic rank of the family coadjoint form, cross-checked by sampling") {
    LieAlgebra L = family_build(2, 1, 3, FamilyKind::L);
    LinearPolyMatrix b = generic_coadjoint(L);
    std::size_t sym = symbolic_rank(b);
    CHECK(sym == 2);
    // oracle: evaluate at 200 random points of F_{2^8} and take the max rank
    CHECK(sampled_rank(b, 8, 200, 12345) == sym);
}

TEST_CASE("symbolic rank dominates evaluated rank; skew rank is even") {
    std::mt19937_64 rng(99);
    Field f3 = Field::make(3);
    std::uniform_int_distribution<std::uint64_t> dist(0, 2);
    for (int trial = 0; trial < 10; ++trial) {
        unsigned nv = 3;
        LinearPolyMatrix m(f3, 4, 4, nv);
        // random skew matrix with linear entries
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = i + 1; j < 4; ++j)
                for (unsigned v = 0; v <= nv; ++v) {
                    std::uint64_t c = dist(rng);
                    m.set_coeff(i, j, v, c);
                    m.set_coeff(j, i, v, f3.neg(c));
                }
        std::size_t sym = symbolic_rank(m);
        CHECK(sym % 2 == 0);
        for (int e = 0; e < 20; ++e) {
            std::vector<std::uint64_t> pt(nv);
            Field tgt = Field::make(3, 2);
            std::uniform_int_distribution<std::uint64_t> d2(0, tgt.order() - 1);
            for (auto& x : pt) x = d2(rng);
            CHECK(rank_kernel(m.eval(pt, tgt)).rank <= sym);
        }
    }
}

TEST_CASE("min_poly matches structure") {
    Field f2 = Field::make(2);
    Matrix jordan = from_ints(f2, 3, 3, {{1, 1, 0}, {0, 1, 1}, {0, 0, 1}});
    UPoly mp = min_poly(jordan);
    // (T - 1)^3 = T^3 + T^2 + T + 1 over F_2
    CHECK(mp == UPoly(f2, {1, 1, 1, 1}));
    CHECK(eval_poly(mp, jordan).is_zero());

    CHECK(min_poly(Matrix(f2, 3, 3)) == UPoly::x(f2));
    CHECK(min_poly(Matrix::identity(f2, 4)) == UPoly(f2, {1, 1}));
}

TEST_SUITE_END();
