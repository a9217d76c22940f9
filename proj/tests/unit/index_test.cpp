#include <doctest.h>

#include "kwlie/index.hpp"

using namespace kwlie;

TEST_SUITE_BEGIN("index");

namespace {

LieAlgebra heisenberg(const Field& F) {
    LieAlgebra::Table t;
    t[{0, 1}] = {{2, F.from_int(1)}};
    return LieAlgebra::from_canonical(F, {"x", "y", "z"}, t);
}

LieAlgebra abelian(const Field& F, unsigned n) {
    std::vector<std::string> names;
    for (unsigned i = 1; i <= n; ++i) names.push_back("a" + std::to_string(i));
    return LieAlgebra::from_canonical(F, names, {});
}

Vec unit_chi(const LieAlgebra& l, std::size_t i) {
    Vec v(l.field(), l.dim());
    v.a[i] = l.field().from_int(1);
    return v;
}

} // namespace

TEST_CASE("coadjoint form") {
    LieAlgebra L = family_build(2, 1, 3, FamilyKind::L);
    Field f2 = L.field();

    CHECK(coadjoint_form(L, Vec(f2, 5)).is_zero());

    // chi = x1^*: only B[x1][D] = 1 = B[D][x1] (signs coincide over F_2)
    Matrix b = coadjoint_form(L, unit_chi(L, 0));
    Matrix expect(f2, 5, 5);
    expect.set_raw(0, 4, 1);
    expect.set_raw(4, 0, 1);
    CHECK(b == expect);

    // Heisenberg, chi = z^*: single skew block
    LieAlgebra h = heisenberg(Field::make(5));
    Matrix bh = coadjoint_form(h, unit_chi(h, 2));
    CHECK(bh.at(0, 1) == h.field().one());
    CHECK(bh.at(1, 0) == -h.field().one());
    CHECK(bh.at(0, 2) == h.field().zero());
}

TEST_CASE("family coadjoint pairing matches the explicit vanishing formula") {
    // for X = sum a_i x_i + n1 D + n2 D0 and Y = sum b_i x_i + m1 D + m2 D0,
    // chi[X, Y] = sum_{i<=k-2} (n1 b_i - m1 a_i) chi(x_i)
    //           + (n1 b_{k-1} - m1 a_{k-1}) chi(x_k)
    unsigned k = 4;
    LieAlgebra L = family_build(5, 1, k, FamilyKind::L);
    const Field& F = L.field();
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<std::uint64_t> dist(0, 4);
    for (int trial = 0; trial < 50; ++trial) {
        Vec chi(F, L.dim()), X(F, L.dim()), Y(F, L.dim());
        for (auto& c : chi.a) c = dist(rng);
        for (auto& c : X.a) c = dist(rng);
        for (auto& c : Y.a) c = dist(rng);
        // direct pairing chi([X, Y])
        Vec br = L.bracket(X, Y);
        std::uint64_t direct = 0;
        for (std::size_t t = 0; t < L.dim(); ++t)
            direct = F.add(direct, F.mul(chi.a[t], br.a[t]));
        // the closed formula; basis order (x_1..x_k, D0, D)
        std::uint64_t n1 = X.a[k + 1], m1 = Y.a[k + 1];
        std::uint64_t formula = 0;
        for (unsigned i = 0; i + 2 < k; ++i) {
            std::uint64_t term = F.sub(F.mul(n1, Y.a[i]), F.mul(m1, X.a[i]));
            formula = F.add(formula, F.mul(term, chi.a[i]));
        }
        std::uint64_t last = F.sub(F.mul(n1, Y.a[k - 2]), F.mul(m1, X.a[k - 2]));
        formula = F.add(formula, F.mul(last, chi.a[k - 1]));
        CHECK(direct == formula);
        // and the matrix form computes the same pairing
        Matrix b = coadjoint_form(L, chi);
        std::uint64_t viamat = 0;
        Vec by = b.apply(Y);
        for (std::size_t t = 0; t < L.dim(); ++t)
            viamat = F.add(viamat, F.mul(X.a[t], by.a[t]));
        CHECK(viamat == direct);
    }
}

TEST_CASE("coadjoint form is skew with zero diagonal, exhaustively") {
    std::vector<LieAlgebra> algebras;
    algebras.push_back(heisenberg(Field::make(2)));
    algebras.push_back(heisenberg(Field::make(3)));
    algebras.push_back(family_build(2, 1, 3, FamilyKind::L));   // dim 5, 32 chis
    algebras.push_back(family_build(3, 1, 3, FamilyKind::Lprime));
    for (const auto& alg : algebras) {
        std::uint64_t q = alg.field().order();
        std::uint64_t total = 1;
        for (std::size_t i = 0; i < alg.dim(); ++i) total *= q;
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            Vec chi(alg.field(), alg.dim());
            std::uint64_t v = idx;
            for (std::size_t i = 0; i < alg.dim(); ++i) {
                chi.a[i] = v % q;
                v /= q;
            }
            Matrix b = coadjoint_form(alg, chi);
            for (std::size_t i = 0; i < alg.dim(); ++i) {
                CHECK(b.raw(i, i) == 0);
                for (std::size_t j = 0; j < alg.dim(); ++j)
                    CHECK(b.raw(i, j) == alg.field().neg(b.raw(j, i)));
            }
        }
    }
}

TEST_CASE("stabilizer dimensions") {
    LieAlgebra L = family_build(2, 1, 3, FamilyKind::L);
    CHECK(stabilizer_dim(L, unit_chi(L, 0)) == 3); // chi(x1) = 1: the minimum is attained
    CHECK(stabilizer_dim(L, Vec(L.field(), 5)) == 5);
    CHECK(stabilizer_dim(L, unit_chi(L, 4)) == 5); // chi(D) = 1: [L,L] in ker chi, B = 0
}

TEST_CASE("index_symbolic on the family") {
    for (auto [p, k] :
         std::vector<std::pair<std::uint64_t, unsigned>>{{2, 3}, {3, 4}, {5, 3}}) {
        IndexReport rep = index_symbolic(family_build(p, 1, k, FamilyKind::L));
        CHECK(rep.dim == k + 2);
        CHECK(rep.index == k);
        CHECK(rep.generic_rank == 2);
        CHECK(rep.kw1_exponent == 1);
    }

    IndexReport repp = index_symbolic(family_build(2, 1, 3, FamilyKind::Lprime));
    CHECK(repp.index == 1); // = k - 2: x3 central forces the lower bound
    CHECK(repp.generic_rank == 4);

    IndexReport aben = index_symbolic(abelian(Field::make(7), 4));
    CHECK(aben.index == 4);
    CHECK(aben.kw1_exponent == 0);
}

TEST_CASE("index_sampled agrees with index_symbolic on the family") {
    LieAlgebra L = family_build(2, 1, 3, FamilyKind::L);
    SampledIndex si = index_sampled(L, 100, 8, 2024);
    CHECK(si.min_stabilizer_dim == 3);
    CHECK(stabilizer_dim(L, si.witness_chi) == 3);

    LieAlgebra Lp = family_build(2, 1, 3, FamilyKind::Lprime);
    SampledIndex sip = index_sampled(Lp, 100, 8, 2024);
    CHECK(sip.min_stabilizer_dim == 1);

    LieAlgebra ab = abelian(Field::make(3), 4);
    CHECK(index_sampled(ab, 5, 2, 1).min_stabilizer_dim == 4);
}

TEST_CASE("stabilizers dominate the index and contain the center") {
    for (auto which : {FamilyKind::L, FamilyKind::Lprime}) {
        LieAlgebra alg = family_build(3, 1, 3, which);
        IndexReport rep = index_symbolic(alg);
        CHECK((alg.dim() - rep.index) % 2 == 0);
        // center contains x3 (and D0 for L); find central basis elements
        std::vector<std::size_t> central;
        for (std::size_t i = 0; i < alg.dim(); ++i)
            if (alg.ad_basis(i).is_zero()) central.push_back(i);
        CHECK(!central.empty());
        SampledIndex si = index_sampled(alg, 60, 4, 7);
        CHECK(si.min_stabilizer_dim >= rep.index);
        std::uint64_t q = alg.field().order();
        for (std::uint64_t idx = 0; idx < q * q; ++idx) {
            Vec chi(alg.field(), alg.dim());
            chi.a[0] = idx % q;
            chi.a[alg.dim() - 1] = (idx / q) % q;
            CHECK(stabilizer_dim(alg, chi) >= rep.index);
            Matrix b = coadjoint_form(alg, chi);
            for (std::size_t c : central) {
                Vec e(alg.field(), alg.dim());
                e.a[c] = 1;
                CHECK(b.apply(e).is_zero());
            }
        }
    }
}

TEST_CASE("symbolic index matches the brute-force minimum over all base characters") {
    // Heisenberg over F_2 and F_3: enumerate every chi in F_q^3
    for (std::uint64_t p : {2ULL, 3ULL}) {
        LieAlgebra h = heisenberg(Field::make(p));
        std::uint64_t q = h.field().order();
        std::size_t brute = h.dim();
        for (std::uint64_t idx = 0; idx < q * q * q; ++idx) {
            Vec chi(h.field(), 3);
            std::uint64_t v = idx;
            for (std::size_t i = 0; i < 3; ++i) {
                chi.a[i] = v % q;
                v /= q;
            }
            brute = std::min(brute, stabilizer_dim(h, chi));
        }
        CHECK(index_symbolic(h).index == brute);
    }
}

TEST_CASE("kw1_predicted") {
    CHECK(kw1_predicted(family_build(2, 1, 3, FamilyKind::L)) == 1);
    CHECK(kw1_predicted(family_build(3, 1, 3, FamilyKind::L)) == 1);
    CHECK(kw1_predicted(family_build(2, 1, 3, FamilyKind::Lprime)) == 2);
    CHECK(kw1_predicted(abelian(Field::make(5), 3)) == 0);
}

TEST_CASE("index report serialization") {
    IndexReport rep = index_symbolic(family_build(2, 1, 3, FamilyKind::L));
    std::string kv = rep.to_kv();
    CHECK(kv.find("dim: 5") != std::string::npos);
    CHECK(kv.find("ind: 3") != std::string::npos);
    CHECK(kv.find("kw1_exponent: 1") != std::string::npos);
}

TEST_SUITE_END();
