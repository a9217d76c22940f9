#include "kwlie/liealg.hpp"

#include <algorithm>

namespace kwlie {

namespace {

void check_names(const std::vector<std::string>& names) {
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i].empty()) raise(errc::validation_error, "empty basis name");
        for (std::size_t j = i + 1; j < names.size(); ++j)
            if (names[i] == names[j])
                raise(errc::validation_error, "duplicate basis name '" + names[i] + "'");
    }
}

void strip_zeros(LieAlgebra::Table& t) {
    for (auto it = t.begin(); it != t.end();) {
        auto& terms = it->second;
        terms.erase(std::remove_if(terms.begin(), terms.end(),
                                   [](const BracketTerm& b) { return b.coeff == 0; }),
                    terms.end());
        std::sort(terms.begin(), terms.end(),
                  [](const BracketTerm& a, const BracketTerm& b) { return a.target < b.target; });
        if (terms.empty())
            it = t.erase(it);
        else
            ++it;
    }
}

} // namespace

LieAlgebra LieAlgebra::from_canonical(Field f, std::vector<std::string> names, Table triples) {
    check_names(names);
    strip_zeros(triples);
    for (const auto& [ij, terms] : triples) {
        if (ij.first >= ij.second || ij.second >= names.size())
            raise(errc::internal, "canonical table requires left < right < dim");
        for (const auto& t : terms)
            if (t.target >= names.size()) raise(errc::internal, "bracket target out of range");
    }
    LieAlgebra l;
    l.fld_ = std::move(f);
    l.names_ = std::move(names);
    l.table_ = std::move(triples);
    return l;
}

LieAlgebra LieAlgebra::from_table(Field f, std::vector<std::string> names, Table table) {
    check_names(names);
    strip_zeros(table);
    for (const auto& [ij, terms] : table) {
        if (ij.first >= names.size() || ij.second >= names.size())
            raise(errc::internal, "bracket index out of range");
        for (const auto& t : terms)
            if (t.target >= names.size()) raise(errc::internal, "bracket target out of range");
    }
    LieAlgebra l;
    l.fld_ = std::move(f);
    l.names_ = std::move(names);
    l.table_ = std::move(table);
    return l;
}

std::optional<std::size_t> LieAlgebra::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return i;
    return std::nullopt;
}

Vec LieAlgebra::bracket_basis(std::size_t i, std::size_t j) const {
    Vec v(fld_, dim());
    auto it = table_.find({i, j});
    if (it != table_.end()) {
        for (const auto& t : it->second) v.a[t.target] = fld_.add(v.a[t.target], t.coeff);
        return v;
    }
    it = table_.find({j, i});
    if (it != table_.end())
        for (const auto& t : it->second) v.a[t.target] = fld_.sub(v.a[t.target], t.coeff);
    return v;
}

Vec LieAlgebra::bracket(const Vec& x, const Vec& y) const {
    if (x.fld != fld_ || y.fld != fld_) raise(errc::field_mismatch, "bracket over wrong field");
    if (x.size() != dim() || y.size() != dim()) raise(errc::shape_mismatch, "bracket shape");
    Vec out(fld_, dim());
    for (std::size_t i = 0; i < dim(); ++i) {
        if (!x.a[i]) continue;
        for (std::size_t j = 0; j < dim(); ++j) {
            if (!y.a[j] || i == j) continue;
            std::uint64_t c = fld_.mul(x.a[i], y.a[j]);
            Vec b = bracket_basis(i, j);
            for (std::size_t t = 0; t < dim(); ++t)
                if (b.a[t]) out.a[t] = fld_.add(out.a[t], fld_.mul(c, b.a[t]));
        }
    }
    return out;
}

LieAlgebra::Table LieAlgebra::canonical_table() const {
    Table out;
    for (std::size_t i = 0; i < dim(); ++i) {
        for (std::size_t j = i + 1; j < dim(); ++j) {
            Vec b = bracket_basis(i, j);
            std::vector<BracketTerm> terms;
            for (std::size_t t = 0; t < dim(); ++t)
                if (b.a[t]) terms.push_back({t, b.a[t]});
            if (!terms.empty()) out[{i, j}] = std::move(terms);
        }
    }
    return out;
}

ValidationReport LieAlgebra::validate() const {
    ValidationReport rep;
    // antisymmetry: [e_i, e_i] = 0 and stored opposite orientations must agree
    for (const auto& [ij, terms] : table_) {
        if (ij.first == ij.second && !terms.empty()) {
            rep.ok = false;
            rep.axiom = "antisymmetry";
            rep.where = {names_[ij.first], names_[ij.second]};
            rep.message = "[" + names_[ij.first] + ", " + names_[ij.first] + "] != 0";
            return rep;
        }
    }
    for (std::size_t i = 0; i < dim(); ++i) {
        for (std::size_t j = i + 1; j < dim(); ++j) {
            auto fwd = table_.find({i, j});
            auto bwd = table_.find({j, i});
            if (fwd == table_.end() || bwd == table_.end()) continue;
            Vec vf(fld_, dim()), vb(fld_, dim());
            for (const auto& t : fwd->second) vf.a[t.target] = t.coeff;
            for (const auto& t : bwd->second) vb.a[t.target] = t.coeff;
            if (!(vf + vb).is_zero()) {
                rep.ok = false;
                rep.axiom = "antisymmetry";
                rep.where = {names_[i], names_[j]};
                rep.message = "[" + names_[i] + ", " + names_[j] + "] != -[" + names_[j] + ", " +
                              names_[i] + "]";
                return rep;
            }
        }
    }
    // Jacobi on all basis triples
    for (std::size_t i = 0; i < dim(); ++i) {
        for (std::size_t j = i + 1; j < dim(); ++j) {
            for (std::size_t k = j + 1; k < dim(); ++k) {
                Vec ei(fld_, dim()), ej(fld_, dim()), ek(fld_, dim());
                ei.a[i] = fld_.from_int(1);
                ej.a[j] = fld_.from_int(1);
                ek.a[k] = fld_.from_int(1);
                Vec sum = bracket(bracket_basis(i, j), ek) + bracket(bracket_basis(j, k), ei) +
                          bracket(bracket_basis(k, i), ej);
                if (!sum.is_zero()) {
                    rep.ok = false;
                    rep.axiom = "jacobi";
                    rep.where = {names_[i], names_[j], names_[k]};
                    rep.message = "Jacobi fails on (" + names_[i] + ", " + names_[j] + ", " +
                                  names_[k] + ")";
                    return rep;
                }
            }
        }
    }
    rep.message = "ok";
    return rep;
}

Matrix LieAlgebra::ad(const Vec& x) const {
    if (x.fld != fld_) raise(errc::field_mismatch, "ad over wrong field");
    if (x.size() != dim()) raise(errc::shape_mismatch, "ad shape");
    Matrix m(fld_, dim(), dim());
    for (std::size_t j = 0; j < dim(); ++j) {
        Vec ej(fld_, dim());
        ej.a[j] = fld_.from_int(1);
        Vec img = bracket(x, ej);
        for (std::size_t i = 0; i < dim(); ++i) m.set_raw(i, j, img.a[i]);
    }
    return m;
}

Matrix LieAlgebra::ad_basis(std::size_t i) const {
    Vec x(fld_, dim());
    x.a[i] = fld_.from_int(1);
    return ad(x);
}

LieAlgebra LieAlgebra::base_change(const Field& target) const {
    Embedding emb(fld_, target);
    Table t;
    for (const auto& [ij, terms] : table_) {
        std::vector<BracketTerm> nt;
        nt.reserve(terms.size());
        for (const auto& b : terms) nt.push_back({b.target, emb.apply(b.coeff)});
        t[ij] = std::move(nt);
    }
    return from_table(target, names_, std::move(t));
}

LieAlgebra LieAlgebra::permuted(const std::vector<std::size_t>& order) const {
    if (order.size() != dim()) raise(errc::shape_mismatch, "permutation size");
    std::vector<std::size_t> inv(dim());
    for (std::size_t n = 0; n < dim(); ++n) inv[order[n]] = n;
    std::vector<std::string> names(dim());
    for (std::size_t n = 0; n < dim(); ++n) names[n] = names_[order[n]];
    Table t;
    for (const auto& [ij, terms] : table_) {
        std::size_t ni = inv[ij.first], nj = inv[ij.second];
        bool flip = ni > nj;
        if (flip) std::swap(ni, nj);
        std::vector<BracketTerm> nt;
        nt.reserve(terms.size());
        for (const auto& b : terms)
            nt.push_back({inv[b.target], flip ? fld_.neg(b.coeff) : b.coeff});
        t[{ni, nj}] = std::move(nt);
    }
    return from_table(fld_, std::move(names), std::move(t));
}

bool LieAlgebra::operator==(const LieAlgebra& o) const {
    if (fld_ != o.fld_ || names_ != o.names_) return false;
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = i + 1; j < dim(); ++j)
            if (!(bracket_basis(i, j) == o.bracket_basis(i, j))) return false;
    return true;
}

std::optional<std::pair<std::size_t, std::size_t>> leibniz_violation(const LieAlgebra& l,
                                                                     const Matrix& d) {
    if (d.rows() != l.dim() || d.cols() != l.dim())
        raise(errc::shape_mismatch, "derivation matrix shape");
    for (std::size_t i = 0; i < l.dim(); ++i) {
        Vec dei = d.apply([&] {
            Vec e(l.field(), l.dim());
            e.a[i] = l.field().from_int(1);
            return e;
        }());
        for (std::size_t j = i + 1; j < l.dim(); ++j) {
            Vec ej(l.field(), l.dim());
            ej.a[j] = l.field().from_int(1);
            Vec dej = d.apply(ej);
            Vec ei(l.field(), l.dim());
            ei.a[i] = l.field().from_int(1);
            Vec lhs = d.apply(l.bracket_basis(i, j));
            Vec rhs = l.bracket(dei, ej) + l.bracket(ei, dej);
            if (!(lhs == rhs)) return std::make_pair(i, j);
        }
    }
    return std::nullopt;
}

LieAlgebra semidirect(const LieAlgebra& l, const DerivationMatrix& d, const std::string& name) {
    auto bad = leibniz_violation(l, d.mat);
    if (bad)
        raise(errc::not_a_derivation, d.label + " violates Leibniz on (" + l.name(bad->first) +
                                          ", " + l.name(bad->second) + ")");
    std::size_t n = l.dim();
    std::vector<std::string> names = l.names();
    names.push_back(name);
    LieAlgebra::Table t = l.canonical_table();
    const Field& F = l.field();
    for (std::size_t i = 0; i < n; ++i) {
        Vec ei(F, n);
        ei.a[i] = F.from_int(1);
        Vec img = d.mat.apply(ei); // [name, e_i] = D e_i, stored as [e_i, name] = -D e_i
        std::vector<BracketTerm> terms;
        for (std::size_t k = 0; k < n; ++k)
            if (img.a[k]) terms.push_back({k, F.neg(img.a[k])});
        if (!terms.empty()) t[{i, n}] = std::move(terms);
    }
    return LieAlgebra::from_canonical(F, std::move(names), std::move(t));
}

FamilyKind family_kind_from_string(const std::string& s) {
    if (s == "A") return FamilyKind::A;
    if (s == "A_D" || s == "AD") return FamilyKind::AD;
    if (s == "L") return FamilyKind::L;
    if (s == "Lprime" || s == "L'") return FamilyKind::Lprime;
    raise(errc::parse_error, "unknown family kind '" + s + "' (want A, A_D, L or Lprime)");
}

const char* family_kind_name(FamilyKind k) {
    switch (k) {
        case FamilyKind::A: return "A";
        case FamilyKind::AD: return "A_D";
        case FamilyKind::L: return "L";
        case FamilyKind::Lprime: return "Lprime";
    }
    return "?";
}

LieAlgebra family_build(std::uint64_t p, unsigned m, unsigned k, FamilyKind which) {
    if (k < 3) raise(errc::bad_k, "family requires k >= 3, got " + std::to_string(k));
    Field F = Field::make(p, m);
    std::vector<std::string> xnames;
    for (unsigned i = 1; i <= k; ++i) xnames.push_back("x" + std::to_string(i));
    LieAlgebra A = LieAlgebra::from_canonical(F, xnames, {});
    if (which == FamilyKind::A) return A;

    Matrix dmat(F, k, k);
    for (unsigned i = 0; i + 2 < k; ++i) dmat.set_raw(i, i, F.from_int(1)); // D x_i = x_i
    dmat.set_raw(k - 1, k - 2, F.from_int(1));                              // D x_{k-1} = x_k
    LieAlgebra AD = semidirect(A, {dmat, "D"}, "D");
    if (which == FamilyKind::AD) return AD;

    if (which == FamilyKind::L) {
        Matrix zero(F, k + 1, k + 1);
        LieAlgebra L = semidirect(AD, {zero, "D0"}, "D0"); // basis (x.., D, D0)
        // fixed basis order for L: (x_1..x_k, D0, D)
        std::vector<std::size_t> order;
        for (unsigned i = 0; i < k; ++i) order.push_back(i);
        order.push_back(k + 1);
        order.push_back(k);
        return L.permuted(order);
    }

    Matrix dprime = mat_p_power(AD.ad_basis(k), 1); // ad(D)^p on A_D
    return semidirect(AD, {dprime, "D'"}, "D'");
}

Subspace restricted_closure(const LieAlgebra& l) {
    const Field& F = l.field();
    std::size_t n = l.dim();
    EchelonBasis eb(F, n * n);
    for (std::size_t i = 0; i < n; ++i) eb.insert(l.ad_basis(i).flatten());
    for (;;) {
        std::vector<Matrix> mats;
        mats.reserve(eb.dim());
        for (const auto& row : eb.rows()) mats.push_back(Matrix::unflatten(row, n, n));
        bool grew = false;
        for (const auto& b : mats)
            if (eb.insert(mat_p_power(b, 1).flatten())) grew = true;
        for (std::size_t i = 0; i < mats.size(); ++i)
            for (std::size_t j = i + 1; j < mats.size(); ++j)
                if (eb.insert((mats[i] * mats[j] - mats[j] * mats[i]).flatten())) grew = true;
        if (!grew) break;
    }
    // re-verify closure on the final basis
    std::vector<Matrix> mats;
    for (const auto& row : eb.rows()) mats.push_back(Matrix::unflatten(row, n, n));
    for (const auto& b : mats)
        if (!eb.contains(mat_p_power(b, 1).flatten()))
            raise(errc::internal, "closure not p-closed");
    for (std::size_t i = 0; i < mats.size(); ++i)
        for (std::size_t j = i + 1; j < mats.size(); ++j)
            if (!eb.contains((mats[i] * mats[j] - mats[j] * mats[i]).flatten()))
                raise(errc::internal, "closure not bracket-closed");
    for (std::size_t i = 0; i < n; ++i)
        if (!eb.contains(l.ad_basis(i).flatten()))
            raise(errc::internal, "closure lost ad(L)");
    return subspace_from(eb);
}

RestrictabilityReport is_restrictable(const LieAlgebra& l) {
    std::vector<Matrix> ads;
    ads.reserve(l.dim());
    for (std::size_t i = 0; i < l.dim(); ++i) ads.push_back(l.ad_basis(i));
    for (std::size_t i = 0; i < l.dim(); ++i) {
        Matrix pw = mat_p_power(ads[i], 1);
        if (!solve_membership(pw, ads)) {
            RestrictabilityReport rep;
            rep.restrictable = false;
            rep.witness_name = l.name(i);
            rep.witness_power = std::move(pw);
            return rep;
        }
    }
    return {};
}

std::vector<FieldElement> central_p_polynomial(const LieAlgebra& l, std::size_t e_index,
                                               unsigned min_p_degree) {
    const Field& F = l.field();
    Matrix power = l.ad_basis(e_index); // ad(e)^{p^i}, starting at i = 0
    std::vector<Matrix> history;
    for (;;) {
        std::optional<std::vector<FieldElement>> coords;
        if (history.size() >= min_p_degree) coords = solve_membership(power, history);
        if (coords) {
            std::vector<FieldElement> lambda;
            lambda.reserve(coords->size() + 1);
            for (const auto& c : *coords) lambda.push_back(-c);
            lambda.push_back(F.one());
            return lambda;
        }
        history.push_back(power);
        power = mat_p_power(power, 1);
        if (history.size() > l.dim() * l.dim() + 1)
            raise(errc::internal, "p-polynomial search did not terminate");
    }
}

FieldElement eval_p_polynomial(const std::vector<FieldElement>& lambda, const FieldElement& x) {
    const Field& F = x.field();
    std::uint64_t p = F.p();
    FieldElement acc = F.zero();
    FieldElement power = x; // x^{p^i}
    for (std::size_t i = 0; i < lambda.size(); ++i) {
        acc = acc + lambda[i] * power;
        power = power.pow(p);
    }
    return acc;
}

Matrix eval_p_polynomial(const std::vector<FieldElement>& lambda, const Matrix& a) {
    const Field& F = a.field();
    Matrix acc(F, a.rows(), a.cols());
    Matrix power = a;
    for (std::size_t i = 0; i < lambda.size(); ++i) {
        acc = acc + power.scaled(lambda[i].raw());
        power = mat_p_power(power, 1);
    }
    return acc;
}

} // namespace kwlie
