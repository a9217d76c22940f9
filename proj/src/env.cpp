#include "kwlie/env.hpp"

#include <algorithm>
#include <sstream>

namespace kwlie {

unsigned expvec_degree(const ExpVec& e) {
    unsigned d = 0;
    for (auto x : e) d += x;
    return d;
}

bool PbwLess::operator()(const ExpVec& a, const ExpVec& b) const {
    unsigned da = expvec_degree(a), db = expvec_degree(b);
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

unsigned PbwElement::degree() const {
    unsigned d = 0;
    for (const auto& [e, c] : terms) d = std::max(d, expvec_degree(e));
    return d;
}

PbwElement Envelope::zero(unsigned cap) const { return PbwElement{cap, {}}; }

PbwElement Envelope::one(unsigned cap) const {
    PbwElement u{cap, {}};
    u.terms[ExpVec(alg_.dim(), 0)] = field().from_int(1);
    return u;
}

PbwElement Envelope::gen(std::size_t i, unsigned cap) const {
    if (cap < 1) raise(errc::cap_overflow, "cap < 1 cannot hold a generator");
    PbwElement u{cap, {}};
    ExpVec e(alg_.dim(), 0);
    e[i] = 1;
    u.terms[e] = field().from_int(1);
    return u;
}

PbwElement Envelope::monomial(const ExpVec& e, std::uint64_t coeff, unsigned cap) const {
    if (e.size() != alg_.dim()) raise(errc::shape_mismatch, "exponent vector size");
    if (expvec_degree(e) > cap) raise(errc::cap_overflow, "monomial degree exceeds cap");
    PbwElement u{cap, {}};
    if (coeff) u.terms[e] = coeff;
    return u;
}

PbwElement Envelope::from_lie(const Vec& x, unsigned cap) const {
    if (x.size() != alg_.dim()) raise(errc::shape_mismatch, "element size");
    if (cap < 1) raise(errc::cap_overflow, "cap < 1 cannot hold a Lie element");
    PbwElement u{cap, {}};
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!x.a[i]) continue;
        ExpVec e(alg_.dim(), 0);
        e[i] = 1;
        u.terms[e] = x.a[i];
    }
    return u;
}

namespace {

void add_term(const Field& F, PbwElement& u, const ExpVec& e, std::uint64_t c) {
    if (!c) return;
    auto it = u.terms.find(e);
    if (it == u.terms.end()) {
        u.terms[e] = c;
    } else {
        it->second = F.add(it->second, c);
        if (!it->second) u.terms.erase(it);
    }
}

} // namespace

PbwElement Envelope::add(const PbwElement& u, const PbwElement& v) const {
    if (u.cap != v.cap) raise(errc::cap_overflow, "mixed caps");
    PbwElement r = u;
    for (const auto& [e, c] : v.terms) add_term(field(), r, e, c);
    return r;
}

PbwElement Envelope::sub(const PbwElement& u, const PbwElement& v) const {
    if (u.cap != v.cap) raise(errc::cap_overflow, "mixed caps");
    PbwElement r = u;
    for (const auto& [e, c] : v.terms) add_term(field(), r, e, field().neg(c));
    return r;
}

PbwElement Envelope::scale(const PbwElement& u, std::uint64_t c) const {
    PbwElement r{u.cap, {}};
    for (const auto& [e, x] : u.terms) add_term(field(), r, e, field().mul(x, c));
    return r;
}

void Envelope::straighten_into(const std::vector<std::uint32_t>& word, std::uint64_t coeff,
                               PbwElement& out) const {
    const Field& F = field();
    if (word.size() > out.cap)
        raise(errc::cap_overflow, "word of degree " + std::to_string(word.size()) +
                                      " exceeds cap " + std::to_string(out.cap));
    std::vector<std::pair<std::vector<std::uint32_t>, std::uint64_t>> stack;
    stack.emplace_back(word, coeff);
    while (!stack.empty()) {
        auto [w, c] = std::move(stack.back());
        stack.pop_back();
        if (!c) continue;
        // first descent
        std::size_t s = w.size();
        for (std::size_t i = 0; i + 1 < w.size(); ++i)
            if (w[i] > w[i + 1]) {
                s = i;
                break;
            }
        if (s == w.size()) {
            ExpVec e(alg_.dim(), 0);
            for (auto g : w) ++e[g];
            add_term(F, out, e, c);
            continue;
        }
        // e_a e_b = e_b e_a + [e_a, e_b] with a = w[s] > b = w[s+1]
        Vec br = alg_.bracket_basis(w[s], w[s + 1]);
        auto swapped = w;
        std::swap(swapped[s], swapped[s + 1]);
        stack.emplace_back(std::move(swapped), c);
        for (std::size_t t = 0; t < br.size(); ++t) {
            if (!br.a[t]) continue;
            std::vector<std::uint32_t> contracted;
            contracted.reserve(w.size() - 1);
            contracted.insert(contracted.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(s));
            contracted.push_back(static_cast<std::uint32_t>(t));
            contracted.insert(contracted.end(), w.begin() + static_cast<std::ptrdiff_t>(s) + 2,
                              w.end());
            stack.emplace_back(std::move(contracted), F.mul(c, br.a[t]));
        }
    }
}

namespace {

std::vector<std::uint32_t> expand_expvec(const ExpVec& e) {
    std::vector<std::uint32_t> w;
    for (std::size_t i = 0; i < e.size(); ++i)
        for (std::uint32_t t = 0; t < e[i]; ++t) w.push_back(static_cast<std::uint32_t>(i));
    return w;
}

} // namespace

PbwElement Envelope::mul(const PbwElement& u, const PbwElement& v) const {
    if (u.cap != v.cap) raise(errc::cap_overflow, "mixed caps");
    const Field& F = field();
    PbwElement r{u.cap, {}};
    for (const auto& [ea, ca] : u.terms) {
        for (const auto& [eb, cb] : v.terms) {
            unsigned d = expvec_degree(ea) + expvec_degree(eb);
            if (d > u.cap)
                raise(errc::cap_overflow, "product term of degree " + std::to_string(d) +
                                              " exceeds cap " + std::to_string(u.cap) +
                                              " (raise the cap)");
            auto word = expand_expvec(ea);
            auto wb = expand_expvec(eb);
            word.insert(word.end(), wb.begin(), wb.end());
            straighten_into(word, F.mul(ca, cb), r);
        }
    }
    return r;
}

PbwElement Envelope::commutator(const PbwElement& u, const PbwElement& v) const {
    return sub(mul(u, v), mul(v, u));
}

PbwElement Envelope::pow(const PbwElement& u, unsigned n) const {
    PbwElement r = one(u.cap);
    for (unsigned i = 0; i < n; ++i) r = mul(r, u);
    return r;
}

std::string Envelope::str(const PbwElement& u) const {
    if (u.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = u.terms.rbegin(); it != u.terms.rend(); ++it) {
        if (!first) os << " + ";
        first = false;
        bool unit = it->second == field().from_int(1);
        bool constant = expvec_degree(it->first) == 0;
        if (!unit || constant) os << field().to_string(it->second);
        bool anyvar = false;
        for (std::size_t i = 0; i < it->first.size(); ++i) {
            if (!it->first[i]) continue;
            if (anyvar || !unit) os << "*";
            anyvar = true;
            os << alg_.name(i);
            if (it->first[i] > 1) os << "^" << it->first[i];
        }
    }
    return os.str();
}

IsoWitness iso_build(std::uint64_t p, unsigned m, unsigned k, unsigned cap) {
    if (k < 3) raise(errc::bad_k, "iso witness requires k >= 3, got " + std::to_string(k));
    if (cap == 0) cap = static_cast<unsigned>(p) + 2;
    if (cap < static_cast<unsigned>(p) + 2)
        raise(errc::cap_overflow, "iso witness needs cap >= p + 2");
    IsoWitness w;
    w.source = family_build(p, m, k, FamilyKind::Lprime); // basis (x.., D, D')
    w.target = family_build(p, m, k, FamilyKind::L);      // basis (x.., D0, D)
    w.cap = cap;
    Envelope env(w.target);
    std::size_t tgt_d0 = k, tgt_d = k + 1;
    w.src_d_index = k;
    w.src_dprime_index = k + 1;
    w.tgt_d0_index = tgt_d0;
    for (unsigned i = 0; i < k; ++i) w.images.push_back(env.gen(i, cap));
    w.images.push_back(env.gen(tgt_d, cap)); // D -> D
    // D' -> D^p + D0
    PbwElement dp = env.pow(env.gen(tgt_d, cap), static_cast<unsigned>(p));
    w.images.push_back(env.add(dp, env.gen(tgt_d0, cap)));
    return w;
}

IsoReport iso_verify(const IsoWitness& w) {
    IsoReport rep;
    if (w.source.field() != w.target.field())
        raise(errc::field_mismatch, "witness fields disagree");
    Envelope env(w.target);
    std::size_t n = w.source.dim();
    if (w.images.size() != n) raise(errc::shape_mismatch, "witness image count");
    for (std::size_t i = 0; i < n && rep.brackets_ok; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            // [phi(a), phi(b)] must equal phi([a, b]); the diagonal pairs are
            // identically zero on both sides and are skipped (computing
            // phi(D')^2 would need cap >= 2p + 2).
            PbwElement lhs = env.commutator(w.images[i], w.images[j]);
            Vec br = w.source.bracket_basis(i, j);
            PbwElement rhs = env.zero(w.cap);
            for (std::size_t t = 0; t < n; ++t)
                if (br.a[t]) rhs = env.add(rhs, env.scale(w.images[t], br.a[t]));
            if (!lhs.same_terms(rhs)) {
                rep.brackets_ok = false;
                rep.first_failure = "[phi(" + w.source.name(i) + "), phi(" + w.source.name(j) +
                                    ")] != phi([" + w.source.name(i) + ", " + w.source.name(j) +
                                    "])";
                rep.log.push_back(rep.first_failure + ": lhs = " + env.str(lhs) +
                                  ", rhs = " + env.str(rhs));
                break;
            }
            if (!lhs.is_zero())
                rep.log.push_back("[phi(" + w.source.name(i) + "), phi(" + w.source.name(j) +
                                  ")] = " + env.str(lhs));
        }
    }
    // generator surjectivity: the missing target generator D0 must be
    // recoverable from the image, as phi(D') - phi(D)^p
    if (w.src_d_index && w.src_dprime_index && w.tgt_d0_index) {
        PbwElement dp =
            env.pow(w.images[*w.src_d_index], static_cast<unsigned>(w.target.field().p()));
        PbwElement rec = env.sub(w.images[*w.src_dprime_index], dp);
        PbwElement want = env.gen(*w.tgt_d0_index, w.cap);
        rep.surjective_ok = rec.same_terms(want);
        if (rep.surjective_ok) {
            rep.log.push_back(w.target.name(*w.tgt_d0_index) + " = phi(" +
                              w.source.name(*w.src_dprime_index) + ") - phi(" +
                              w.source.name(*w.src_d_index) + ")^p recovered; image generates");
        } else {
            rep.log.push_back("surjectivity: phi(" + w.source.name(*w.src_dprime_index) +
                              ") - phi(" + w.source.name(*w.src_d_index) + ")^p = " +
                              env.str(rec) + " != " + w.target.name(*w.tgt_d0_index) +
                              "; generated subalgebra misses " + w.target.name(*w.tgt_d0_index) +
                              " at this cap");
            if (rep.first_failure.empty()) rep.first_failure = "surjectivity";
        }
    } else {
        // hand-built witness: require every target generator to appear directly
        std::vector<bool> covered(w.target.dim(), false);
        for (const auto& img : w.images) {
            if (img.terms.size() != 1) continue;
            const auto& [e, c] = *img.terms.begin();
            if (expvec_degree(e) != 1 || c != w.target.field().from_int(1)) continue;
            for (std::size_t t = 0; t < e.size(); ++t)
                if (e[t] == 1) covered[t] = true;
        }
        for (std::size_t t = 0; t < covered.size(); ++t) {
            if (!covered[t]) {
                rep.surjective_ok = false;
                rep.log.push_back("surjectivity: no direct image covers " + w.target.name(t));
            }
        }
    }
    return rep;
}

ExpVec ReducedAlgebra::monomial_of(std::size_t index) const {
    ExpVec e(bounds.size(), 0);
    for (std::size_t i = 0; i < bounds.size(); ++i) {
        e[i] = static_cast<std::uint32_t>(index % bounds[i]);
        index /= bounds[i];
    }
    return e;
}

std::size_t ReducedAlgebra::index_of(const ExpVec& e) const {
    std::size_t idx = 0, stride = 1;
    for (std::size_t i = 0; i < bounds.size(); ++i) {
        idx += e[i] * stride;
        stride *= bounds[i];
    }
    return idx;
}

namespace {

// rewrite exponents above their bound via e^{p^r} = mu - sum lambda_i e^{p^i}
void reduce_into(const ReducedAlgebra& ra, const Field& F, const ExpVec& e0, std::uint64_t c0,
                 std::vector<std::uint64_t>& column) {
    std::vector<std::pair<ExpVec, std::uint64_t>> stack;
    stack.emplace_back(e0, c0);
    std::uint64_t p = F.p();
    while (!stack.empty()) {
        auto [e, c] = std::move(stack.back());
        stack.pop_back();
        if (!c) continue;
        std::size_t over = e.size();
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] >= ra.bounds[i]) {
                over = i;
                break;
            }
        if (over == e.size()) {
            std::size_t idx = ra.index_of(e);
            column[idx] = F.add(column[idx], c);
            continue;
        }
        ExpVec base = e;
        base[over] -= static_cast<std::uint32_t>(ra.bounds[over]);
        const auto& lambda = ra.p_polys[over];
        // mu term
        ExpVec t0 = base;
        stack.emplace_back(std::move(t0), F.mul(c, ra.mu[over].raw()));
        // -lambda_i e^{p^i} terms, i < r
        std::uint64_t pe = 1;
        for (std::size_t i = 0; i + 1 < lambda.size(); ++i) {
            if (!lambda[i].is_zero()) {
                ExpVec t = base;
                t[over] += static_cast<std::uint32_t>(pe);
                stack.emplace_back(std::move(t), F.mul(c, F.neg(lambda[i].raw())));
            }
            pe *= p;
        }
    }
}

} // namespace

ReducedAlgebra reduced_algebra(const LieAlgebra& l, const std::vector<FieldElement>& mu,
                               const std::vector<unsigned>& p_degree_floor) {
    const Field& F = l.field();
    if (mu.size() != l.dim()) raise(errc::shape_mismatch, "need one character value per basis element");
    for (const auto& v : mu)
        if (v.field() != F) raise(errc::field_mismatch, "character value in wrong field");
    if (!p_degree_floor.empty() && p_degree_floor.size() != l.dim())
        raise(errc::shape_mismatch, "need one p-degree floor per basis element");

    ReducedAlgebra ra;
    ra.fld = F;
    ra.alg = l;
    ra.mu = mu;
    std::uint64_t p = F.p();
    std::size_t total = 1;
    unsigned cap = 1;
    for (std::size_t i = 0; i < l.dim(); ++i) {
        unsigned floor = p_degree_floor.empty() ? 1u : p_degree_floor[i];
        auto lambda = central_p_polynomial(l, i, floor);
        std::uint64_t bound = 1;
        for (std::size_t r = 0; r + 1 < lambda.size(); ++r) bound *= p;
        ra.p_polys.push_back(std::move(lambda));
        ra.bounds.push_back(bound);
        total *= bound;
        cap += static_cast<unsigned>(bound - 1);
        if (total > (1ULL << 24)) raise(errc::budget_exceeded, "reduced dimension exceeds 2^24");
    }
    ra.dim = total;

    Envelope env(l);
    for (std::size_t g = 0; g < l.dim(); ++g) {
        Matrix mg(F, total, total);
        for (std::size_t j = 0; j < total; ++j) {
            ExpVec mono = ra.monomial_of(j);
            std::vector<std::uint32_t> word;
            word.push_back(static_cast<std::uint32_t>(g));
            for (std::size_t i = 0; i < mono.size(); ++i)
                for (std::uint32_t t = 0; t < mono[i]; ++t)
                    word.push_back(static_cast<std::uint32_t>(i));
            PbwElement prod{cap, {}};
            env.straighten_into(word, F.from_int(1), prod);
            std::vector<std::uint64_t> column(total, 0);
            for (const auto& [e, c] : prod.terms) reduce_into(ra, F, e, c, column);
            for (std::size_t i = 0; i < total; ++i) mg.set_raw(i, j, column[i]);
        }
        ra.gens.push_back(std::move(mg));
    }

    // sanity: the construction must satisfy the defining relations
    if (total <= 128) {
        for (std::size_t i = 0; i < l.dim(); ++i) {
            for (std::size_t j = i + 1; j < l.dim(); ++j) {
                Matrix lhs = ra.gens[i] * ra.gens[j] - ra.gens[j] * ra.gens[i];
                Matrix rhs(F, total, total);
                Vec br = l.bracket_basis(i, j);
                for (std::size_t t = 0; t < l.dim(); ++t)
                    if (br.a[t]) rhs = rhs + ra.gens[t].scaled(br.a[t]);
                if (lhs != rhs) raise(errc::internal, "reduced algebra violates bracket relations");
            }
            Matrix fe = eval_p_polynomial(ra.p_polys[i], ra.gens[i]);
            Matrix want = Matrix::identity(F, total).scaled(ra.mu[i].raw());
            if (fe != want) raise(errc::internal, "reduced algebra violates p-polynomial relation");
        }
    } else {
        std::mt19937_64 rng(0x5eedULL);
        std::uniform_int_distribution<std::uint64_t> dist(0, F.order() - 1);
        Vec v(F, total);
        for (auto& x : v.a) x = dist(rng);
        for (std::size_t i = 0; i < l.dim(); ++i) {
            for (std::size_t j = i + 1; j < l.dim(); ++j) {
                Vec lhs = ra.gens[i].apply(ra.gens[j].apply(v)) - ra.gens[j].apply(ra.gens[i].apply(v));
                Vec rhs(F, total);
                Vec br = l.bracket_basis(i, j);
                for (std::size_t t = 0; t < l.dim(); ++t)
                    if (br.a[t]) rhs = rhs + ra.gens[t].apply(v).scaled(br.a[t]);
                if (!(lhs == rhs)) raise(errc::internal, "reduced algebra violates bracket relations");
            }
        }
    }
    return ra;
}

std::vector<FieldElement> chi_to_mu(const LieAlgebra& l, const Vec& chi,
                                    const std::vector<unsigned>& p_degree_floor) {
    if (chi.size() != l.dim()) raise(errc::shape_mismatch, "character size");
    if (!p_degree_floor.empty() && p_degree_floor.size() != l.dim())
        raise(errc::shape_mismatch, "need one p-degree floor per basis element");
    Embedding emb(l.field(), chi.fld);
    std::vector<FieldElement> mu;
    mu.reserve(l.dim());
    for (std::size_t i = 0; i < l.dim(); ++i) {
        unsigned floor = p_degree_floor.empty() ? 1u : p_degree_floor[i];
        auto lambda = central_p_polynomial(l, i, floor);
        std::vector<FieldElement> lifted;
        lifted.reserve(lambda.size());
        for (const auto& c : lambda) lifted.push_back(emb(c));
        mu.push_back(eval_p_polynomial(lifted, chi.at(i)));
    }
    return mu;
}

std::vector<unsigned> family_p_degree_floor(unsigned k, std::size_t dim) {
    std::vector<unsigned> floors(dim, 0);
    for (unsigned i = 0; i < k && i < dim; ++i) floors[i] = 1;
    return floors;
}

} // namespace kwlie
