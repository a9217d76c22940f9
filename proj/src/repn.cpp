#include "kwlie/repn.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace kwlie {

ModuleAction regular_module(const ReducedAlgebra& ra) {
    return ModuleAction{ra.fld, ra.dim, ra.gens};
}

ModuleAction extend_scalars(const ModuleAction& m, unsigned factor) {
    if (factor <= 1) return m;
    Field big = Field::make(m.fld.p(), m.fld.m() * factor);
    Embedding emb(m.fld, big);
    ModuleAction out{big, m.dim, {}};
    for (const auto& g : m.gens) {
        Matrix gg(big, m.dim, m.dim);
        for (std::size_t i = 0; i < m.dim; ++i)
            for (std::size_t j = 0; j < m.dim; ++j) gg.set_raw(i, j, emb.apply(g.raw(i, j)));
        out.gens.push_back(std::move(gg));
    }
    return out;
}

bool check_relations(const ModuleAction& m, const LieAlgebra& l) {
    if (m.gens.size() != l.dim()) return false;
    Embedding emb(l.field(), m.fld);
    for (std::size_t i = 0; i < l.dim(); ++i) {
        for (std::size_t j = i + 1; j < l.dim(); ++j) {
            Matrix lhs = m.gens[i] * m.gens[j] - m.gens[j] * m.gens[i];
            Matrix rhs(m.fld, m.dim, m.dim);
            Vec br = l.bracket_basis(i, j);
            for (std::size_t t = 0; t < l.dim(); ++t)
                if (br.a[t]) rhs = rhs + m.gens[t].scaled(emb.apply(br.a[t]));
            if (lhs != rhs) return false;
        }
    }
    return true;
}

Subspace spin(const ModuleAction& m, const Vec& v) {
    if (v.is_zero()) raise(errc::zero_vector, "spin of the zero vector");
    if (v.fld != m.fld || v.size() != m.dim) raise(errc::shape_mismatch, "spin vector");
    EchelonBasis eb(m.fld, m.dim);
    std::deque<Vec> queue;
    eb.insert(v);
    queue.push_back(v);
    while (!queue.empty() && eb.dim() < m.dim) {
        Vec cur = std::move(queue.front());
        queue.pop_front();
        for (const auto& g : m.gens) {
            Vec w = g.apply(cur);
            if (eb.insert(w)) queue.push_back(std::move(w));
        }
    }
    return subspace_from(eb);
}

namespace {

std::vector<std::size_t> pivot_cols(const Matrix& rref_rows) {
    std::vector<std::size_t> p;
    for (std::size_t i = 0; i < rref_rows.rows(); ++i) {
        std::size_t c = 0;
        while (c < rref_rows.cols() && rref_rows.raw(i, c) == 0) ++c;
        p.push_back(c);
    }
    return p;
}

// coordinates of u in the RREF row basis; residual must vanish
Vec coords_in_rref(const Matrix& basis, const std::vector<std::size_t>& pivots, Vec u) {
    const Field& F = basis.field();
    Vec c(F, basis.rows());
    for (std::size_t s = 0; s < basis.rows(); ++s) {
        std::uint64_t x = u.a[pivots[s]];
        if (!x) continue;
        c.a[s] = x;
        for (std::size_t j = 0; j < basis.cols(); ++j)
            u.a[j] = F.sub(u.a[j], F.mul(x, basis.raw(s, j)));
    }
    if (!u.is_zero()) raise(errc::internal, "vector not in claimed invariant subspace");
    return c;
}

ModuleAction restrict_action(const ModuleAction& m, const Subspace& w) {
    const Field& F = m.fld;
    auto pivots = pivot_cols(w.basis);
    ModuleAction out{F, w.dim(), {}};
    for (const auto& g : m.gens) {
        Matrix s(F, w.dim(), w.dim());
        for (std::size_t r = 0; r < w.dim(); ++r) {
            Vec c = coords_in_rref(w.basis, pivots, g.apply(w.basis.row(r)));
            for (std::size_t i = 0; i < w.dim(); ++i) s.set_raw(i, r, c.a[i]);
        }
        out.gens.push_back(std::move(s));
    }
    return out;
}

ModuleAction quotient_action(const ModuleAction& m, const Subspace& w) {
    const Field& F = m.fld;
    auto pivots = pivot_cols(w.basis);
    std::vector<std::size_t> free_cols;
    {
        std::size_t pi = 0;
        for (std::size_t c = 0; c < m.dim; ++c) {
            if (pi < pivots.size() && pivots[pi] == c) {
                ++pi;
            } else {
                free_cols.push_back(c);
            }
        }
    }
    ModuleAction out{F, free_cols.size(), {}};
    for (const auto& g : m.gens) {
        Matrix q(F, free_cols.size(), free_cols.size());
        for (std::size_t c = 0; c < free_cols.size(); ++c) {
            Vec u(F, m.dim);
            u.a[free_cols[c]] = F.from_int(1);
            u = g.apply(u);
            // reduce modulo W: clear the pivot coordinates
            for (std::size_t s = 0; s < w.dim(); ++s) {
                std::uint64_t x = u.a[pivots[s]];
                if (!x) continue;
                for (std::size_t j = 0; j < m.dim; ++j)
                    u.a[j] = F.sub(u.a[j], F.mul(x, w.basis.raw(s, j)));
            }
            for (std::size_t r = 0; r < free_cols.size(); ++r) q.set_raw(r, c, u.a[free_cols[r]]);
        }
        out.gens.push_back(std::move(q));
    }
    return out;
}

Matrix random_algebra_element(const ModuleAction& m, std::mt19937_64& rng, unsigned attempt,
                              std::string& desc) {
    const Field& F = m.fld;
    std::uniform_int_distribution<std::uint64_t> dist(0, F.order() - 1);
    std::size_t ng = m.gens.size();
    Matrix theta = Matrix::identity(F, m.dim).scaled(dist(rng));
    for (std::size_t i = 0; i < ng; ++i) {
        std::uint64_t c = dist(rng);
        if (c) theta = theta + m.gens[i].scaled(c);
    }
    for (std::size_t i = 0; i < ng; ++i)
        for (std::size_t j = i; j < ng; ++j) {
            std::uint64_t c = dist(rng);
            if (c) theta = theta + (m.gens[i] * m.gens[j]).scaled(c);
        }
    unsigned words = 0;
    if (attempt >= 20 && ng > 0) {
        // small fields can starve degree-2 sampling of split elements
        std::uniform_int_distribution<std::size_t> gi(0, ng - 1);
        words = 4;
        for (unsigned t = 0; t < words; ++t) {
            std::uint64_t c = dist(rng);
            Matrix w = m.gens[gi(rng)] * m.gens[gi(rng)] * m.gens[gi(rng)];
            if (c) theta = theta + w.scaled(c);
        }
    }
    std::ostringstream os;
    os << "random element (attempt " << attempt << ", degree <= " << (attempt >= 20 ? 3 : 2) << ")";
    desc = os.str();
    return theta;
}

struct Leaf {
    ModuleAction action;
    FactorCertificate cert;
};

constexpr unsigned kMaxSplitAttempts = 200;

void chop_rec(const ModuleAction& m, std::mt19937_64& rng, std::vector<Leaf>& leaves) {
    const Field& F = m.fld;
    if (m.dim == 0) raise(errc::internal, "chop of zero module");
    if (m.dim == 1) {
        leaves.push_back({m, FactorCertificate{"trivial (dim 1)", "", 1, false}});
        return;
    }
    ModuleAction mt{F, m.dim, {}};
    for (const auto& g : m.gens) mt.gens.push_back(g.transpose());

    for (unsigned attempt = 0; attempt < kMaxSplitAttempts; ++attempt) {
        std::string desc;
        Matrix theta = random_algebra_element(m, rng, attempt, desc);
        UPoly mp = min_poly(theta);
        if (mp.degree() < 1) continue;
        auto facs = factor(mp, rng);
        for (const auto& pf : facs) {
            if (pf.factor.degree() == static_cast<int>(m.dim)) {
                // the minimal polynomial is irreducible of full degree: M is
                // already irreducible as a module over F[theta]
                FactorCertificate cert;
                cert.split_element = desc;
                cert.factor_poly = pf.factor.str();
                cert.nullity = m.dim;
                cert.transpose_checked = false;
                leaves.push_back({m, cert});
                return;
            }
            Matrix gtheta = eval_poly(pf.factor, theta);
            Matrix null = rank_kernel(gtheta).kernel; // rows
            if (null.rows() == 0) continue;           // impossible for minpoly factors
            for (std::size_t r = 0; r < null.rows(); ++r) {
                Subspace s = spin(m, null.row(r));
                if (s.dim() < m.dim) {
                    chop_rec(restrict_action(m, s), rng, leaves);
                    chop_rec(quotient_action(m, s), rng, leaves);
                    return;
                }
            }
            if (null.rows() == static_cast<std::size_t>(pf.factor.degree())) {
                // Norton: kernel vectors all spin full and the g-socle is cyclic;
                // the transpose side settles irreducibility either way.
                Matrix nullt = rank_kernel(gtheta.transpose()).kernel;
                Subspace st = spin(mt, nullt.row(0));
                if (st.dim() < m.dim) {
                    Subspace w;
                    w.ambient = m.dim;
                    w.basis = rank_kernel(st.basis).kernel; // annihilator of the dual spin
                    chop_rec(restrict_action(m, w), rng, leaves);
                    chop_rec(quotient_action(m, w), rng, leaves);
                    return;
                }
                FactorCertificate cert;
                cert.split_element = desc;
                cert.factor_poly = pf.factor.str();
                cert.nullity = null.rows();
                cert.transpose_checked = true;
                leaves.push_back({m, cert});
                return;
            }
        }
    }
    raise(errc::retry_exhausted, "no split element found after " +
                                     std::to_string(kMaxSplitAttempts) +
                                     " attempts; rerun with a new seed");
}

// spin schedule from a generating vector, with a solver for coordinates
struct SpinSchedule {
    std::vector<Vec> raw;                                  // raw[0] = v
    std::vector<std::pair<std::size_t, std::size_t>> steps; // (gen, parent), for raw[1..]
    Matrix inv_basis;                                       // inverse of [raw columns]

    Vec express(const Vec& u) const { return inv_basis.apply(u); }
};

Matrix invert(const Matrix& a) {
    const Field& F = a.field();
    std::size_t n = a.rows();
    Matrix aug(F, n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug.set_raw(i, j, a.raw(i, j));
        aug.set_raw(i, n + i, F.from_int(1));
    }
    // eliminate
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t sel = c;
        while (sel < n && aug.raw(sel, c) == 0) ++sel;
        if (sel == n) raise(errc::internal, "singular matrix in invert()");
        if (sel != c)
            for (std::size_t j = 0; j < 2 * n; ++j) {
                auto t = aug.raw(c, j);
                aug.set_raw(c, j, aug.raw(sel, j));
                aug.set_raw(sel, j, t);
            }
        std::uint64_t inv = F.inv(aug.raw(c, c));
        for (std::size_t j = 0; j < 2 * n; ++j) aug.set_raw(c, j, F.mul(aug.raw(c, j), inv));
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c) continue;
            std::uint64_t f = aug.raw(i, c);
            if (!f) continue;
            for (std::size_t j = 0; j < 2 * n; ++j)
                aug.set_raw(i, j, F.sub(aug.raw(i, j), F.mul(f, aug.raw(c, j))));
        }
    }
    Matrix out(F, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out.set_raw(i, j, aug.raw(i, n + j));
    return out;
}

SpinSchedule spin_schedule(const ModuleAction& m, const Vec& v) {
    SpinSchedule sch;
    EchelonBasis eb(m.fld, m.dim);
    eb.insert(v);
    sch.raw.push_back(v);
    std::size_t next = 0;
    while (eb.dim() < m.dim && next < sch.raw.size()) {
        Vec cur = sch.raw[next];
        for (std::size_t gi = 0; gi < m.gens.size(); ++gi) {
            Vec w = m.gens[gi].apply(cur);
            if (eb.insert(w)) {
                sch.raw.push_back(w);
                sch.steps.emplace_back(gi, next);
                if (eb.dim() == m.dim) break;
            }
        }
        ++next;
    }
    if (eb.dim() != m.dim) raise(errc::internal, "spin schedule did not span (module reducible?)");
    Matrix basis(m.fld, m.dim, m.dim);
    for (std::size_t t = 0; t < sch.raw.size(); ++t)
        for (std::size_t i = 0; i < m.dim; ++i) basis.set_raw(i, t, sch.raw[t].a[i]);
    sch.inv_basis = invert(basis);
    return sch;
}

// dim of the space of maps S -> T commuting with the action (dims must agree)
unsigned hom_space_dim(const ModuleAction& s, const ModuleAction& t) {
    const Field& F = s.fld;
    std::size_t n = s.dim;
    Vec v(F, n);
    v.a[0] = F.from_int(1);
    SpinSchedule sch = spin_schedule(s, v);
    // W[t] carries psi(raw[t]) = W[t] * x for the unknown x = psi(v)
    std::vector<Matrix> w(n);
    w[0] = Matrix::identity(F, n);
    for (std::size_t step = 0; step < sch.steps.size(); ++step) {
        auto [gi, parent] = sch.steps[step];
        w[step + 1] = t.gens[gi] * w[parent];
    }
    Matrix rows(F, s.gens.size() * n * n, n);
    std::size_t row = 0;
    for (std::size_t gi = 0; gi < s.gens.size(); ++gi) {
        for (std::size_t ti = 0; ti < n; ++ti) {
            Vec c = sch.express(s.gens[gi].apply(sch.raw[ti]));
            Matrix con = t.gens[gi] * w[ti];
            for (std::size_t l = 0; l < n; ++l)
                if (c.a[l]) con = con - w[l].scaled(c.a[l]);
            for (std::size_t i = 0; i < n; ++i, ++row)
                for (std::size_t j = 0; j < n; ++j) rows.set_raw(row, j, con.raw(i, j));
        }
    }
    return static_cast<unsigned>(rank_kernel(rows).kernel.rows());
}

} // namespace

unsigned endo_degree(const ModuleAction& irreducible) {
    return hom_space_dim(irreducible, irreducible);
}

AbsoluteDims absolute_dims(const ModuleAction& irreducible) {
    unsigned e = endo_degree(irreducible);
    if (e == 0 || irreducible.dim % e != 0)
        raise(errc::internal, "endomorphism degree does not divide the dimension");
    return {e, irreducible.dim / e};
}

bool modules_isomorphic(const ModuleAction& s, const ModuleAction& t) {
    if (s.dim != t.dim || s.fld != t.fld || s.gens.size() != t.gens.size()) return false;
    return hom_space_dim(s, t) > 0;
}

std::size_t ChopResult::dim_accounted() const {
    std::size_t total = 0;
    for (const auto& f : factors) total += f.action.dim * f.multiplicity;
    return total;
}

std::size_t ChopResult::max_abs_dim() const {
    std::size_t best = 0;
    for (const auto& f : factors) best = std::max(best, f.abs_dim);
    return best;
}

std::string ChopResult::factors_str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i) os << ", ";
        os << factors[i].action.dim << "^" << factors[i].multiplicity;
        if (factors[i].endo_degree > 1) os << "(e=" << factors[i].endo_degree << ")";
    }
    return os.str();
}

ChopResult chop(const ModuleAction& m, std::uint64_t seed) {
    if (m.dim < 1) raise(errc::shape_mismatch, "chop needs dim >= 1");
    std::mt19937_64 rng(seed);
    std::vector<Leaf> leaves;
    chop_rec(m, rng, leaves);

    ChopResult res;
    res.seed = seed;
    res.module_dim = m.dim;
    for (auto& leaf : leaves) {
        bool merged = false;
        for (auto& grp : res.factors) {
            if (grp.action.dim != leaf.action.dim) continue;
            if (modules_isomorphic(grp.action, leaf.action)) {
                ++grp.multiplicity;
                merged = true;
                break;
            }
        }
        if (!merged) {
            ChopFactor f;
            f.action = std::move(leaf.action);
            f.cert = std::move(leaf.cert);
            f.multiplicity = 1;
            f.endo_degree = endo_degree(f.action);
            if (f.action.dim % f.endo_degree != 0)
                raise(errc::internal, "endomorphism degree does not divide factor dimension");
            f.abs_dim = f.action.dim / f.endo_degree;
            res.factors.push_back(std::move(f));
        }
    }
    std::stable_sort(res.factors.begin(), res.factors.end(),
                     [](const ChopFactor& a, const ChopFactor& b) {
                         return a.action.dim > b.action.dim;
                     });
    if (res.dim_accounted() != m.dim) raise(errc::internal, "chop lost dimensions");
    return res;
}

bool spin_certificate(const ModuleAction& m, std::uint64_t seed, unsigned count) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> dist(0, m.fld.order() - 1);
    for (unsigned t = 0; t < count; ++t) {
        Vec v(m.fld, m.dim);
        do {
            for (auto& x : v.a) x = dist(rng);
        } while (v.is_zero());
        if (spin(m, v).dim() != m.dim) return false;
    }
    return true;
}

std::string emit_module(const ModuleAction& m) {
    std::ostringstream os;
    os << "kwlie-module v1\n";
    os << "dim " << m.dim << "\n";
    os << "field " << m.fld.p() << " " << m.fld.m();
    for (auto c : m.fld.modulus()) os << " " << c;
    os << "\n";
    os << "generators " << m.gens.size() << "\n";
    for (const auto& g : m.gens) {
        for (std::size_t i = 0; i < m.dim; ++i) {
            for (std::size_t j = 0; j < m.dim; ++j) {
                if (j) os << " ";
                os << m.fld.to_string(g.raw(i, j));
            }
            os << "\n";
        }
    }
    return os.str();
}

ModuleAction parse_module(const std::string& text) {
    std::istringstream is(text);
    std::string tok;
    auto need = [&](const std::string& what) {
        if (!(is >> tok)) raise(errc::parse_error, "module file truncated at " + what);
        return tok;
    };
    if (need("header") != "kwlie-module" || need("version") != "v1")
        raise(errc::parse_error, "not a kwlie-module v1 file");
    if (need("dim keyword") != "dim") raise(errc::parse_error, "expected 'dim'");
    std::size_t n = std::stoull(need("dim value"));
    if (need("field keyword") != "field") raise(errc::parse_error, "expected 'field'");
    std::uint64_t p = std::stoull(need("p"));
    unsigned m = static_cast<unsigned>(std::stoul(need("m")));
    std::optional<std::vector<std::uint64_t>> mod;
    if (m > 1) {
        std::vector<std::uint64_t> cs;
        for (unsigned i = 0; i <= m; ++i) cs.push_back(std::stoull(need("modulus coefficient")));
        mod = cs;
    }
    Field F = Field::make(p, m, mod);
    if (need("generators keyword") != "generators") raise(errc::parse_error, "expected 'generators'");
    std::size_t ng = std::stoull(need("generator count"));
    ModuleAction out{F, n, {}};
    for (std::size_t g = 0; g < ng; ++g) {
        Matrix mat(F, n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) mat.set_raw(i, j, F.parse(need("matrix entry")));
        out.gens.push_back(std::move(mat));
    }
    return out;
}

namespace {

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace

SweepReport m_sweep(std::uint64_t p, unsigned m, unsigned k, FamilyKind which,
                    const CharacterSet& chars, std::uint64_t seed, std::size_t budget) {
    LieAlgebra alg = family_build(p, m, k, which);
    const Field& F = alg.field();

    SweepReport rep;
    rep.p = p;
    rep.m = m;
    rep.k = k;
    rep.which = which;
    rep.seed = seed;
    rep.algebra_dim = alg.dim();

    // the family p-center cut: x_i^p relations for the abelian ideal, exact
    // minimal p-polynomials for the adjoined derivations (gives dim p^{k+2} for L)
    std::vector<unsigned> floors = family_p_degree_floor(k, alg.dim());
    std::size_t reduced_dim = 1;
    for (std::size_t i = 0; i < alg.dim(); ++i) {
        auto lambda = central_p_polynomial(alg, i, floors[i]);
        for (std::size_t r = 0; r + 1 < lambda.size(); ++r) {
            reduced_dim *= p;
            if (reduced_dim > budget)
                raise(errc::budget_exceeded,
                      "reduced dimension " + std::to_string(reduced_dim) + "+ exceeds budget " +
                          std::to_string(budget) + " (lower k or raise the budget)");
        }
    }
    rep.reduced_dim = reduced_dim;

    IndexReport ir = index_symbolic(alg);
    rep.kw1_exponent = ir.kw1_exponent;
    rep.kw1_predicted_dim = 1;
    for (unsigned i = 0; i < ir.kw1_exponent; ++i) rep.kw1_predicted_dim *= p;

    std::vector<Vec> chis;
    if (!chars.explicit_chis.empty()) {
        chis = chars.explicit_chis;
    } else {
        if (chars.all_base) {
            long double count = 1;
            for (std::size_t i = 0; i < alg.dim(); ++i) count *= static_cast<long double>(F.order());
            if (count > 1048576.0L)
                raise(errc::budget_exceeded, "base character enumeration too large");
            std::uint64_t total = 1;
            for (std::size_t i = 0; i < alg.dim(); ++i) total *= F.order();
            for (std::uint64_t idx = 0; idx < total; ++idx) {
                Vec chi(F, alg.dim());
                std::uint64_t v = idx;
                for (std::size_t i = 0; i < alg.dim(); ++i) {
                    chi.a[i] = v % F.order();
                    v /= F.order();
                }
                chis.push_back(std::move(chi));
            }
        }
        if (chars.random_ext_count > 0) {
            Field ext = Field::make(p, m * chars.ext_factor);
            std::mt19937_64 rng(split_seed(seed, 0));
            std::uniform_int_distribution<std::uint64_t> dist(0, ext.order() - 1);
            for (unsigned t = 0; t < chars.random_ext_count; ++t) {
                Vec chi(ext, alg.dim());
                for (auto& x : chi.a) x = dist(rng);
                chis.push_back(std::move(chi));
            }
        }
    }

    for (std::size_t ci = 0; ci < chis.size(); ++ci) {
        const Vec& chi = chis[ci];
        LieAlgebra lc = (chi.fld == F) ? alg : alg.base_change(chi.fld);
        auto mu = chi_to_mu(alg, chi, floors);
        ReducedAlgebra ra = reduced_algebra(lc, mu, floors);
        ChopResult cr = chop(regular_module(ra), split_seed(seed, ci + 1));

        SweepRow row;
        row.chi = chi.str();
        row.field_desc = chi.fld.describe();
        for (const auto& f : cr.factors) {
            row.factors.push_back({f.action.dim, f.multiplicity, f.endo_degree, f.abs_dim});
            row.max_abs = std::max(row.max_abs, f.abs_dim);
            if (f.abs_dim % (p * p) != 0) row.all_abs_div_p2 = false;
        }
        rep.observed_max_abs = std::max(rep.observed_max_abs, row.max_abs);
        rep.rows.push_back(std::move(row));
    }

    rep.max_div_p = rep.observed_max_abs % p == 0;
    rep.max_div_p2 = rep.observed_max_abs % (p * p) == 0;
    std::string name = family_kind_name(which);
    if (rep.observed_max_abs > rep.kw1_predicted_dim)
        rep.verdict = "KW1 FAILS for " + name + " (observed max " +
                      std::to_string(rep.observed_max_abs) + " > predicted " +
                      std::to_string(rep.kw1_predicted_dim) + ")";
    else if (rep.observed_max_abs == rep.kw1_predicted_dim)
        rep.verdict = "KW1 HOLDS (observed max equals prediction " +
                      std::to_string(rep.kw1_predicted_dim) + ")";
    else
        rep.verdict = "INCONCLUSIVE (observed max " + std::to_string(rep.observed_max_abs) +
                      " below prediction " + std::to_string(rep.kw1_predicted_dim) + ")";
    return rep;
}

} // namespace kwlie
