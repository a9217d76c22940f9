#include "kwlie/polymat.hpp"

#include <algorithm>
#include <sstream>

namespace kwlie {

bool GradedLexLess::operator()(const std::vector<std::uint16_t>& a,
                               const std::vector<std::uint16_t>& b) const {
    unsigned da = 0, db = 0;
    for (auto x : a) da += x;
    for (auto x : b) db += x;
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

MultiPoly MultiPoly::constant(const Field& f, unsigned nvars, std::uint64_t c) {
    MultiPoly r(f, nvars);
    if (c) r.terms_[Exp(nvars, 0)] = c;
    return r;
}

MultiPoly MultiPoly::variable(const Field& f, unsigned nvars, unsigned idx) {
    MultiPoly r(f, nvars);
    Exp e(nvars, 0);
    e[idx] = 1;
    r.terms_[e] = f.from_int(1);
    return r;
}

unsigned MultiPoly::total_degree() const {
    if (terms_.empty()) return 0;
    unsigned d = 0;
    for (auto x : terms_.rbegin()->first) d += x;
    return d;
}

void MultiPoly::add_term(const Exp& e, std::uint64_t c) {
    if (!c) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_[e] = c;
    } else {
        it->second = fld_.add(it->second, c);
        if (!it->second) terms_.erase(it);
    }
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
    MultiPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
    MultiPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, fld_.neg(c));
    return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
    MultiPoly r(fld_, nvars_);
    Exp e(nvars_, 0);
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            for (unsigned v = 0; v < nvars_; ++v)
                e[v] = static_cast<std::uint16_t>(ea[v] + eb[v]);
            r.add_term(e, fld_.mul(ca, cb));
        }
    }
    return r;
}

MultiPoly MultiPoly::exact_div(const MultiPoly& d) const {
    if (d.is_zero()) raise(errc::div_by_zero, "polynomial division by zero");
    MultiPoly q(fld_, nvars_);
    MultiPoly rem = *this;
    const auto& dlt = *d.terms_.rbegin(); // leading term of divisor
    std::uint64_t dinv = fld_.inv(dlt.second);
    Exp e(nvars_, 0);
    while (!rem.is_zero()) {
        const auto& rlt = *rem.terms_.rbegin();
        bool divides = true;
        for (unsigned v = 0; v < nvars_; ++v) {
            if (rlt.first[v] < dlt.first[v]) {
                divides = false;
                break;
            }
            e[v] = static_cast<std::uint16_t>(rlt.first[v] - dlt.first[v]);
        }
        if (!divides) raise(errc::internal, "exact_div: inexact division");
        std::uint64_t c = fld_.mul(rlt.second, dinv);
        MultiPoly t(fld_, nvars_);
        t.terms_[e] = c;
        q.add_term(e, c);
        rem = rem - t * d;
    }
    return q;
}

std::string MultiPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        if (!first) os << " + ";
        first = false;
        os << fld_.to_string(it->second);
        for (unsigned v = 0; v < nvars_; ++v) {
            if (!it->first[v]) continue;
            os << "*t" << (v + 1);
            if (it->first[v] > 1) os << "^" << it->first[v];
        }
    }
    return os.str();
}

LinearPolyMatrix::LinearPolyMatrix(Field f, std::size_t rows, std::size_t cols, unsigned nvars)
    : fld_(std::move(f)), rows_(rows), cols_(cols), nvars_(nvars),
      c_(rows * cols * (nvars + 1), 0) {}

std::uint64_t LinearPolyMatrix::coeff(std::size_t i, std::size_t j, unsigned v) const {
    return c_[(i * cols_ + j) * (nvars_ + 1) + v];
}

void LinearPolyMatrix::set_coeff(std::size_t i, std::size_t j, unsigned v, std::uint64_t c) {
    c_[(i * cols_ + j) * (nvars_ + 1) + v] = c;
}

MultiPoly LinearPolyMatrix::entry_poly(std::size_t i, std::size_t j) const {
    MultiPoly p(fld_, nvars_);
    for (unsigned v = 0; v < nvars_; ++v) {
        std::uint64_t c = coeff(i, j, v);
        if (!c) continue;
        MultiPoly::Exp e(nvars_, 0);
        e[v] = 1;
        p.add_term(e, c);
    }
    std::uint64_t c0 = coeff(i, j, nvars_);
    if (c0) p.add_term(MultiPoly::Exp(nvars_, 0), c0);
    return p;
}

Matrix LinearPolyMatrix::eval(const std::vector<std::uint64_t>& point_raw,
                              const Field& target) const {
    if (point_raw.size() != nvars_) raise(errc::shape_mismatch, "evaluation point size");
    Embedding emb(fld_, target);
    Matrix out(target, rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            std::uint64_t acc = emb.apply(coeff(i, j, nvars_));
            for (unsigned v = 0; v < nvars_; ++v) {
                std::uint64_t c = coeff(i, j, v);
                if (c) acc = target.add(acc, target.mul(emb.apply(c), point_raw[v]));
            }
            out.set_raw(i, j, acc);
        }
    }
    return out;
}

std::size_t symbolic_rank(const LinearPolyMatrix& lpm) {
    const Field& F = lpm.field();
    std::size_t rows = lpm.rows(), cols = lpm.cols();
    std::vector<std::vector<MultiPoly>> a(rows, std::vector<MultiPoly>(cols));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) a[i][j] = lpm.entry_poly(i, j);

    MultiPoly prev = MultiPoly::constant(F, lpm.nvars(), F.from_int(1));
    std::size_t r = 0;
    while (r < rows && r < cols) {
        // first nonzero entry of the trailing submatrix in row-major order
        std::size_t pi = rows, pj = cols;
        for (std::size_t i = r; i < rows && pi == rows; ++i)
            for (std::size_t j = r; j < cols; ++j)
                if (!a[i][j].is_zero()) {
                    pi = i;
                    pj = j;
                    break;
                }
        if (pi == rows) break;
        std::swap(a[pi], a[r]);
        if (pj != r)
            for (std::size_t i = 0; i < rows; ++i) std::swap(a[i][pj], a[i][r]);
        const MultiPoly piv = a[r][r];
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = r + 1; j < cols; ++j)
                a[i][j] = (a[i][j] * piv - a[i][r] * a[r][j]).exact_div(prev);
            a[i][r] = MultiPoly(F, lpm.nvars());
        }
        prev = piv;
        ++r;
    }
    return r;
}

std::size_t sampled_rank(const LinearPolyMatrix& m, unsigned ext_factor, unsigned trials,
                         std::uint64_t seed) {
    Field target = ext_factor <= 1 && m.field().m() == 1
                       ? m.field()
                       : Field::make(m.field().p(), m.field().m() * std::max(1u, ext_factor));
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> dist(0, target.order() - 1);
    std::size_t best = 0;
    std::vector<std::uint64_t> pt(m.nvars());
    for (unsigned t = 0; t < trials; ++t) {
        for (auto& x : pt) x = dist(rng);
        best = std::max(best, rank_kernel(m.eval(pt, target)).rank);
    }
    return best;
}

} // namespace kwlie
