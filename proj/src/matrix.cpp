#include "kwlie/matrix.hpp"

#include <algorithm>
#include <sstream>

namespace kwlie {

bool Vec::is_zero() const {
    return std::all_of(a.begin(), a.end(), [](std::uint64_t x) { return x == 0; });
}

void Vec::set(std::size_t i, const FieldElement& x) {
    if (x.field() != fld) raise(errc::field_mismatch, "vector entry from different field");
    a[i] = x.raw();
}

Vec Vec::operator+(const Vec& o) const {
    if (fld != o.fld || a.size() != o.a.size()) raise(errc::shape_mismatch, "vector add");
    Vec r(fld, a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r.a[i] = fld.add(a[i], o.a[i]);
    return r;
}

Vec Vec::operator-(const Vec& o) const {
    if (fld != o.fld || a.size() != o.a.size()) raise(errc::shape_mismatch, "vector sub");
    Vec r(fld, a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r.a[i] = fld.sub(a[i], o.a[i]);
    return r;
}

Vec Vec::scaled(std::uint64_t s) const {
    Vec r(fld, a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r.a[i] = fld.mul(a[i], s);
    return r;
}

std::string Vec::str() const {
    std::string s;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) s += ';';
        s += fld.to_string(a[i]);
    }
    return s;
}

Matrix Matrix::identity(const Field& f, std::size_t n) {
    Matrix r(f, n, n);
    for (std::size_t i = 0; i < n; ++i) r.set_raw(i, i, f.from_int(1));
    return r;
}

void Matrix::set(std::size_t i, std::size_t j, const FieldElement& x) {
    if (x.field() != fld_) raise(errc::field_mismatch, "matrix entry from different field");
    set_raw(i, j, x.raw());
}

bool Matrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](std::uint64_t x) { return x == 0; });
}

Matrix Matrix::operator+(const Matrix& o) const {
    if (fld_ != o.fld_ || rows_ != o.rows_ || cols_ != o.cols_)
        raise(errc::shape_mismatch, "matrix add");
    Matrix r(fld_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = fld_.add(a_[i], o.a_[i]);
    return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
    if (fld_ != o.fld_ || rows_ != o.rows_ || cols_ != o.cols_)
        raise(errc::shape_mismatch, "matrix sub");
    Matrix r(fld_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = fld_.sub(a_[i], o.a_[i]);
    return r;
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (fld_ != o.fld_) raise(errc::field_mismatch, "matrix mul");
    if (cols_ != o.rows_) raise(errc::shape_mismatch, "matrix mul shape");
    Matrix r(fld_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            std::uint64_t x = raw(i, k);
            if (!x) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) {
                std::uint64_t y = o.raw(k, j);
                if (!y) continue;
                r.set_raw(i, j, fld_.add(r.raw(i, j), fld_.mul(x, y)));
            }
        }
    }
    return r;
}

Matrix Matrix::scaled(std::uint64_t s) const {
    Matrix r(fld_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = fld_.mul(a_[i], s);
    return r;
}

Matrix Matrix::transpose() const {
    Matrix r(fld_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.set_raw(j, i, raw(i, j));
    return r;
}

Vec Matrix::apply(const Vec& v) const {
    if (v.fld != fld_) raise(errc::field_mismatch, "matrix apply");
    if (v.size() != cols_) raise(errc::shape_mismatch, "matrix apply shape");
    Vec r(fld_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        std::uint64_t acc = 0;
        for (std::size_t j = 0; j < cols_; ++j) {
            std::uint64_t x = raw(i, j);
            if (x && v.a[j]) acc = fld_.add(acc, fld_.mul(x, v.a[j]));
        }
        r.a[i] = acc;
    }
    return r;
}

Vec Matrix::row(std::size_t i) const {
    Vec r(fld_, cols_);
    for (std::size_t j = 0; j < cols_; ++j) r.a[j] = raw(i, j);
    return r;
}

Matrix Matrix::pow(std::uint64_t e) const {
    if (rows_ != cols_) raise(errc::not_square, "power of non-square matrix");
    Matrix out = identity(fld_, rows_), base = *this;
    while (e) {
        if (e & 1) out = out * base;
        base = base * base;
        e >>= 1;
    }
    return out;
}

Vec Matrix::flatten() const {
    Vec r(fld_, rows_ * cols_);
    r.a = a_;
    return r;
}

Matrix Matrix::unflatten(const Vec& v, std::size_t rows, std::size_t cols) {
    if (v.size() != rows * cols) raise(errc::shape_mismatch, "unflatten size");
    Matrix r(v.fld, rows, cols);
    for (std::size_t i = 0; i < v.size(); ++i) r.set_raw(i / cols, i % cols, v.a[i]);
    return r;
}

std::string Matrix::str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < rows_; ++i) {
        os << "[";
        for (std::size_t j = 0; j < cols_; ++j) {
            if (j) os << " ";
            os << fld_.to_string(raw(i, j));
        }
        os << "]\n";
    }
    return os.str();
}

Matrix mat_p_power(const Matrix& a, unsigned e) {
    if (a.rows() != a.cols()) raise(errc::not_square, "p-power of non-square matrix");
    Matrix out = a;
    if (e == 0) return out;
    std::uint64_t p = a.field().p();
    for (unsigned i = 0; i < e; ++i) out = out.pow(p);
    return out;
}

namespace {

// in-place reduced row echelon; returns pivot columns
std::vector<std::size_t> rref(Matrix& m) {
    const Field& F = m.field();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t sel = r;
        while (sel < m.rows() && m.raw(sel, c) == 0) ++sel;
        if (sel == m.rows()) continue;
        if (sel != r)
            for (std::size_t j = 0; j < m.cols(); ++j) {
                auto t = m.raw(r, j);
                m.set_raw(r, j, m.raw(sel, j));
                m.set_raw(sel, j, t);
            }
        std::uint64_t inv = F.inv(m.raw(r, c));
        for (std::size_t j = c; j < m.cols(); ++j) m.set_raw(r, j, F.mul(m.raw(r, j), inv));
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r) continue;
            std::uint64_t f = m.raw(i, c);
            if (!f) continue;
            for (std::size_t j = c; j < m.cols(); ++j)
                m.set_raw(i, j, F.sub(m.raw(i, j), F.mul(f, m.raw(r, j))));
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

} // namespace

RankKernel rank_kernel(const Matrix& a) {
    const Field& F = a.field();
    Matrix m = a;
    auto pivots = rref(m);
    RankKernel out;
    out.rank = pivots.size();

    std::vector<std::size_t> free_cols;
    {
        std::size_t pi = 0;
        for (std::size_t c = 0; c < a.cols(); ++c) {
            if (pi < pivots.size() && pivots[pi] == c) {
                ++pi;
            } else {
                free_cols.push_back(c);
            }
        }
    }
    Matrix ker(F, free_cols.size(), a.cols());
    for (std::size_t t = 0; t < free_cols.size(); ++t) {
        std::size_t fc = free_cols[t];
        ker.set_raw(t, fc, F.from_int(1));
        for (std::size_t pi = 0; pi < pivots.size(); ++pi)
            ker.set_raw(t, pivots[pi], F.neg(m.raw(pi, fc)));
    }
    rref(ker); // canonical form
    out.kernel = std::move(ker);
    return out;
}

std::optional<Vec> solve_membership(const Vec& v, const std::vector<Vec>& basis) {
    const Field& F = v.fld;
    for (const auto& b : basis) {
        if (b.fld != F) raise(errc::field_mismatch, "membership basis field");
        if (b.size() != v.size()) raise(errc::shape_mismatch, "membership basis shape");
    }
    // solve B^T c = v by eliminating the augmented system
    std::size_t n = v.size(), k = basis.size();
    Matrix aug(F, n, k + 1);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < n; ++i) aug.set_raw(i, j, basis[j].a[i]);
    for (std::size_t i = 0; i < n; ++i) aug.set_raw(i, k, v.a[i]);
    auto pivots = rref(aug);
    Vec coords(F, k);
    for (std::size_t pi = 0; pi < pivots.size(); ++pi) {
        if (pivots[pi] == k) return std::nullopt; // pivot in augmented column: inconsistent
        coords.a[pivots[pi]] = aug.raw(pi, k);
    }
    return coords;
}

std::optional<std::vector<FieldElement>> solve_membership(const Matrix& v,
                                                          const std::vector<Matrix>& basis) {
    std::vector<Vec> flat;
    flat.reserve(basis.size());
    for (const auto& b : basis) {
        if (b.rows() != v.rows() || b.cols() != v.cols())
            raise(errc::shape_mismatch, "membership matrices must share one shape");
        flat.push_back(b.flatten());
    }
    auto c = solve_membership(v.flatten(), flat);
    if (!c) return std::nullopt;
    std::vector<FieldElement> out;
    out.reserve(c->size());
    for (std::size_t i = 0; i < c->size(); ++i) out.push_back(c->at(i));
    return out;
}

Vec EchelonBasis::reduce(const Vec& v) const {
    if (v.fld != fld_) raise(errc::field_mismatch, "echelon reduce");
    if (v.size() != ambient_) raise(errc::shape_mismatch, "echelon reduce shape");
    Vec r = v;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        std::uint64_t c = r.a[pivots_[i]];
        if (!c) continue;
        for (std::size_t j = 0; j < ambient_; ++j)
            r.a[j] = fld_.sub(r.a[j], fld_.mul(c, rows_[i].a[j]));
    }
    return r;
}

bool EchelonBasis::insert(const Vec& v) {
    Vec r = reduce(v);
    std::size_t piv = 0;
    while (piv < ambient_ && r.a[piv] == 0) ++piv;
    if (piv == ambient_) return false;
    std::uint64_t inv = fld_.inv(r.a[piv]);
    for (std::size_t j = 0; j < ambient_; ++j) r.a[j] = fld_.mul(r.a[j], inv);
    // back-substitute into existing rows, keep rows sorted by pivot
    for (auto& row : rows_) {
        std::uint64_t c = row.a[piv];
        if (!c) continue;
        for (std::size_t j = 0; j < ambient_; ++j) row.a[j] = fld_.sub(row.a[j], fld_.mul(c, r.a[j]));
    }
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), piv);
    std::size_t idx = static_cast<std::size_t>(pos - pivots_.begin());
    pivots_.insert(pos, piv);
    rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(idx), std::move(r));
    return true;
}

Matrix EchelonBasis::as_matrix() const {
    Matrix m(fld_, rows_.size(), ambient_);
    for (std::size_t i = 0; i < rows_.size(); ++i)
        for (std::size_t j = 0; j < ambient_; ++j) m.set_raw(i, j, rows_[i].a[j]);
    return m;
}

Subspace subspace_from(const EchelonBasis& e) {
    Subspace s;
    s.ambient = e.ambient_dim();
    s.basis = e.as_matrix();
    return s;
}

namespace {

// Echelon rows with a parallel combination record: row_i = sum comb_i[j] * gen_j
// where gen_j are the vectors fed to insert() in order. Rows keep the RREF
// invariant (1 at own pivot, 0 at the pivots of all other rows).
struct TrackedEchelon {
    const Field& F;
    std::size_t n, max_gens;
    std::vector<Vec> rows;
    std::vector<Vec> combs;
    std::vector<std::size_t> pivots;
    std::size_t gen_count = 0;

    TrackedEchelon(const Field& f, std::size_t ambient, std::size_t max_generators)
        : F(f), n(ambient), max_gens(max_generators) {}

    // returns the combination expressing v in terms of prior generators if
    // dependent, nullopt if v was independent (and then stores it)
    std::optional<Vec> insert(const Vec& v) {
        Vec r = v;
        Vec comb(F, max_gens);
        comb.a[gen_count] = F.from_int(1);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            std::uint64_t c = r.a[pivots[i]];
            if (!c) continue;
            for (std::size_t j = 0; j < n; ++j) r.a[j] = F.sub(r.a[j], F.mul(c, rows[i].a[j]));
            for (std::size_t j = 0; j < max_gens; ++j)
                comb.a[j] = F.sub(comb.a[j], F.mul(c, combs[i].a[j]));
        }
        ++gen_count;
        std::size_t piv = 0;
        while (piv < n && r.a[piv] == 0) ++piv;
        if (piv == n) return comb;
        std::uint64_t inv = F.inv(r.a[piv]);
        for (std::size_t j = 0; j < n; ++j) r.a[j] = F.mul(r.a[j], inv);
        for (std::size_t j = 0; j < max_gens; ++j) comb.a[j] = F.mul(comb.a[j], inv);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            std::uint64_t c = rows[i].a[piv];
            if (!c) continue;
            for (std::size_t j = 0; j < n; ++j)
                rows[i].a[j] = F.sub(rows[i].a[j], F.mul(c, r.a[j]));
            for (std::size_t j = 0; j < max_gens; ++j)
                combs[i].a[j] = F.sub(combs[i].a[j], F.mul(c, comb.a[j]));
        }
        rows.push_back(std::move(r));
        combs.push_back(std::move(comb));
        pivots.push_back(piv);
        return std::nullopt;
    }
};

} // namespace

UPoly min_poly(const Matrix& a) {
    if (a.rows() != a.cols()) raise(errc::not_square, "min_poly of non-square matrix");
    const Field& F = a.field();
    std::size_t n = a.rows();
    if (n == 0) return UPoly::constant(F, F.from_int(1));
    UPoly f = UPoly::constant(F, F.from_int(1));
    for (std::size_t s = 0; s < n; ++s) {
        Vec v(F, n);
        v.a[s] = F.from_int(1);
        // w = f(a) v; if zero, this start vector is already annihilated
        Vec w(F, n);
        {
            const auto& cs = f.coeffs();
            for (std::size_t i = cs.size(); i-- > 0;) {
                w = a.apply(w);
                if (cs[i])
                    for (std::size_t t = 0; t < n; ++t)
                        w.a[t] = F.add(w.a[t], F.mul(cs[i], v.a[t]));
            }
        }
        if (w.is_zero()) continue;
        // local minimal polynomial of w: first dependence in w, aw, a^2 w, ...
        TrackedEchelon te(F, n, n + 1);
        Vec cur = w;
        for (;;) {
            auto dep = te.insert(cur);
            if (dep) {
                UPoly g(F, dep->a);
                f = f * g.monic();
                break;
            }
            cur = a.apply(cur);
        }
        if (f.degree() >= static_cast<int>(n)) break; // cannot grow further
    }
    return f;
}

Matrix eval_poly(const UPoly& f, const Matrix& a) {
    if (a.rows() != a.cols()) raise(errc::not_square, "eval_poly");
    const Field& F = a.field();
    std::size_t n = a.rows();
    const auto& cs = f.coeffs();
    if (cs.empty()) return Matrix(F, n, n);
    // Paterson-Stockmeyer: ~2*sqrt(deg) matrix products instead of deg
    std::size_t s = 1;
    while (s * s < cs.size()) ++s;
    std::vector<Matrix> pows;
    pows.reserve(s + 1);
    pows.push_back(Matrix::identity(F, n));
    for (std::size_t i = 1; i <= s; ++i) pows.push_back(pows[i - 1] * a);
    std::size_t blocks = (cs.size() + s - 1) / s;
    Matrix out(F, n, n);
    for (std::size_t b = blocks; b-- > 0;) {
        if (b + 1 < blocks) out = out * pows[s];
        for (std::size_t i = 0; i < s; ++i) {
            std::size_t idx = b * s + i;
            if (idx < cs.size() && cs[idx]) out = out + pows[i].scaled(cs[idx]);
        }
    }
    return out;
}

} // namespace kwlie
