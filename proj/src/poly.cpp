#include "kwlie/poly.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace kwlie {

UPoly::UPoly(Field f, std::vector<std::uint64_t> coeffs) : fld_(std::move(f)), c_(std::move(coeffs)) {
    for (auto& x : c_)
        if (x >= fld_.order()) raise(errc::internal, "coefficient out of range");
    trim();
}

UPoly UPoly::constant(const Field& f, std::uint64_t c) {
    UPoly r(f);
    if (c) r.c_ = {c};
    return r;
}

UPoly UPoly::x(const Field& f) {
    UPoly r(f);
    r.c_ = {0, f.from_int(1)};
    return r;
}

void UPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

UPoly UPoly::operator+(const UPoly& o) const {
    if (fld_ != o.fld_) raise(errc::field_mismatch, "polynomials over different fields");
    UPoly r(fld_);
    r.c_.resize(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = fld_.add(coeff(i), o.coeff(i));
    r.trim();
    return r;
}

UPoly UPoly::operator-(const UPoly& o) const {
    if (fld_ != o.fld_) raise(errc::field_mismatch, "polynomials over different fields");
    UPoly r(fld_);
    r.c_.resize(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = fld_.sub(coeff(i), o.coeff(i));
    r.trim();
    return r;
}

UPoly UPoly::operator*(const UPoly& o) const {
    if (fld_ != o.fld_) raise(errc::field_mismatch, "polynomials over different fields");
    UPoly r(fld_);
    if (is_zero() || o.is_zero()) return r;
    r.c_.assign(c_.size() + o.c_.size() - 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (!c_[i]) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j)
            if (o.c_[j]) r.c_[i + j] = fld_.add(r.c_[i + j], fld_.mul(c_[i], o.c_[j]));
    }
    r.trim();
    return r;
}

UPoly UPoly::scaled(std::uint64_t s) const {
    UPoly r(fld_);
    if (!s) return r;
    r.c_ = c_;
    for (auto& x : r.c_) x = fld_.mul(x, s);
    r.trim();
    return r;
}

UPoly UPoly::monic() const {
    if (is_zero()) return *this;
    return scaled(fld_.inv(lead()));
}

UPoly UPoly::derivative() const {
    UPoly r(fld_);
    if (c_.size() < 2) return r;
    r.c_.resize(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i)
        r.c_[i - 1] = fld_.mul(c_[i], fld_.from_int(static_cast<std::int64_t>(i % fld_.p())));
    r.trim();
    return r;
}

std::uint64_t UPoly::eval(std::uint64_t x) const {
    std::uint64_t acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = fld_.add(fld_.mul(acc, x), c_[i]);
    return acc;
}

std::pair<UPoly, UPoly> UPoly::divmod(const UPoly& d) const {
    if (fld_ != d.fld_) raise(errc::field_mismatch, "polynomials over different fields");
    if (d.is_zero()) raise(errc::div_by_zero, "polynomial division by zero");
    UPoly q(fld_), rem = *this;
    if (degree() < d.degree()) return {q, rem};
    q.c_.assign(static_cast<std::size_t>(degree() - d.degree()) + 1, 0);
    std::uint64_t linv = fld_.inv(d.lead());
    while (!rem.is_zero() && rem.degree() >= d.degree()) {
        std::size_t shift = static_cast<std::size_t>(rem.degree() - d.degree());
        std::uint64_t c = fld_.mul(rem.lead(), linv);
        q.c_[shift] = c;
        for (std::size_t i = 0; i < d.c_.size(); ++i)
            rem.c_[shift + i] = fld_.sub(rem.c_[shift + i], fld_.mul(c, d.c_[i]));
        rem.trim();
    }
    q.trim();
    return {q, rem};
}

bool UPoly::operator<(const UPoly& o) const {
    if (c_.size() != o.c_.size()) return c_.size() < o.c_.size();
    return std::lexicographical_compare(c_.rbegin(), c_.rend(), o.c_.rbegin(), o.c_.rend());
}

std::string UPoly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (!c_[i]) continue;
        if (!first) os << " + ";
        first = false;
        if (i == 0 || c_[i] != fld_.from_int(1)) os << fld_.to_string(c_[i]);
        if (i > 0) {
            if (c_[i] != fld_.from_int(1)) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

UPoly gcd(UPoly a, UPoly b) {
    while (!b.is_zero()) {
        UPoly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

UPoly powmod(const UPoly& base, std::uint64_t e, const UPoly& mod) {
    UPoly out = UPoly::constant(base.field(), base.field().from_int(1)) % mod;
    UPoly b = base % mod;
    while (e) {
        if (e & 1) out = (out * b) % mod;
        b = (b * b) % mod;
        e >>= 1;
    }
    return out;
}

UPoly pow_q_mod(const UPoly& base, std::uint64_t q, unsigned k, const UPoly& mod) {
    UPoly out = base % mod;
    for (unsigned i = 0; i < k; ++i) out = powmod(out, q, mod);
    return out;
}

bool is_irreducible(const UPoly& f0) {
    UPoly f = f0.monic();
    int n = f.degree();
    if (n <= 0) return false;
    if (n == 1) return true;
    const Field& F = f.field();
    std::uint64_t q = F.order();
    UPoly x = UPoly::x(F);
    // Rabin: x^{q^n} == x mod f, and gcd(x^{q^{n/r}} - x, f) = 1 for prime r | n
    UPoly xqn = pow_q_mod(x, q, static_cast<unsigned>(n), f);
    if (!(xqn - x % f).is_zero()) return false;
    std::vector<int> prime_divs;
    int rest = n;
    for (int r = 2; r * r <= rest; ++r) {
        if (rest % r) continue;
        prime_divs.push_back(r);
        while (rest % r == 0) rest /= r;
    }
    if (rest > 1) prime_divs.push_back(rest);
    for (int r : prime_divs) {
        UPoly xq = pow_q_mod(x, q, static_cast<unsigned>(n / r), f);
        if (gcd(xq - x, f).degree() != 0) return false;
    }
    return true;
}

namespace {

// split a product of distinct irreducibles of equal degree d (Cantor–Zassenhaus)
void equal_degree_split(const UPoly& f, unsigned d, std::mt19937_64& rng, std::vector<UPoly>& out) {
    if (f.degree() == static_cast<int>(d)) {
        out.push_back(f.monic());
        return;
    }
    const Field& F = f.field();
    std::uint64_t q = F.order();
    std::uniform_int_distribution<std::uint64_t> dist(0, q - 1);
    for (;;) {
        // random polynomial of degree < deg f
        std::vector<std::uint64_t> rc(static_cast<std::size_t>(f.degree()), 0);
        for (auto& c : rc) c = dist(rng);
        UPoly r(F, rc);
        if (r.is_zero()) continue;
        UPoly g = gcd(r, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree_split(g, d, rng, out);
            equal_degree_split(f / g, d, rng, out);
            return;
        }
        UPoly e(F);
        if (F.p() == 2) {
            // trace map over F_2: r + r^2 + r^4 + ... (m*d terms)
            unsigned steps = static_cast<unsigned>(F.m()) * d;
            UPoly acc = r % f, term = r % f;
            for (unsigned i = 1; i < steps; ++i) {
                term = (term * term) % f;
                acc = acc + term;
            }
            e = acc;
        } else {
            // r^{(q^d-1)/2} - 1, with (q^d-1)/2 = (q-1)/2 * (1 + q + ... + q^{d-1})
            UPoly acc = powmod(r, (q - 1) / 2, f);
            UPoly rq = r % f;
            for (unsigned i = 1; i < d; ++i) {
                rq = powmod(rq, q, f); // r^{q^i}
                acc = (acc * powmod(rq, (q - 1) / 2, f)) % f;
            }
            e = acc - UPoly::constant(F, F.from_int(1));
        }
        UPoly h = gcd(e, f);
        if (h.degree() > 0 && h.degree() < f.degree()) {
            equal_degree_split(h, d, rng, out);
            equal_degree_split(f / h, d, rng, out);
            return;
        }
    }
}

// p-th root of f when f'(x) = 0, i.e. f = g(x^p): coefficient-wise p-th root
UPoly pth_root(const UPoly& f) {
    const Field& F = f.field();
    std::uint64_t p = F.p();
    std::vector<std::uint64_t> out(static_cast<std::size_t>(f.degree() / static_cast<int>(p)) + 1, 0);
    for (std::size_t i = 0; i < out.size(); ++i) {
        std::uint64_t c = f.coeff(i * p);
        // p-th root in F_{p^m}: inverse Frobenius = c^{p^{m-1}}
        for (unsigned j = 0; j + 1 < F.m(); ++j) c = F.frobenius(c);
        out[i] = c;
    }
    return UPoly(F, out);
}

// distinct-degree then equal-degree on a squarefree monic input
void factor_distinct_degree(const UPoly& f0, unsigned mult, std::mt19937_64& rng,
                            std::map<UPoly, unsigned>& acc) {
    const Field& F = f0.field();
    std::uint64_t q = F.order();
    UPoly f = f0;
    UPoly x = UPoly::x(F);
    UPoly h = x % f;
    for (unsigned d = 1; f.degree() > 0 && 2 * static_cast<int>(d) <= f.degree(); ++d) {
        h = powmod(h, q, f); // x^{q^d} mod f
        UPoly g = gcd(h - x, f);
        if (g.degree() > 0) {
            std::vector<UPoly> irr;
            equal_degree_split(g, d, rng, irr);
            for (auto& u : irr) acc[u] += mult;
            f = f / g;
            h = h % f;
        }
    }
    if (f.degree() > 0) acc[f.monic()] += mult;
}

} // namespace

std::vector<PolyFactor> factor(const UPoly& f0, std::mt19937_64& rng) {
    std::vector<PolyFactor> out;
    if (f0.degree() <= 0) return out;
    UPoly f = f0.monic();
    // collect the distinct irreducible factors first, then recover exact
    // multiplicities by trial division (degrees are small here)
    std::map<UPoly, unsigned> found;
    {
        UPoly work = f;
        // repeatedly peel squarefree parts until fully consumed
        while (work.degree() > 0) {
            UPoly d = work.derivative();
            UPoly sf;
            if (d.is_zero()) {
                work = pth_root(work);
                continue;
            }
            sf = work / gcd(work, d);
            std::map<UPoly, unsigned> part;
            factor_distinct_degree(sf, 1, rng, part);
            for (auto& [u, _] : part) found[u] = 0;
            work = work / sf;
        }
    }
    for (auto& [u, mult] : found) {
        UPoly work = f;
        unsigned e = 0;
        for (;;) {
            auto [q, r] = work.divmod(u);
            if (!r.is_zero()) break;
            ++e;
            work = q;
        }
        out.push_back({u, e});
    }
    std::sort(out.begin(), out.end(),
              [](const PolyFactor& a, const PolyFactor& b) { return a.factor < b.factor; });
    return out;
}

std::vector<PolyFactor> factor(const UPoly& f, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return factor(f, rng);
}

std::vector<std::uint64_t> roots(const UPoly& f0) {
    std::vector<std::uint64_t> out;
    if (f0.degree() <= 0) return out;
    const Field& F = f0.field();
    // restrict to the product of the degree-1 factors, then factor it
    UPoly x = UPoly::x(F);
    UPoly xq = pow_q_mod(x, F.order(), 1, f0.monic());
    UPoly lin = gcd(xq - x, f0.monic());
    if (lin.degree() <= 0) return out;
    auto fs = factor(lin);
    for (auto& pf : fs) {
        if (pf.factor.degree() != 1) continue;
        // t + c = 0  ->  root = -c
        out.push_back(F.neg(pf.factor.coeff(0)));
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace kwlie
