#include "kwlie/field.hpp"
#include "kwlie/poly.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace kwlie {

const char* errc_name(errc c) {
    switch (c) {
        case errc::non_prime: return "NonPrime";
        case errc::reducible: return "Reducible";
        case errc::div_by_zero: return "DivByZero";
        case errc::field_mismatch: return "FieldMismatch";
        case errc::no_embedding: return "NoEmbedding";
        case errc::not_square: return "NotSquare";
        case errc::shape_mismatch: return "ShapeMismatch";
        case errc::not_a_derivation: return "NotADerivation";
        case errc::bad_k: return "BadK";
        case errc::cap_overflow: return "CapOverflow";
        case errc::zero_vector: return "ZeroVector";
        case errc::retry_exhausted: return "RetryExhausted";
        case errc::budget_exceeded: return "BudgetExceeded";
        case errc::parity_violation: return "ParityViolation";
        case errc::parse_error: return "ParseError";
        case errc::validation_error: return "ValidationError";
        case errc::internal: return "Internal";
    }
    return "Unknown";
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d : {2ULL, 3ULL, 5ULL, 7ULL}) {
        if (n % d == 0) return n == d;
    }
    for (std::uint64_t d = 11; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

namespace {

constexpr unsigned kMaxExtDegree = 16;

// F_p[t] helpers on bare coefficient vectors (low-to-high, trimmed).
using PVec = std::vector<std::uint64_t>;

void ptrim(PVec& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

PVec pmul(const PVec& a, const PVec& b, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    PVec r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    ptrim(r);
    return r;
}

PVec psub(PVec a, const PVec& b, std::uint64_t p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
    ptrim(a);
    return a;
}

std::uint64_t int_inv_mod(std::uint64_t a, std::uint64_t p) {
    // extended Euclid on integers
    std::int64_t t = 0, nt = 1;
    std::int64_t r = static_cast<std::int64_t>(p), nr = static_cast<std::int64_t>(a % p);
    while (nr != 0) {
        std::int64_t q = r / nr;
        std::swap(t -= q * nt, nt);
        std::swap(r -= q * nr, nr);
    }
    if (r != 1) raise(errc::div_by_zero, "no inverse");
    if (t < 0) t += static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(t);
}

// a mod b in F_p[t], b nonzero
PVec pmod(PVec a, const PVec& b, std::uint64_t p) {
    std::uint64_t binv = int_inv_mod(b.back(), p);
    while (a.size() >= b.size() && !a.empty()) {
        std::uint64_t c = (a.back() * binv) % p;
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i)
            a[shift + i] = (a[shift + i] + p - (c * b[i]) % p) % p;
        ptrim(a);
    }
    return a;
}

// inverse of a modulo f in F_p[t]
PVec pinvmod(PVec a, const PVec& f, std::uint64_t p) {
    PVec r0 = f, r1 = pmod(std::move(a), f, p);
    PVec s0 = {}, s1 = {1};
    if (r1.empty()) raise(errc::div_by_zero, "inverse of zero");
    while (!r1.empty()) {
        // r0 = q*r1 + r2
        PVec q;
        {
            PVec rem = r0;
            std::uint64_t linv = int_inv_mod(r1.back(), p);
            q.assign(rem.size() >= r1.size() ? rem.size() - r1.size() + 1 : 0, 0);
            while (rem.size() >= r1.size() && !rem.empty()) {
                std::uint64_t c = (rem.back() * linv) % p;
                std::size_t shift = rem.size() - r1.size();
                q[shift] = c;
                for (std::size_t i = 0; i < r1.size(); ++i)
                    rem[shift + i] = (rem[shift + i] + p - (c * r1[i]) % p) % p;
                ptrim(rem);
            }
            r0.swap(r1);
            r1 = std::move(rem);
        }
        PVec s2 = psub(std::move(s0), pmul(q, s1, p), p);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r0.size() != 1) raise(errc::div_by_zero, "element not invertible (modulus not irreducible?)");
    std::uint64_t scale = int_inv_mod(r0[0], p);
    for (auto& c : s0) c = (c * scale) % p;
    ptrim(s0);
    return s0;
}

} // namespace

struct Field::Rep {
    std::uint64_t p = 0;
    unsigned m = 1;
    std::uint64_t order = 0;              // p^m
    std::vector<std::uint64_t> modulus;   // empty for m == 1, else length m+1 monic
    std::vector<std::uint64_t> strides;   // p^0..p^{m-1}
    // small extension fields are table-driven (q^2 lookups beat repeated
    // unpack/divmod chains by more than an order of magnitude)
    std::vector<std::uint16_t> add_lut, mul_lut, inv_lut;
};

const Field::Rep& Field::r() const {
    if (!rep_) raise(errc::internal, "use of empty Field handle");
    return *rep_;
}

namespace {
void build_luts(Field::Rep& rep);
} // namespace

Field Field::make(std::uint64_t p, unsigned m, std::optional<std::vector<std::uint64_t>> modulus) {
    if (!is_prime(p)) raise(errc::non_prime, std::to_string(p) + " is not prime");
    if (m < 1) raise(errc::internal, "extension degree must be >= 1");
    if (m > kMaxExtDegree) raise(errc::internal, "extension degree too large");
    // keep p^m within a machine word so raw packing stays exact
    long double ord = 1;
    for (unsigned i = 0; i < m; ++i) {
        ord *= static_cast<long double>(p);
        if (ord > 4.6e18L) raise(errc::internal, "field order exceeds 2^62");
    }

    auto rep = std::make_shared<Rep>();
    rep->p = p;
    rep->m = m;
    rep->strides.resize(m);
    std::uint64_t s = 1;
    for (unsigned i = 0; i < m; ++i) {
        rep->strides[i] = s;
        s *= p;
    }
    rep->order = s;

    Field f;
    if (m == 1) {
        if (modulus && !modulus->empty())
            raise(errc::internal, "prime field takes no modulus");
        f.rep_ = std::move(rep);
        return f;
    }

    Field prime = Field::make(p, 1);
    if (modulus) {
        auto mod = *modulus;
        for (auto& c : mod) c %= p;
        if (mod.size() != static_cast<std::size_t>(m) + 1 || mod.back() != 1)
            raise(errc::internal, "modulus must be monic of degree m");
        if (!is_irreducible(UPoly(prime, mod)))
            raise(errc::reducible, "supplied modulus factors over F_" + std::to_string(p));
        rep->modulus = std::move(mod);
    } else {
        // least monic irreducible: count (c_0,...,c_{m-1}) upward in base p
        std::vector<std::uint64_t> mod(m + 1, 0);
        mod[m] = 1;
        bool found = false;
        for (std::uint64_t low = 0; low < rep->order; ++low) {
            std::uint64_t v = low;
            for (unsigned i = 0; i < m; ++i) {
                mod[i] = v % p;
                v /= p;
            }
            if (is_irreducible(UPoly(prime, mod))) {
                found = true;
                break;
            }
        }
        if (!found) raise(errc::internal, "no irreducible modulus found"); // cannot happen
        rep->modulus = std::move(mod);
    }
    build_luts(*rep);
    f.rep_ = std::move(rep);
    return f;
}

std::uint64_t Field::p() const { return r().p; }
unsigned Field::m() const { return r().m; }
std::uint64_t Field::order() const { return r().order; }
const std::vector<std::uint64_t>& Field::modulus() const { return r().modulus; }

bool Field::operator==(const Field& o) const {
    if (rep_ == o.rep_) return true;
    if (!rep_ || !o.rep_) return false;
    return rep_->p == o.rep_->p && rep_->m == o.rep_->m && rep_->modulus == o.rep_->modulus;
}

namespace {

std::uint64_t rep_add(const Field::Rep& R, std::uint64_t a, std::uint64_t b);
std::uint64_t rep_mul(const Field::Rep& R, std::uint64_t a, std::uint64_t b);

} // namespace

std::uint64_t Field::add(std::uint64_t a, std::uint64_t b) const {
    const Rep& R = r();
    if (R.m == 1) return (a + b) % R.p;
    if (!R.add_lut.empty()) return R.add_lut[a * R.order + b];
    return rep_add(R, a, b);
}

std::uint64_t Field::neg(std::uint64_t a) const {
    const Rep& R = r();
    if (R.m == 1) return a == 0 ? 0 : R.p - a;
    std::uint64_t out = 0;
    for (unsigned i = 0; i < R.m; ++i) {
        std::uint64_t ai = (a / R.strides[i]) % R.p;
        out += (ai == 0 ? 0 : R.p - ai) * R.strides[i];
    }
    return out;
}

std::uint64_t Field::sub(std::uint64_t a, std::uint64_t b) const { return add(a, neg(b)); }

std::uint64_t Field::mul(std::uint64_t a, std::uint64_t b) const {
    const Rep& R = r();
    if (R.m == 1) return (a * b) % R.p;
    if (!R.mul_lut.empty()) return R.mul_lut[a * R.order + b];
    return rep_mul(R, a, b);
}

std::uint64_t Field::inv(std::uint64_t a) const {
    const Rep& R = r();
    if (a == 0) raise(errc::div_by_zero, "inverse of zero");
    if (R.m == 1) return int_inv_mod(a, R.p);
    if (!R.inv_lut.empty()) return R.inv_lut[a];
    PVec av = coeffs(a);
    ptrim(av);
    PVec iv = pinvmod(std::move(av), R.modulus, R.p);
    iv.resize(R.m, 0);
    return from_coeffs(iv);
}

namespace {

std::uint64_t rep_add(const Field::Rep& R, std::uint64_t a, std::uint64_t b) {
    std::uint64_t out = 0;
    for (unsigned i = 0; i < R.m; ++i) {
        std::uint64_t ai = (a / R.strides[i]) % R.p;
        std::uint64_t bi = (b / R.strides[i]) % R.p;
        out += ((ai + bi) % R.p) * R.strides[i];
    }
    return out;
}

std::uint64_t rep_mul(const Field::Rep& R, std::uint64_t a, std::uint64_t b) {
    std::array<std::uint64_t, 2 * kMaxExtDegree> prod{};
    std::array<std::uint64_t, kMaxExtDegree> av{}, bv{};
    for (unsigned i = 0; i < R.m; ++i) {
        av[i] = (a / R.strides[i]) % R.p;
        bv[i] = (b / R.strides[i]) % R.p;
    }
    for (unsigned i = 0; i < R.m; ++i) {
        if (!av[i]) continue;
        for (unsigned j = 0; j < R.m; ++j)
            prod[i + j] = (prod[i + j] + av[i] * bv[j]) % R.p;
    }
    // reduce by t^m = -(mod_0 + ... + mod_{m-1} t^{m-1})
    for (unsigned i = 2 * R.m - 2; i >= R.m; --i) {
        std::uint64_t c = prod[i];
        if (!c) continue;
        prod[i] = 0;
        for (unsigned j = 0; j < R.m; ++j) {
            std::uint64_t mj = R.modulus[j];
            if (!mj) continue;
            std::uint64_t& slot = prod[i - R.m + j];
            slot = (slot + (R.p - mj) * c) % R.p;
        }
    }
    std::uint64_t out = 0;
    for (unsigned i = 0; i < R.m; ++i) out += prod[i] * R.strides[i];
    return out;
}

constexpr std::uint64_t kLutMaxOrder = 512;

void build_luts(Field::Rep& rep) {
    if (rep.m == 1 || rep.order > kLutMaxOrder) return;
    std::uint64_t q = rep.order;
    rep.add_lut.resize(q * q);
    rep.mul_lut.resize(q * q);
    for (std::uint64_t a = 0; a < q; ++a)
        for (std::uint64_t b = 0; b < q; ++b) {
            rep.add_lut[a * q + b] = static_cast<std::uint16_t>(rep_add(rep, a, b));
            rep.mul_lut[a * q + b] = static_cast<std::uint16_t>(rep_mul(rep, a, b));
        }
    rep.inv_lut.assign(q, 0);
    for (std::uint64_t a = 1; a < q; ++a) {
        if (rep.inv_lut[a]) continue;
        // find the inverse by scanning the multiplication row once
        for (std::uint64_t b = 1; b < q; ++b) {
            if (rep.mul_lut[a * q + b] == 1) {
                rep.inv_lut[a] = static_cast<std::uint16_t>(b);
                rep.inv_lut[b] = static_cast<std::uint16_t>(a);
                break;
            }
        }
    }
}

} // namespace

std::uint64_t Field::div(std::uint64_t a, std::uint64_t b) const { return mul(a, inv(b)); }

std::uint64_t Field::pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t base = a, out = from_int(1);
    while (e) {
        if (e & 1) out = mul(out, base);
        base = mul(base, base);
        e >>= 1;
    }
    return out;
}

std::uint64_t Field::frobenius(std::uint64_t a) const { return pow(a, r().p); }

std::uint64_t Field::from_int(std::int64_t n) const {
    const Rep& R = r();
    std::int64_t v = n % static_cast<std::int64_t>(R.p);
    if (v < 0) v += static_cast<std::int64_t>(R.p);
    return static_cast<std::uint64_t>(v);
}

std::uint64_t Field::from_coeffs(std::span<const std::uint64_t> c) const {
    const Rep& R = r();
    if (c.size() > R.m) raise(errc::shape_mismatch, "too many coefficients for field");
    std::uint64_t out = 0;
    for (std::size_t i = 0; i < c.size(); ++i) out += (c[i] % R.p) * R.strides[i];
    return out;
}

std::vector<std::uint64_t> Field::coeffs(std::uint64_t raw) const {
    const Rep& R = r();
    std::vector<std::uint64_t> out(R.m);
    for (unsigned i = 0; i < R.m; ++i) out[i] = (raw / R.strides[i]) % R.p;
    return out;
}

std::string Field::to_string(std::uint64_t raw) const {
    const Rep& R = r();
    if (R.m == 1) return std::to_string(raw);
    std::string s;
    auto cs = coeffs(raw);
    for (unsigned i = 0; i < R.m; ++i) {
        if (i) s += ',';
        s += std::to_string(cs[i]);
    }
    return s;
}

std::uint64_t Field::parse(const std::string& s) const {
    const Rep& R = r();
    std::vector<std::uint64_t> cs;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t comma = s.find(',', pos);
        std::string tok = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        // trim spaces
        while (!tok.empty() && (tok.front() == ' ' || tok.front() == '\t')) tok.erase(tok.begin());
        while (!tok.empty() && (tok.back() == ' ' || tok.back() == '\t')) tok.pop_back();
        if (tok.empty()) raise(errc::parse_error, "empty coefficient in element string '" + s + "'");
        std::uint64_t v = 0;
        for (char ch : tok) {
            if (ch < '0' || ch > '9')
                raise(errc::parse_error, "bad character in element string '" + s + "'");
            v = v * 10 + static_cast<std::uint64_t>(ch - '0');
            if (v > (1ULL << 62)) raise(errc::parse_error, "coefficient overflow in '" + s + "'");
        }
        cs.push_back(v % R.p);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (cs.size() > R.m)
        raise(errc::parse_error, "element string '" + s + "' has more than m coefficients");
    return from_coeffs(cs);
}

std::string Field::describe() const {
    const Rep& R = r();
    if (R.m == 1) return "F_" + std::to_string(R.p);
    std::ostringstream os;
    os << "F_" << R.p << "^" << R.m << " (mod ";
    for (unsigned i = 0; i <= R.m; ++i) {
        if (i) os << ",";
        os << R.modulus[i];
    }
    os << ")";
    return os.str();
}

FieldElement Field::zero() const { return FieldElement(*this, 0); }
FieldElement Field::one() const { return FieldElement(*this, from_int(1)); }
FieldElement Field::elem(std::uint64_t raw) const {
    if (raw >= order()) raise(errc::internal, "raw value out of range");
    return FieldElement(*this, raw);
}
FieldElement Field::elem_from_int(std::int64_t n) const { return FieldElement(*this, from_int(n)); }

// ---------------------------------------------------------------------------

Embedding::Embedding(Field src, Field dst) : src_(std::move(src)), dst_(std::move(dst)) {
    if (src_.p() != dst_.p())
        raise(errc::no_embedding, "different characteristics");
    if (dst_.m() % src_.m() != 0)
        raise(errc::no_embedding, "degree " + std::to_string(src_.m()) + " does not divide " +
                                      std::to_string(dst_.m()));
    gen_pows_.assign(src_.m(), 0);
    gen_pows_[0] = dst_.from_int(1);
    if (src_.m() == 1) return;
    // image of t = least root of the source modulus in the target
    UPoly mod_in_dst(dst_, src_.modulus()); // prime-subfield coefficients map verbatim
    auto rs = roots(mod_in_dst);
    if (rs.empty()) raise(errc::internal, "modulus has no root in target"); // cannot happen when m | m'
    std::uint64_t img = rs.front();
    for (unsigned i = 1; i < src_.m(); ++i) gen_pows_[i] = dst_.mul(gen_pows_[i - 1], img);
}

std::uint64_t Embedding::apply(std::uint64_t raw) const {
    auto cs = src_.coeffs(raw);
    std::uint64_t out = 0;
    for (std::size_t i = 0; i < cs.size(); ++i)
        if (cs[i]) out = dst_.add(out, dst_.mul(dst_.from_int(static_cast<std::int64_t>(cs[i])), gen_pows_[i]));
    return out;
}

FieldElement Embedding::operator()(const FieldElement& x) const {
    if (x.field() != src_) raise(errc::field_mismatch, "element not in embedding source");
    return FieldElement(dst_, apply(x.raw()));
}

FieldElement field_embed(const FieldElement& x, const Field& target) {
    Embedding e(x.field(), target);
    return e(x);
}

} // namespace kwlie
