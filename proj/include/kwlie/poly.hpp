#pragma once

#include "kwlie/field.hpp"

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace kwlie {

/// Dense univariate polynomial over a Field, coefficients low-to-high as
/// raw values, normalized (no leading zeros; zero polynomial = empty).
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(Field f) : fld_(std::move(f)) {}
    UPoly(Field f, std::vector<std::uint64_t> coeffs);

    static UPoly zero(const Field& f) { return UPoly(f); }
    static UPoly constant(const Field& f, std::uint64_t c);
    static UPoly x(const Field& f); // the monomial t

    const Field& field() const { return fld_; }
    const std::vector<std::uint64_t>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; } // -1 for zero
    std::uint64_t coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
    std::uint64_t lead() const { return c_.empty() ? 0 : c_.back(); }

    UPoly operator+(const UPoly& o) const;
    UPoly operator-(const UPoly& o) const;
    UPoly operator*(const UPoly& o) const;
    UPoly scaled(std::uint64_t s) const;
    UPoly monic() const;
    UPoly derivative() const;
    std::uint64_t eval(std::uint64_t x) const;

    /// Quotient and remainder; divisor must be nonzero.
    std::pair<UPoly, UPoly> divmod(const UPoly& d) const;
    UPoly operator%(const UPoly& d) const { return divmod(d).second; }
    UPoly operator/(const UPoly& d) const { return divmod(d).first; }

    bool operator==(const UPoly& o) const { return fld_ == o.fld_ && c_ == o.c_; }
    bool operator!=(const UPoly& o) const { return !(*this == o); }
    /// Order used to stabilize factor lists: by degree, then raw coeffs.
    bool operator<(const UPoly& o) const;

    std::string str(const std::string& var = "T") const;

private:
    void trim();
    Field fld_;
    std::vector<std::uint64_t> c_;
};

UPoly gcd(UPoly a, UPoly b); // monic gcd
UPoly powmod(const UPoly& base, std::uint64_t e, const UPoly& mod);
/// base^(q^k) mod `mod` by k-fold q-power (q may exceed 2^63 as q = p^m fits u64).
UPoly pow_q_mod(const UPoly& base, std::uint64_t q, unsigned k, const UPoly& mod);

bool is_irreducible(const UPoly& f);

struct PolyFactor {
    UPoly factor; // monic irreducible
    unsigned multiplicity;
};

/// Full factorization over the coefficient field (squarefree decomposition +
/// distinct-degree + Cantor–Zassenhaus equal-degree splitting). Deterministic
/// output for a given rng state: factors sorted, multiplicities exact.
std::vector<PolyFactor> factor(const UPoly& f, std::mt19937_64& rng);
std::vector<PolyFactor> factor(const UPoly& f, std::uint64_t seed = 0x9e3779b97f4a7c15ULL);

/// Roots in the coefficient field, sorted ascending by raw value.
std::vector<std::uint64_t> roots(const UPoly& f);

} // namespace kwlie
