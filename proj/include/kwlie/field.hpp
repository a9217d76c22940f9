#pragma once

#include "kwlie/error.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace kwlie {

class FieldElement;

/// A finite field F_{p^m}. Elements are handled as packed machine words
/// ("raw" values): for m = 1 the residue itself, for m > 1 the coefficient
/// vector c_0..c_{m-1} of the polynomial representative packed in base p,
/// so raw values range over [0, p^m) and counting raws enumerates the field.
///
/// Field is a cheap shared handle; all arithmetic is exact and pure.
class Field {
public:
    /// F_p for prime p, or F_{p^m} modulo `modulus` (monic irreducible of
    /// degree m over F_p, coefficients low-to-high including the leading 1).
    /// When m > 1 and no modulus is given, the least monic irreducible in
    /// base-p counting order of (c_0,...,c_{m-1}) is generated, so the
    /// representation is reproducible across runs.
    static Field make(std::uint64_t p, unsigned m = 1,
                      std::optional<std::vector<std::uint64_t>> modulus = std::nullopt);

    Field() = default; // empty handle; any use throws

    std::uint64_t p() const;
    unsigned m() const;
    std::uint64_t order() const; // p^m
    /// Monic modulus polynomial, length m+1 low-to-high; empty for m = 1.
    const std::vector<std::uint64_t>& modulus() const;

    bool valid() const { return rep_ != nullptr; }
    bool operator==(const Field& o) const;
    bool operator!=(const Field& o) const { return !(*this == o); }

    // raw arithmetic -------------------------------------------------------
    std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t neg(std::uint64_t a) const;
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t inv(std::uint64_t a) const;
    std::uint64_t div(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
    std::uint64_t frobenius(std::uint64_t a) const; // a^p

    /// Integer scalar reduced into the prime subfield.
    std::uint64_t from_int(std::int64_t n) const;
    /// Pack a coefficient vector (length <= m, entries reduced mod p).
    std::uint64_t from_coeffs(std::span<const std::uint64_t> c) const;
    /// Unpack to exactly m residues, low-to-high.
    std::vector<std::uint64_t> coeffs(std::uint64_t raw) const;

    // element-string format used verbatim in files: prime field "3",
    // extension "1,0,1" (low-to-high, exactly m entries on output)
    std::string to_string(std::uint64_t raw) const;
    std::uint64_t parse(const std::string& s) const;

    std::string describe() const; // "F_p" or "F_p^m (mod ...)"

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement elem(std::uint64_t raw) const;
    FieldElement elem_from_int(std::int64_t n) const;

    struct Rep; // opaque

private:
    std::shared_ptr<const Rep> rep_;
    const Rep& r() const;
};

/// Value type: a field element carrying its field descriptor, so mixing
/// fields is a detectable error rather than UB.
class FieldElement {
public:
    FieldElement() = default;
    FieldElement(Field f, std::uint64_t raw) : fld_(std::move(f)), raw_(raw) {}

    const Field& field() const { return fld_; }
    std::uint64_t raw() const { return raw_; }
    std::vector<std::uint64_t> coeffs() const { return fld_.coeffs(raw_); }
    bool is_zero() const { return raw_ == 0; }

    FieldElement operator+(const FieldElement& o) const { return {fld_, same(o).add(raw_, o.raw_)}; }
    FieldElement operator-(const FieldElement& o) const { return {fld_, same(o).sub(raw_, o.raw_)}; }
    FieldElement operator*(const FieldElement& o) const { return {fld_, same(o).mul(raw_, o.raw_)}; }
    FieldElement operator/(const FieldElement& o) const { return {fld_, same(o).div(raw_, o.raw_)}; }
    FieldElement operator-() const { return {fld_, fld_.neg(raw_)}; }
    FieldElement pow(std::uint64_t e) const { return {fld_, fld_.pow(raw_, e)}; }
    FieldElement frobenius() const { return {fld_, fld_.frobenius(raw_)}; }

    bool operator==(const FieldElement& o) const { return fld_ == o.fld_ && raw_ == o.raw_; }
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

    std::string str() const { return fld_.to_string(raw_); }

private:
    const Field& same(const FieldElement& o) const {
        if (fld_ != o.fld_) raise(errc::field_mismatch, "elements of different fields");
        return fld_;
    }
    Field fld_;
    std::uint64_t raw_ = 0;
};

/// Ring embedding F_{p^m} -> F_{p^{m'}}, defined when m | m'. The image of
/// the source generator is the least root (by raw value) of the source
/// modulus in the target, so embeddings are deterministic.
class Embedding {
public:
    Embedding(Field src, Field dst);
    const Field& source() const { return src_; }
    const Field& target() const { return dst_; }
    std::uint64_t apply(std::uint64_t raw) const;
    FieldElement operator()(const FieldElement& x) const;

private:
    Field src_, dst_;
    std::vector<std::uint64_t> gen_pows_; // images of t^0..t^{m-1}
};

/// One-shot embedding (spec operation field_embed).
FieldElement field_embed(const FieldElement& x, const Field& target);

bool is_prime(std::uint64_t n);

} // namespace kwlie
