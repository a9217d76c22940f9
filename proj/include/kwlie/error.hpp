#pragma once

#include <stdexcept>
#include <string>

namespace kwlie {

enum class errc {
    non_prime,
    reducible,
    div_by_zero,
    field_mismatch,
    no_embedding,
    not_square,
    shape_mismatch,
    not_a_derivation,
    bad_k,
    cap_overflow,
    zero_vector,
    retry_exhausted,
    budget_exceeded,
    parity_violation,
    parse_error,
    validation_error,
    internal,
};

const char* errc_name(errc c);

/// Single exception type for the whole library; `code()` is machine-checkable
/// and `errc_name(code())` is the stable one-word prefix the CLI prints.
class error : public std::runtime_error {
public:
    error(errc c, const std::string& what)
        : std::runtime_error(std::string(errc_name(c)) + ": " + what), code_(c) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void raise(errc c, const std::string& what) { throw error(c, what); }

} // namespace kwlie
