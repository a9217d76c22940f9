#pragma once

#include "kwlie/liealg.hpp"

#include <string>

namespace kwlie {

/// Parse the JSON algebra format: a single object with keys "field"
/// ({"p", "m", optional "modulus"}), "basis" (name list) and "brackets"
/// (list of {"left", "right", "coeffs": {name: element-string}}).
/// The implied antisymmetric completion is validated on load; failures raise
/// ParseError (malformed input) or ValidationError (axiom violation).
LieAlgebra parse_algebra_file(const std::string& text);

/// Canonical emission (left < right triples only); parse(emit(A)) == A.
std::string emit_algebra_file(const LieAlgebra& l);

} // namespace kwlie
