#ifndef TPA_ELEMENT_HPP
#define TPA_ELEMENT_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

#include "tpa/ffield.hpp"

namespace tpa {

/// Parse failure with the 0-based position of the offending character.
struct ParseError : std::runtime_error {
  ParseError(const std::string& message, std::size_t pos)
      : std::runtime_error(message + " (at position " + std::to_string(pos) + ")"),
        position(pos) {}
  std::size_t position;
};

/// Parses "e-1 + 2*e3"-style expressions into a coefficient vector of length
/// N over the positions e_{-1}..e_{N-2} (e_i stored at i+1). Grammar:
///   expr  := term (('+'|'-') term)*
///   term  := '0' | [coeff '*']? 'e' index
/// Whitespace-insensitive; coefficients reduced mod p; indices must lie in
/// [-1, N-2]. Throws ParseError otherwise.
Vec parse_element(const std::string& text, std::uint32_t p, std::size_t N);

/// Canonical rendering ("0" for zero, unit coefficients omitted); parsing the
/// result reproduces the vector exactly.
std::string print_element(const Vec& v);

}  // namespace tpa

#endif
