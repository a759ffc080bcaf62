#pragma once

// Text and JSON formats for polynomial systems.
//
// Text format, one directive per line, '#' starts a comment:
//   vars: x1 x2
//   f: x1 + x2^2
//   f: x1^2 + x2^2
//   root: 0, 0            components "a", "bi", "a+bi", "p/q"
//   basis: 0 0; 0 1       optional primal exponents
//   tol: 1e-8             optional
//   rank-tol: 1e-8        optional
// Integer and p/q literals keep the system exact; any decimal literal
// switches the whole system to complex doubles.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "multdefl/dual_element.hpp"

namespace multdefl {

using AnySystem = std::variant<PolySystem<Rational>, PolySystem<Complex>>;

struct SystemFile {
  std::vector<std::string> names;
  AnySystem system;
  Point root;  // empty when absent
  std::optional<std::vector<ExponentVector>> basis;
  std::optional<double> tol;
  std::optional<double> rank_tol;

  bool exact() const noexcept { return system.index() == 0; }
  std::size_t num_polys() const;
};

SystemFile parse_system_text(const std::string& text);
SystemFile parse_system_file(const std::string& path);

/// Parses one polynomial over the given variables.
RationalPoly parse_rational_poly(const std::string& text, const std::vector<std::string>& names);
ComplexPoly parse_complex_poly(const std::string& text, const std::vector<std::string>& names);

/// "a", "bi", "a+bi", "a-bi", "p/q".
Complex parse_complex_literal(const std::string& text);

/// Exponent list "0 0; 1 0" for n variables.
std::vector<ExponentVector> parse_exponent_list(const std::string& text, std::size_t n);

/// Versioned JSON ({"format": 1, ...}); rational coefficients as "p/q"
/// strings, complex coefficients as [re, im].
template <class K>
nlohmann::json system_to_json(const PolySystem<K>& f, const std::vector<std::string>& names,
                              const std::vector<std::string>& labels = {});
SystemFile system_from_json(const nlohmann::json& j);

nlohmann::json point_to_json(std::span<const Complex> x);
std::string complex_to_string(Complex c);

/// Human-readable listing, one polynomial per line.
template <class K>
std::string system_to_text(const PolySystem<K>& f, const std::vector<std::string>& names);

}  // namespace multdefl
