#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "multdefl/coeff.hpp"

namespace multdefl {

/// Multi-index beta in N^n, used both for monomials x^beta and for
/// differential monomials d^beta.
class ExponentVector {
 public:
  using value_type = std::uint16_t;

  ExponentVector() = default;
  explicit ExponentVector(std::size_t n) : e_(n, 0) {}
  ExponentVector(std::initializer_list<unsigned> init);
  explicit ExponentVector(std::vector<value_type> entries) : e_(std::move(entries)) {}

  static ExponentVector unit(std::size_t n, std::size_t i);

  std::size_t size() const noexcept { return e_.size(); }
  value_type operator[](std::size_t i) const { return e_[i]; }
  value_type& operator[](std::size_t i) { return e_[i]; }
  auto begin() const noexcept { return e_.begin(); }
  auto end() const noexcept { return e_.end(); }
  const std::vector<value_type>& entries() const noexcept { return e_; }

  /// Total degree |beta|.
  unsigned degree() const noexcept;
  bool is_zero() const noexcept { return degree() == 0; }

  ExponentVector plus_unit(std::size_t i) const;
  /// beta - e_i; requires beta_i > 0.
  ExponentVector minus_unit(std::size_t i) const;
  /// Componentwise beta <= other.
  bool divides(const ExponentVector& other) const;

  friend ExponentVector operator+(const ExponentVector& a, const ExponentVector& b);
  /// Componentwise difference; requires b.divides(a).
  friend ExponentVector operator-(const ExponentVector& a, const ExponentVector& b);

  /// beta! = beta_1! ... beta_n!
  double factorial() const;
  Rational factorial_exact() const;

  /// Lexicographic; used as the storage order of term maps.
  friend auto operator<=>(const ExponentVector&, const ExponentVector&) = default;
  friend bool operator==(const ExponentVector&, const ExponentVector&) = default;

  std::string to_string() const;

 private:
  std::vector<value_type> e_;
};

/// Ascending graded reverse lexicographic order with d_1 < d_2 < ... < d_n:
/// higher total degree is larger; on ties the vector with the larger
/// exponent in the first variable is smaller, then the second, and so on.
bool grevlex_less(const ExponentVector& a, const ExponentVector& b);

struct GrevlexLess {
  bool operator()(const ExponentVector& a, const ExponentVector& b) const {
    return grevlex_less(a, b);
  }
};

/// All exponent vectors of length n with total degree <= t, listed by
/// increasing degree and grevlex-ascending within a degree.
std::vector<ExponentVector> monomials_up_to(std::size_t n, unsigned t);

/// Number of monomials of degree <= t in n variables, binom(n+t, n).
std::size_t count_monomials(std::size_t n, unsigned t);

}  // namespace multdefl
