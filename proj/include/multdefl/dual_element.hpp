#pragma once

#include <map>
#include <span>
#include <vector>

#include "multdefl/mpoly.hpp"

namespace multdefl {

using Point = std::vector<Complex>;

/// Differential functional sum_gamma c_gamma d^gamma anchored at a point xi,
/// acting by p -> sum_gamma c_gamma (d^gamma p)(xi). Coefficients are kept in
/// the raw d^gamma basis; pairing((x - xi)^beta) = c_beta * beta!.
class DualElement {
 public:
  DualElement() = default;
  explicit DualElement(Point anchor) : anchor_(std::move(anchor)) {}

  /// The evaluation functional 1_xi.
  static DualElement evaluation(Point anchor);
  /// The functional d^beta at xi.
  static DualElement derivation(Point anchor, const ExponentVector& beta, Complex c = 1.0);

  const Point& anchor() const noexcept { return anchor_; }
  std::size_t nvars() const noexcept { return anchor_.size(); }
  const std::map<ExponentVector, Complex>& terms() const noexcept { return terms_; }

  void add_term(const ExponentVector& gamma, Complex c);
  Complex coefficient(const ExponentVector& gamma) const;

  /// Max |gamma| over stored terms whose coefficient magnitude exceeds tol.
  unsigned order(double tol = 0.0) const;

  /// Value of the functional on (x - xi)^beta, i.e. c_beta * beta!.
  Complex pairing(const ExponentVector& beta) const { return coefficient(beta) * beta.factorial(); }

  /// d/d(d_i): the derivation of the functional by the i-th symbol, which is
  /// how multiplication by (x_i - xi_i) acts on the dual space.
  DualElement derive_symbol(std::size_t i) const;

 private:
  Point anchor_;
  std::map<ExponentVector, Complex> terms_;
};

/// Lambda(p) = sum_gamma c_gamma d^gamma(p)(xi).
template <class K>
Complex apply_dual(const DualElement& L, const MPoly<K>& p) {
  if (L.nvars() != p.nvars()) throw InvalidArgument("dual element anchor length does not match polynomial");
  Complex s{0.0, 0.0};
  for (const auto& [gamma, c] : L.terms()) {
    if (c == Complex{}) continue;
    s += c * p.derivative(gamma).evaluate(L.anchor());
  }
  return s;
}

/// Taylor coefficients of p at xi: map beta -> (d^beta p)(xi) / beta!, so that
/// p = sum_beta t_beta (x - xi)^beta. Computed by binomial expansion.
template <class K>
std::map<ExponentVector, Complex> taylor_coefficients(const MPoly<K>& p, std::span<const Complex> xi);

extern template std::map<ExponentVector, Complex> taylor_coefficients(const RationalPoly&, std::span<const Complex>);
extern template std::map<ExponentVector, Complex> taylor_coefficients(const ComplexPoly&, std::span<const Complex>);

/// Exact polynomial (x - xi)^beta for a rational anchor.
RationalPoly shifted_monomial(const ExponentVector& beta, std::span<const Rational> xi);

}  // namespace multdefl
