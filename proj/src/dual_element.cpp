#include "multdefl/dual_element.hpp"

#include <cmath>

namespace multdefl {

DualElement DualElement::evaluation(Point anchor) {
  DualElement L(std::move(anchor));
  L.terms_.emplace(ExponentVector(L.nvars()), Complex{1.0, 0.0});
  return L;
}

DualElement DualElement::derivation(Point anchor, const ExponentVector& beta, Complex c) {
  DualElement L(std::move(anchor));
  L.add_term(beta, c);
  return L;
}

void DualElement::add_term(const ExponentVector& gamma, Complex c) {
  if (gamma.size() != nvars()) throw InvalidArgument("dual term has wrong exponent length");
  if (c == Complex{}) return;
  auto [it, inserted] = terms_.try_emplace(gamma, c);
  if (!inserted) {
    it->second += c;
    if (it->second == Complex{}) terms_.erase(it);
  }
}

Complex DualElement::coefficient(const ExponentVector& gamma) const {
  auto it = terms_.find(gamma);
  return it == terms_.end() ? Complex{} : it->second;
}

unsigned DualElement::order(double tol) const {
  unsigned o = 0;
  for (const auto& [g, c] : terms_)
    if (std::abs(c) > tol) o = std::max(o, g.degree());
  return o;
}

DualElement DualElement::derive_symbol(std::size_t i) const {
  if (i >= nvars()) throw InvalidArgument("symbol index out of range");
  DualElement r(anchor_);
  for (const auto& [g, c] : terms_) {
    if (g[i] == 0) continue;
    r.add_term(g.minus_unit(i), c * static_cast<double>(g[i]));
  }
  return r;
}

template <class K>
std::map<ExponentVector, Complex> taylor_coefficients(const MPoly<K>& p, std::span<const Complex> xi) {
  const std::size_t n = p.nvars();
  if (xi.size() != n) throw InvalidArgument("expansion point has wrong length");
  std::map<ExponentVector, Complex> out;
  for (const auto& [a, c] : p.terms()) {
    // Per-variable binomial rows: (xi_v + y_v)^{a_v} = sum_k binom(a_v,k) xi_v^{a_v-k} y_v^k.
    std::vector<std::vector<Complex>> rows(n);
    for (std::size_t v = 0; v < n; ++v) {
      rows[v].resize(a[v] + 1u);
      double binom = 1.0;
      for (unsigned k = 0; k <= a[v]; ++k) {
        rows[v][k] = binom * ipow(xi[v], a[v] - k);
        binom = binom * (a[v] - k) / (k + 1);
      }
    }
    const Complex cc = CoeffTraits<K>::to_complex(c);
    ExponentVector k(n);
    // Odometer over 0 <= k <= a.
    while (true) {
      Complex term = cc;
      for (std::size_t v = 0; v < n; ++v) term *= rows[v][k[v]];
      if (term != Complex{}) out[k] += term;
      std::size_t v = 0;
      while (v < n && k[v] == a[v]) k[v++] = 0;
      if (v == n) break;
      ++k[v];
    }
  }
  return out;
}

template std::map<ExponentVector, Complex> taylor_coefficients(const RationalPoly&, std::span<const Complex>);
template std::map<ExponentVector, Complex> taylor_coefficients(const ComplexPoly&, std::span<const Complex>);

RationalPoly shifted_monomial(const ExponentVector& beta, std::span<const Rational> xi) {
  const std::size_t n = beta.size();
  if (xi.size() != n) throw InvalidArgument("anchor has wrong length");
  RationalPoly r = RationalPoly::constant(n, Rational(1));
  for (std::size_t v = 0; v < n; ++v) {
    if (!beta[v]) continue;
    RationalPoly lin = RationalPoly::variable(n, v) - RationalPoly::constant(n, xi[v]);
    r = r * lin.pow(beta[v]);
  }
  return r;
}

}  // namespace multdefl
