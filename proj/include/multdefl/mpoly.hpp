#pragma once

// Sparse multivariate polynomials over Rational or Complex.

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "multdefl/coeff.hpp"
#include "multdefl/error.hpp"
#include "multdefl/exponent.hpp"

namespace multdefl {

/// Integer power by squaring; exact for small exponents.
inline Complex ipow(Complex base, unsigned e) {
  Complex r{1.0, 0.0};
  while (e) {
    if (e & 1u) r *= base;
    base *= base;
    e >>= 1u;
  }
  return r;
}

template <class K>
class MPoly {
 public:
  using Coeff = K;
  using Traits = CoeffTraits<K>;
  using TermMap = std::map<ExponentVector, K>;

  MPoly() = default;
  explicit MPoly(std::size_t nvars) : n_(nvars) {}

  static MPoly constant(std::size_t nvars, const K& c) {
    MPoly p(nvars);
    if (!Traits::is_zero(c)) p.terms_.emplace(ExponentVector(nvars), c);
    return p;
  }
  static MPoly variable(std::size_t nvars, std::size_t i) {
    MPoly p(nvars);
    p.terms_.emplace(ExponentVector::unit(nvars, i), Traits::one());
    return p;
  }
  static MPoly monomial(const ExponentVector& e, const K& c) {
    MPoly p(e.size());
    if (!Traits::is_zero(c)) p.terms_.emplace(e, c);
    return p;
  }

  std::size_t nvars() const noexcept { return n_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t num_terms() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_zero());
  }
  /// Constant term (zero if absent).
  K constant_term() const {
    auto it = terms_.find(ExponentVector(n_));
    return it == terms_.end() ? Traits::zero() : it->second;
  }

  unsigned degree() const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e.degree());
    return d;
  }
  unsigned degree_in(std::size_t var) const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max<unsigned>(d, e[var]);
    return d;
  }
  bool uses_variable(std::size_t var) const { return degree_in(var) > 0; }

  /// Adds c * x^e in place.
  void add_term(const ExponentVector& e, const K& c) {
    if (e.size() != n_) throw InvalidArgument("exponent length does not match variable count");
    if (Traits::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (Traits::is_zero(it->second)) terms_.erase(it);
    }
  }

  MPoly& operator+=(const MPoly& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  MPoly& operator-=(const MPoly& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  MPoly& operator*=(const K& s) {
    if (Traits::is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }

  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator-(MPoly a) {
    for (auto& [e, c] : a.terms_) c = -c;
    return a;
  }
  friend MPoly operator*(MPoly a, const K& s) { return a *= s; }
  friend MPoly operator*(const K& s, MPoly a) { return a *= s; }
  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    a.check_compatible(b);
    MPoly r(a.n_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
    return r;
  }
  MPoly& operator*=(const MPoly& o) { return *this = *this * o; }

  friend bool operator==(const MPoly& a, const MPoly& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }

  MPoly pow(unsigned k) const {
    MPoly r = constant(n_, Traits::one());
    MPoly base = *this;
    while (k) {
      if (k & 1u) r = r * base;
      k >>= 1u;
      if (k) base = base * base;
    }
    return r;
  }

  /// Formal partial derivative with respect to variable i (0-based).
  MPoly differentiate(std::size_t i) const {
    if (i >= n_) throw InvalidArgument("differentiation index out of range");
    MPoly r(n_);
    for (const auto& [e, c] : terms_) {
      if (e[i] == 0) continue;
      K k = c;
      k *= Traits::from_int(e[i]);
      r.add_term(e.minus_unit(i), k);
    }
    return r;
  }

  /// Multi-index derivative d^gamma p.
  MPoly derivative(const ExponentVector& gamma) const {
    if (gamma.size() != n_) throw InvalidArgument("derivative multi-index length mismatch");
    MPoly r(n_);
    for (const auto& [e, c] : terms_) {
      if (!gamma.divides(e)) continue;
      K k = c;
      for (std::size_t v = 0; v < n_; ++v)
        for (unsigned j = 0; j < gamma[v]; ++j) k *= Traits::from_int(static_cast<long>(e[v]) - j);
      r.add_term(e - gamma, k);
    }
    return r;
  }

  /// Value at a complex point; rational coefficients are promoted.
  Complex evaluate(std::span<const Complex> point) const {
    if (point.size() != n_) throw InvalidArgument("evaluation point has wrong length");
    Complex s{0.0, 0.0};
    for (const auto& [e, c] : terms_) {
      Complex m = Traits::to_complex(c);
      for (std::size_t v = 0; v < n_; ++v)
        if (e[v]) m *= ipow(point[v], e[v]);
      s += m;
    }
    return s;
  }

  /// Replaces variable `var` by the polynomial `value` (same variable space).
  MPoly substitute(std::size_t var, const MPoly& value) const {
    check_compatible(value);
    const unsigned dmax = degree_in(var);
    std::vector<MPoly> powers{constant(n_, Traits::one())};
    for (unsigned k = 1; k <= dmax; ++k) powers.push_back(powers.back() * value);
    MPoly r(n_);
    for (const auto& [e, c] : terms_) {
      const unsigned k = e[var];
      if (k == 0) {
        r.add_term(e, c);
        continue;
      }
      ExponentVector rest = e;
      rest[var] = 0;
      r += monomial(rest, c) * powers[k];
    }
    return r;
  }

  /// Re-indexes variables: variable v becomes new_index[v] in a space of
  /// size new_n. Variables mapped to npos must not occur.
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  MPoly remap(std::size_t new_n, std::span<const std::size_t> new_index) const {
    if (new_index.size() != n_) throw InvalidArgument("remap table has wrong length");
    MPoly r(new_n);
    for (const auto& [e, c] : terms_) {
      ExponentVector ne(new_n);
      for (std::size_t v = 0; v < n_; ++v) {
        if (!e[v]) continue;
        if (new_index[v] == npos || new_index[v] >= new_n)
          throw InvalidArgument("remap drops a variable that occurs in the polynomial");
        ne[new_index[v]] = e[v];
      }
      r.add_term(ne, c);
    }
    return r;
  }

  /// Writes p = coef * x_var + rest when p has degree exactly one in x_var.
  std::optional<std::pair<MPoly, MPoly>> split_linear(std::size_t var) const {
    if (degree_in(var) != 1) return std::nullopt;
    MPoly coef(n_), rest(n_);
    for (const auto& [e, c] : terms_) {
      if (e[var] == 1) {
        ExponentVector f = e;
        f[var] = 0;
        coef.add_term(f, c);
      } else {
        rest.add_term(e, c);
      }
    }
    return std::make_pair(std::move(coef), std::move(rest));
  }

  template <class F>
  auto map_coefficients(F&& f) const {
    using K2 = std::decay_t<decltype(f(std::declval<const K&>()))>;
    MPoly<K2> r(n_);
    for (const auto& [e, c] : terms_) r.add_term(e, f(c));
    return r;
  }

  /// Largest term in grevlex order, the reference for normalization.
  const std::pair<const ExponentVector, K>& leading_term() const {
    if (terms_.empty()) throw InvalidArgument("zero polynomial has no leading term");
    auto it = std::max_element(terms_.begin(), terms_.end(), [](const auto& a, const auto& b) {
      return grevlex_less(a.first, b.first);
    });
    return *it;
  }

  std::string to_string(const std::vector<std::string>& names = {}) const;

 private:
  void check_compatible(const MPoly& o) const {
    if (o.n_ != n_) throw InvalidArgument("polynomials have different variable counts");
  }

  std::size_t n_ = 0;
  TermMap terms_;
};

using RationalPoly = MPoly<Rational>;
using ComplexPoly = MPoly<Complex>;

template <class K>
using PolySystem = std::vector<MPoly<K>>;

/// Converts an exact polynomial to the floating domain.
inline ComplexPoly to_complex_poly(const RationalPoly& p) {
  return p.map_coefficients([](const Rational& c) { return Complex(c.get_d(), 0.0); });
}
inline ComplexPoly to_complex_poly(const ComplexPoly& p) { return p; }

/// Formal Jacobian [d_j f_i].
template <class K>
std::vector<std::vector<MPoly<K>>> jacobian(const PolySystem<K>& f) {
  if (f.empty()) throw InvalidArgument("jacobian of an empty system");
  const std::size_t n = f.front().nvars();
  std::vector<std::vector<MPoly<K>>> j(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i].nvars() != n) throw InvalidArgument("system polynomials have different variable counts");
    j[i].reserve(n);
    for (std::size_t v = 0; v < n; ++v) j[i].push_back(f[i].differentiate(v));
  }
  return j;
}

/// p scaled so that its grevlex-leading coefficient is one. Two exact
/// polynomials are proportional iff their normalizations are equal.
template <class K>
MPoly<K> normalized(const MPoly<K>& p) {
  if (p.is_zero()) return p;
  K inv = CoeffTraits<K>::one();
  inv /= p.leading_term().second;
  return p * inv;
}

/// Proportionality test used for duplicate detection. Exact for Rational;
/// for Complex the normalized coefficients must agree to `rel_tol`.
bool proportional(const RationalPoly& a, const RationalPoly& b, double rel_tol = 0.0);
bool proportional(const ComplexPoly& a, const ComplexPoly& b, double rel_tol = 1e-10);

/// Default variable names x1..xn.
std::vector<std::string> default_names(std::size_t n, const std::string& stem = "x");

}  // namespace multdefl
