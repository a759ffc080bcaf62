#include "multdefl/mpoly.hpp"

#include <cstdio>
#include <sstream>

namespace multdefl {

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Sign-aware rendering: returns {negative, magnitude-text, is_unit}.
struct CoeffText {
  bool negative = false;
  std::string text;
  bool unit = false;
};

CoeffText coeff_text(const Rational& c) {
  CoeffText t;
  t.negative = sgn(c) < 0;
  Rational a = abs(c);
  t.unit = (a == 1);
  t.text = a.get_str();
  return t;
}

CoeffText coeff_text(const Complex& c) {
  CoeffText t;
  if (c.imag() == 0.0) {
    t.negative = c.real() < 0;
    t.unit = std::abs(c.real()) == 1.0;
    t.text = format_double(std::abs(c.real()));
  } else {
    t.text = "(" + CoeffTraits<Complex>::to_string(c) + ")";
  }
  return t;
}

}  // namespace

std::string CoeffTraits<Complex>::to_string(const Complex& c) {
  if (c.imag() == 0.0) return format_double(c.real());
  std::string s = c.real() != 0.0 ? format_double(c.real()) : "";
  if (!s.empty() && c.imag() >= 0) s += "+";
  return s + format_double(c.imag()) + "i";
}

template <class K>
std::string MPoly<K>::to_string(const std::vector<std::string>& names_in) const {
  if (terms_.empty()) return "0";
  const auto names = names_in.empty() ? default_names(n_) : names_in;
  std::vector<const std::pair<const ExponentVector, K>*> order;
  for (const auto& t : terms_) order.push_back(&t);
  std::sort(order.begin(), order.end(),
            [](const auto* a, const auto* b) { return grevlex_less(b->first, a->first); });
  std::ostringstream os;
  bool first = true;
  for (const auto* term : order) {
    const auto& [e, c] = *term;
    CoeffText ct = coeff_text(c);
    if (first) {
      if (ct.negative) os << "-";
    } else {
      os << (ct.negative ? " - " : " + ");
    }
    first = false;
    bool wrote = false;
    if (!ct.unit || e.is_zero()) {
      os << ct.text;
      wrote = true;
    }
    for (std::size_t v = 0; v < n_; ++v) {
      if (!e[v]) continue;
      if (wrote) os << "*";
      os << names.at(v);
      if (e[v] > 1) os << "^" << e[v];
      wrote = true;
    }
  }
  return os.str();
}

template class MPoly<Rational>;
template class MPoly<Complex>;

bool proportional(const RationalPoly& a, const RationalPoly& b, double) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  return normalized(a) == normalized(b);
}

bool proportional(const ComplexPoly& a, const ComplexPoly& b, double rel_tol) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  if (a.num_terms() != b.num_terms()) return false;
  const ComplexPoly na = normalized(a), nb = normalized(b);
  double scale = 0.0;
  for (const auto& [e, c] : na.terms()) scale = std::max(scale, std::abs(c));
  auto ib = nb.terms().begin();
  for (const auto& [e, c] : na.terms()) {
    if (ib->first != e) return false;
    if (std::abs(ib->second - c) > rel_tol * scale) return false;
    ++ib;
  }
  return true;
}

std::vector<std::string> default_names(std::size_t n, const std::string& stem) {
  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t i = 0; i < n; ++i) names.push_back(stem + std::to_string(i + 1));
  return names;
}

}  // namespace multdefl
