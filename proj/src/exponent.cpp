#include "multdefl/exponent.hpp"

#include <algorithm>
#include <numeric>

#include "multdefl/error.hpp"

namespace multdefl {

ExponentVector::ExponentVector(std::initializer_list<unsigned> init) {
  e_.reserve(init.size());
  for (unsigned v : init) e_.push_back(static_cast<value_type>(v));
}

ExponentVector ExponentVector::unit(std::size_t n, std::size_t i) {
  if (i >= n) throw InvalidArgument("unit exponent index out of range");
  ExponentVector e(n);
  e.e_[i] = 1;
  return e;
}

unsigned ExponentVector::degree() const noexcept {
  return std::accumulate(e_.begin(), e_.end(), 0u);
}

ExponentVector ExponentVector::plus_unit(std::size_t i) const {
  ExponentVector r = *this;
  ++r.e_.at(i);
  return r;
}

ExponentVector ExponentVector::minus_unit(std::size_t i) const {
  if (e_.at(i) == 0) throw InvalidArgument("exponent would become negative");
  ExponentVector r = *this;
  --r.e_[i];
  return r;
}

bool ExponentVector::divides(const ExponentVector& other) const {
  if (other.size() != size()) return false;
  for (std::size_t i = 0; i < size(); ++i)
    if (e_[i] > other.e_[i]) return false;
  return true;
}

ExponentVector operator+(const ExponentVector& a, const ExponentVector& b) {
  if (a.size() != b.size()) throw InvalidArgument("exponent length mismatch");
  ExponentVector r = a;
  for (std::size_t i = 0; i < a.size(); ++i) r.e_[i] = static_cast<ExponentVector::value_type>(a.e_[i] + b.e_[i]);
  return r;
}

ExponentVector operator-(const ExponentVector& a, const ExponentVector& b) {
  if (!b.divides(a)) throw InvalidArgument("exponent difference would be negative");
  ExponentVector r = a;
  for (std::size_t i = 0; i < a.size(); ++i) r.e_[i] = static_cast<ExponentVector::value_type>(a.e_[i] - b.e_[i]);
  return r;
}

double ExponentVector::factorial() const {
  double f = 1.0;
  for (auto v : e_)
    for (unsigned k = 2; k <= v; ++k) f *= k;
  return f;
}

Rational ExponentVector::factorial_exact() const {
  mpz_class f = 1;
  for (auto v : e_) {
    mpz_class g;
    mpz_fac_ui(g.get_mpz_t(), v);
    f *= g;
  }
  return Rational(f);
}

std::string ExponentVector::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < e_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(e_[i]);
  }
  return s + ")";
}

bool grevlex_less(const ExponentVector& a, const ExponentVector& b) {
  const unsigned da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return false;
}

namespace {

void enumerate_degree(std::size_t n, unsigned d, std::size_t pos, ExponentVector& cur,
                      std::vector<ExponentVector>& out) {
  if (pos + 1 == n) {
    cur[pos] = static_cast<ExponentVector::value_type>(d);
    out.push_back(cur);
    cur[pos] = 0;
    return;
  }
  for (unsigned k = 0; k <= d; ++k) {
    cur[pos] = static_cast<ExponentVector::value_type>(k);
    enumerate_degree(n, d - k, pos + 1, cur, out);
  }
  cur[pos] = 0;
}

}  // namespace

std::vector<ExponentVector> monomials_up_to(std::size_t n, unsigned t) {
  std::vector<ExponentVector> out;
  if (n == 0) {
    out.emplace_back(0);
    return out;
  }
  out.reserve(count_monomials(n, t));
  for (unsigned d = 0; d <= t; ++d) {
    const std::size_t start = out.size();
    ExponentVector cur(n);
    enumerate_degree(n, d, 0, cur, out);
    std::sort(out.begin() + static_cast<std::ptrdiff_t>(start), out.end(), GrevlexLess{});
  }
  return out;
}

std::size_t count_monomials(std::size_t n, unsigned t) {
  // binom(n + t, n) computed incrementally to stay in integers.
  std::size_t r = 1;
  for (std::size_t k = 1; k <= n; ++k) r = r * (t + k) / k;
  return r;
}

}  // namespace multdefl
