#pragma once

// Independent exact references for the tests. Nothing here goes through the
// library's Taylor expansion, Macaulay layout or SVD code.

#include <gmpxx.h>

#include <map>
#include <vector>

#include "multdefl/mpoly.hpp"

namespace oracle {

using Mono = std::vector<unsigned>;
using QPoly = std::map<Mono, mpq_class>;

inline mpq_class binom(unsigned n, unsigned k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return mpq_class(r);
}

inline mpq_class qpow(const mpq_class& b, unsigned e) {
  mpq_class r = 1;
  for (unsigned i = 0; i < e; ++i) r *= b;
  return r;
}

/// p(y + xi) expanded term by term with binomials.
inline QPoly shift(const multdefl::RationalPoly& p, const std::vector<mpq_class>& xi) {
  const std::size_t n = p.nvars();
  QPoly out;
  for (const auto& [e, c] : p.terms()) {
    // product over variables of (y_v + xi_v)^{e_v}
    QPoly acc{{Mono(n, 0), c}};
    for (std::size_t v = 0; v < n; ++v) {
      QPoly next;
      for (const auto& [m, a] : acc)
        for (unsigned k = 0; k <= e[v]; ++k) {
          mpq_class coef = a * binom(e[v], k) * qpow(xi[v], e[v] - k);
          if (coef == 0) continue;
          Mono mm = m;
          mm[v] += k;
          next[mm] += coef;
        }
      acc = std::move(next);
    }
    for (auto& [m, a] : acc) out[m] += a;
  }
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

inline void monomials(std::size_t n, unsigned t, Mono& cur, std::size_t v, unsigned left, std::vector<Mono>& out) {
  if (v == n) {
    out.push_back(cur);
    return;
  }
  for (unsigned k = 0; k <= left; ++k) {
    cur[v] = k;
    monomials(n, t, cur, v + 1, left - k, out);
  }
  cur[v] = 0;
}

inline std::vector<Mono> monomials(std::size_t n, unsigned t) {
  std::vector<Mono> out;
  Mono cur(n, 0);
  monomials(n, t, cur, 0, t, out);
  return out;
}

inline unsigned degree(const Mono& m) {
  unsigned d = 0;
  for (auto v : m) d += v;
  return d;
}

using SparseRow = std::map<std::size_t, mpq_class>;

/// Rank of a set of sparse rational rows by incremental elimination.
inline std::size_t exact_rank(std::vector<SparseRow> rows) {
  std::map<std::size_t, SparseRow> pivots;  // leading column -> row with leading entry 1
  for (auto& r : rows) {
    while (!r.empty()) {
      const auto lead = r.begin()->first;
      auto it = pivots.find(lead);
      if (it == pivots.end()) {
        const mpq_class inv = 1 / r.begin()->second;
        for (auto& [c, a] : r) a *= inv;
        pivots.emplace(lead, std::move(r));
        break;
      }
      const mpq_class s = r.begin()->second;
      for (const auto& [c, a] : it->second) {
        mpq_class& x = r[c];
        x -= s * a;
        if (x == 0) r.erase(c);
      }
    }
  }
  return pivots.size();
}

/// dim D_t: columns are all y^gamma with |gamma| <= t, rows are
/// y^beta f_i(y + xi) for |beta| <= t - 1, truncated at degree t.
inline std::size_t null_dimension(const std::vector<multdefl::RationalPoly>& f, const std::vector<mpq_class>& xi,
                                  unsigned t) {
  const std::size_t n = xi.size();
  const auto cols = monomials(n, t);
  std::map<Mono, std::size_t> col;
  for (std::size_t c = 0; c < cols.size(); ++c) col[cols[c]] = c;
  if (t == 0) {
    for (const auto& p : f)
      if (shift(p, xi).count(Mono(n, 0))) return 0;
    return 1;
  }
  std::vector<SparseRow> rows;
  const auto shifts = monomials(n, t - 1);
  for (const auto& p : f) {
    const QPoly g = shift(p, xi);
    for (const auto& b : shifts) {
      SparseRow r;
      for (const auto& [m, a] : g) {
        Mono s = m;
        for (std::size_t v = 0; v < n; ++v) s[v] += b[v];
        if (degree(s) <= t) r[col.at(s)] = a;
      }
      if (!r.empty()) rows.push_back(std::move(r));
    }
  }
  return cols.size() - exact_rank(std::move(rows));
}

}  // namespace oracle
