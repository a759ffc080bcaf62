#include "multdefl/mult_structure.hpp"

#include <algorithm>
#include <set>

namespace multdefl {

ExponentSets exponent_sets(std::vector<ExponentVector> E, ExponentOrder order) {
  if (E.empty()) throw InvalidArgument("empty exponent set");
  const std::size_t n = E.front().size();
  if (n == 0) throw InvalidArgument("exponent vectors have length zero");
  for (const auto& a : E)
    if (a.size() != n) throw InvalidArgument("exponent vectors have different lengths");
  {
    std::set<ExponentVector> seen;
    for (const auto& a : E)
      if (!seen.insert(a).second) throw InvalidArgument("duplicate exponent " + a.to_string());
  }
  if (!connected_to_one(E)) throw InvalidArgument("exponent set is not connected to 1");
  if (order == ExponentOrder::Grevlex) {
    std::sort(E.begin(), E.end(), grevlex_less);
  } else {
    if (!E.front().is_zero()) throw InvalidArgument("exponent list must start with 0");
    for (std::size_t k = 1; k < E.size(); ++k)
      if (E[k].degree() < E[k - 1].degree()) throw InvalidArgument("exponent list is not ordered by degree");
  }
  ExponentSets s;
  s.n = n;
  s.E = std::move(E);
  for (std::size_t k = 0; k < s.E.size(); ++k) s.index.emplace(s.E[k], k);
  std::set<ExponentVector, GrevlexLess> plus;
  for (const auto& a : s.E)
    for (std::size_t i = 0; i < n; ++i) plus.insert(a.plus_unit(i));
  s.E_plus.assign(plus.begin(), plus.end());
  for (const auto& b : s.E_plus)
    if (!s.contains(b)) s.border.push_back(b);
  return s;
}

template <class K>
ParamMulMatrices<K> build_param_matrices(const ExponentSets& s) {
  const std::size_t n = s.n, d = s.size();
  // Entry (l, k) of M_i stands for Lambda_l((x - xi)^{alpha_k + e_i}).
  enum Tag { Zero, One, Var };
  struct Slot {
    Tag tag;
    std::size_t var;
  };
  std::map<std::pair<std::size_t, ExponentVector>, std::size_t> keys;
  std::vector<MuVariable> registry;
  std::vector<std::vector<Slot>> slots(n, std::vector<Slot>(d * d, Slot{Zero, 0}));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < d; ++k) {
      const ExponentVector beta = s.E[k].plus_unit(i);
      const bool inside = s.contains(beta);
      for (std::size_t l = k + 1; l < d; ++l) {
        Slot& slot = slots[i][l * d + k];
        if (inside) {
          slot.tag = s.E[l] == beta ? One : Zero;
          continue;
        }
        auto [it, fresh] = keys.try_emplace({l, beta}, registry.size());
        if (fresh) registry.push_back({l, s.E[l], beta});
        slot = {Var, it->second};
      }
    }
  }
  ParamMulMatrices<K> p;
  p.n = n;
  p.delta = d;
  p.registry = std::move(registry);
  const std::size_t nv = p.nvars();
  p.m.assign(n, std::vector<MPoly<K>>(d * d, MPoly<K>(nv)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t e = 0; e < d * d; ++e) {
      if (slots[i][e].tag == One) p.m[i][e] = MPoly<K>::constant(nv, CoeffTraits<K>::one());
      if (slots[i][e].tag == Var) p.m[i][e] = MPoly<K>::variable(nv, n + slots[i][e].var);
    }
  return p;
}

namespace {

template <class K>
using Column = std::vector<MPoly<K>>;

template <class K>
MPoly<K> product_entry(const ParamMulMatrices<K>& p, std::size_t a, std::size_t b, std::size_t l, std::size_t k) {
  // (M_a M_b)(l, k); both strictly lower triangular, so only k < r < l contribute.
  MPoly<K> s(p.nvars());
  for (std::size_t r = k + 1; r < l; ++r) {
    const MPoly<K>& x = p.at(a, l, r);
    if (x.is_zero()) continue;
    const MPoly<K>& y = p.at(b, r, k);
    if (y.is_zero()) continue;
    s += x * y;
  }
  return s;
}

template <class K>
MPoly<K> commutator_entry(const ParamMulMatrices<K>& p, std::size_t i, std::size_t j, std::size_t l, std::size_t k) {
  return product_entry(p, i, j, l, k) - product_entry(p, j, i, l, k);
}

struct EntryPos {
  std::size_t i, j, l, k;
};

template <class K>
bool coefficient_is_constant(const MPoly<K>& c, std::size_t) {
  return c.is_constant() && !c.is_zero();
}

// Registry variables that occur with degree exactly one, with a constant
// coefficient, in descending index order; the first one that qualifies wins.
template <class K>
std::optional<std::pair<std::size_t, MPoly<K>>> pick_elimination(const MPoly<K>& e, std::size_t n,
                                                                  ReductionRule rule) {
  const std::size_t nv = e.nvars();
  std::vector<unsigned> deg(nv, 0);
  for (const auto& [x, c] : e.terms())
    for (std::size_t v = n; v < nv; ++v) deg[v] = std::max<unsigned>(deg[v], x[v]);
  for (std::size_t v = nv; v-- > n;) {
    if (deg[v] != 1) continue;
    auto split = e.split_linear(v);
    if (!split) continue;
    auto& [coef, rest] = *split;
    if (!coefficient_is_constant(coef, n)) continue;
    if (rule == ReductionRule::ConstantRemainder) {
      bool mu_free = true;
      for (const auto& [x, c] : rest.terms())
        for (std::size_t u = n; u < nv && mu_free; ++u)
          if (x[u]) mu_free = false;
      if (!mu_free) continue;
    }
    K inv = CoeffTraits<K>::one();
    inv /= coef.constant_term();
    return std::make_pair(v, -(rest * inv));
  }
  return std::nullopt;
}

}  // namespace

template <class K>
ParamMulMatrices<K> reduce_parameters(const ExponentSets& s, ParamMulMatrices<K> p, ReductionRule rule) {
  if (s.size() != p.delta || s.n != p.n) throw InvalidArgument("matrices do not match the exponent sets");
  const std::size_t n = p.n, d = p.delta;
  std::vector<MPoly<K>> entries;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t l = 0; l < d; ++l)
        for (std::size_t k = 0; k < l; ++k) {
          MPoly<K> e = commutator_entry(p, i, j, l, k);
          if (!e.is_zero()) entries.push_back(std::move(e));
        }
  std::vector<bool> gone(p.registry.size(), false);
  // Eliminated values are kept in the full variable space until the final remap.
  std::vector<std::pair<std::size_t, MPoly<K>>> elim;
  for (;;) {
    std::optional<std::pair<std::size_t, MPoly<K>>> pick;
    for (const auto& e : entries)
      if ((pick = pick_elimination(e, n, rule))) break;
    if (!pick) break;
    const auto& [v, value] = *pick;
    for (auto& mat : p.m)
      for (auto& x : mat)
        if (x.degree_in(v)) x = x.substitute(v, value);
    std::vector<MPoly<K>> next;
    next.reserve(entries.size());
    for (auto& e : entries) {
      MPoly<K> r = e.degree_in(v) ? e.substitute(v, value) : std::move(e);
      if (!r.is_zero()) next.push_back(std::move(r));
    }
    entries = std::move(next);
    for (auto& [u, x] : elim)
      if (x.degree_in(v)) x = x.substitute(v, value);
    elim.emplace_back(v, value);
    gone[v - n] = true;
  }

  std::vector<std::size_t> remap(p.nvars(), MPoly<K>::npos);
  for (std::size_t v = 0; v < n; ++v) remap[v] = v;
  std::vector<MuVariable> kept;
  for (std::size_t r = 0; r < p.registry.size(); ++r) {
    if (gone[r]) continue;
    remap[n + r] = n + kept.size();
    kept.push_back(p.registry[r]);
  }
  const std::size_t nv = n + kept.size();
  ParamMulMatrices<K> out;
  out.n = n;
  out.delta = d;
  out.m.assign(n, std::vector<MPoly<K>>(d * d));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t e = 0; e < d * d; ++e) out.m[i][e] = p.m[i][e].remap(nv, remap);
  for (auto& [mv, x] : p.eliminated) out.eliminated.emplace_back(mv, x.remap(nv, remap));
  for (auto& [v, x] : elim) out.eliminated.emplace_back(p.registry[v - n], x.remap(nv, remap));
  out.registry = std::move(kept);
  return out;
}

template <class K>
const std::vector<MPoly<K>>& NormalFormEngine<K>::power_column(const ExponentVector& gamma) {
  if (auto it = memo_.find(gamma); it != memo_.end()) return it->second;
  const std::size_t d = p_.delta, nv = p_.nvars();
  std::vector<MPoly<K>> col;
  if (gamma.is_zero()) {
    col.assign(d, MPoly<K>(nv));
    col[0] = MPoly<K>::constant(nv, CoeffTraits<K>::one());
  } else if (gamma.degree() < d) {
    std::size_t i = 0;
    while (gamma[i] == 0) ++i;
    const std::vector<MPoly<K>> prev = power_column(gamma.minus_unit(i));
    if (!prev.empty()) {
      col.assign(d, MPoly<K>(nv));
      bool any = false;
      for (std::size_t l = 0; l < d; ++l) {
        for (std::size_t k = 0; k < l; ++k) {
          if (prev[k].is_zero()) continue;
          const MPoly<K>& a = p_.at(i, l, k);
          if (a.is_zero()) continue;
          col[l] += a * prev[k];
        }
        any = any || !col[l].is_zero();
      }
      if (!any) col.clear();
    }
  }
  return memo_.emplace(gamma, std::move(col)).first->second;
}

template <class K>
std::vector<MPoly<K>> NormalFormEngine<K>::normal_form(const MPoly<K>& f) {
  const std::size_t n = p_.n, d = p_.delta, nv = p_.nvars();
  if (f.nvars() != n) throw InvalidArgument("polynomial variable count does not match the matrices");
  std::vector<std::size_t> embed(n);
  for (std::size_t v = 0; v < n; ++v) embed[v] = v;
  std::vector<MPoly<K>> out(d, MPoly<K>(nv));
  const unsigned top = std::min<unsigned>(f.degree(), static_cast<unsigned>(d - 1));
  for (const auto& gamma : monomials_up_to(n, top)) {
    MPoly<K> dg = f.derivative(gamma);
    if (dg.is_zero()) continue;
    const auto& col = power_column(gamma);
    if (col.empty()) continue;
    K scale = CoeffTraits<K>::one();
    if constexpr (CoeffTraits<K>::exact) {
      scale /= gamma.factorial_exact();
    } else {
      scale /= gamma.factorial();
    }
    const MPoly<K> dz = dg.remap(nv, embed) * scale;
    for (std::size_t l = 0; l < d; ++l)
      if (!col[l].is_zero()) out[l] += dz * col[l];
  }
  return out;
}

std::string Provenance::to_string() const {
  if (kind == Kind::NormalForm) return "nf(" + std::to_string(k + 1) + "," + std::to_string(row + 1) + ")";
  return "comm(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," + std::to_string(row + 1) + "," +
         std::to_string(col + 1) + ")";
}

namespace {

template <class K>
bool keep_unique(const MPoly<K>& p, const std::vector<LabeledPoly<K>>& existing) {
  if (p.is_zero()) return false;
  for (const auto& q : existing)
    if (proportional(p, q.poly)) return false;
  return true;
}

}  // namespace

template <class K>
std::vector<LabeledPoly<K>> commutator_equations(const ParamMulMatrices<K>& p) {
  std::vector<LabeledPoly<K>> out;
  for (std::size_t i = 0; i < p.n; ++i)
    for (std::size_t j = i + 1; j < p.n; ++j)
      for (std::size_t l = 0; l < p.delta; ++l)
        for (std::size_t k = 0; k < l; ++k) {
          MPoly<K> e = commutator_entry(p, i, j, l, k);
          if (!keep_unique(e, out)) continue;
          Provenance pv;
          pv.kind = Provenance::Kind::Commutator;
          pv.i = i;
          pv.j = j;
          pv.row = l;
          pv.col = k;
          out.push_back({std::move(e), pv});
        }
  return out;
}

template <class K>
PolySystem<K> DeflatedSystem<K>::system() const {
  PolySystem<K> s;
  s.reserve(polys.size());
  for (const auto& lp : polys) s.push_back(lp.poly);
  return s;
}

template <class K>
DeflatedSystem<K> build_deflated_system(const PolySystem<K>& f, const ExponentSets& s, const DeflationOptions& opts,
                                        const std::vector<std::string>& var_names) {
  if (f.empty()) throw InvalidArgument("empty system");
  if (f.front().nvars() != s.n) throw InvalidArgument("system and exponent sets have different variable counts");
  DeflatedSystem<K> out;
  out.n = s.n;
  out.matrices = build_param_matrices<K>(s);
  if (opts.reduce) out.matrices = reduce_parameters(s, std::move(out.matrices), opts.rule);
  const auto& p = out.matrices;

  for (std::size_t v = 0; v < s.n; ++v)
    out.names.push_back(var_names.size() == s.n ? var_names[v] : "z" + std::to_string(v + 1));
  for (std::size_t r = 0; r < p.registry.size(); ++r) out.names.push_back("mu" + std::to_string(r + 1));

  NormalFormEngine<K> engine(p);
  for (std::size_t k = 0; k < f.size(); ++k) {
    std::vector<MPoly<K>> nf = engine.normal_form(f[k]);
    for (std::size_t row = 0; row < nf.size(); ++row) {
      ++out.nf_candidates;
      if (!keep_unique(nf[row], out.polys)) continue;
      Provenance pv;
      pv.k = k;
      pv.row = row;
      out.polys.push_back({std::move(nf[row]), pv});
    }
  }
  for (std::size_t i = 0; i < p.n; ++i)
    for (std::size_t j = i + 1; j < p.n; ++j)
      for (std::size_t l = 0; l < p.delta; ++l)
        for (std::size_t k = 0; k < l; ++k) {
          MPoly<K> e = commutator_entry(p, i, j, l, k);
          if (e.is_zero()) continue;
          ++out.commutator_candidates;
          if (!keep_unique(e, out.polys)) continue;
          Provenance pv;
          pv.kind = Provenance::Kind::Commutator;
          pv.i = i;
          pv.j = j;
          pv.row = l;
          pv.col = k;
          out.polys.push_back({std::move(e), pv});
        }
  return out;
}

template <class K>
std::vector<Complex> parameter_values(const ParamMulMatrices<K>& p, const PrimalDualPair& pd) {
  if (pd.size() != p.delta) throw InvalidArgument("primal-dual pair size does not match the matrices");
  std::vector<Complex> mu;
  mu.reserve(p.registry.size());
  for (const auto& v : p.registry) {
    if (pd.exponents[v.row] != v.alpha) throw InvalidArgument("primal exponents differ from the matrix basis");
    mu.push_back(pd.nu(v.row, v.beta));
  }
  return mu;
}

template <class K>
std::vector<DenseMatrix> evaluate_matrices(const ParamMulMatrices<K>& p, std::span<const Complex> mu) {
  if (mu.size() != p.registry.size()) throw InvalidArgument("wrong number of parameter values");
  Point x(p.nvars(), Complex{});
  std::copy(mu.begin(), mu.end(), x.begin() + static_cast<std::ptrdiff_t>(p.n));
  const Index d = static_cast<Index>(p.delta);
  std::vector<DenseMatrix> out(p.n, DenseMatrix::Zero(d, d));
  for (std::size_t i = 0; i < p.n; ++i)
    for (Index l = 0; l < d; ++l)
      for (Index k = 0; k < l; ++k) {
        const auto& e = p.at(i, static_cast<std::size_t>(l), static_cast<std::size_t>(k));
        if (!e.is_zero()) out[i](l, k) = e.evaluate(x);
      }
  return out;
}

template <class K>
PrimalDualPair dual_from_matrices(const ParamMulMatrices<K>& p, std::span<const Complex> mu, const ExponentSets& s,
                                  unsigned o, std::span<const Complex> anchor, double commute_tol) {
  if (s.size() != p.delta || s.n != p.n) throw InvalidArgument("matrices do not match the exponent sets");
  if (anchor.size() != p.n) throw InvalidArgument("anchor has wrong length");
  const auto m = evaluate_matrices(p, mu);
  double scale = 1.0;
  for (const auto& a : m) scale = std::max(scale, a.norm());
  for (std::size_t i = 0; i < p.n; ++i)
    for (std::size_t j = i + 1; j < p.n; ++j) {
      const double c = (m[i] * m[j] - m[j] * m[i]).norm();
      if (c > commute_tol * scale * scale)
        throw NumericalError("multiplication matrices " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                             " do not commute (residual " + std::to_string(c) + ")");
    }
  const Index d = static_cast<Index>(p.delta);
  auto columns = monomials_up_to(p.n, o);
  std::map<ExponentVector, DenseVector> w;
  DenseMatrix table(d, static_cast<Index>(columns.size()));
  for (std::size_t c = 0; c < columns.size(); ++c) {
    const ExponentVector& g = columns[c];
    DenseVector v;
    if (g.is_zero()) {
      v = DenseVector::Zero(d);
      v(0) = 1.0;
    } else {
      std::size_t i = 0;
      while (g[i] == 0) ++i;
      v = m[i] * w.at(g.minus_unit(i));
    }
    table.col(static_cast<Index>(c)) = v;
    w.emplace(g, std::move(v));
  }
  return make_primal_dual(Point(anchor.begin(), anchor.end()), s.E, std::move(table), std::move(columns));
}

#define MULTDEFL_INSTANTIATE(K)                                                                                    \
  template ParamMulMatrices<K> build_param_matrices<K>(const ExponentSets&);                                       \
  template ParamMulMatrices<K> reduce_parameters(const ExponentSets&, ParamMulMatrices<K>, ReductionRule);         \
  template class NormalFormEngine<K>;                                                                              \
  template std::vector<LabeledPoly<K>> commutator_equations(const ParamMulMatrices<K>&);                           \
  template struct DeflatedSystem<K>;                                                                               \
  template DeflatedSystem<K> build_deflated_system(const PolySystem<K>&, const ExponentSets&,                      \
                                                   const DeflationOptions&, const std::vector<std::string>&);      \
  template std::vector<Complex> parameter_values(const ParamMulMatrices<K>&, const PrimalDualPair&);               \
  template std::vector<DenseMatrix> evaluate_matrices(const ParamMulMatrices<K>&, std::span<const Complex>);       \
  template PrimalDualPair dual_from_matrices(const ParamMulMatrices<K>&, std::span<const Complex>,                 \
                                             const ExponentSets&, unsigned, std::span<const Complex>, double);

MULTDEFL_INSTANTIATE(Rational)
MULTDEFL_INSTANTIATE(Complex)

}  // namespace multdefl
