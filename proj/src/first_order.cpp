#include "multdefl/first_order.hpp"

#include <algorithm>
#include <map>

#include "multdefl/refine.hpp"

namespace multdefl {

namespace {

template <class K>
using PolyMatrix = std::vector<std::vector<MPoly<K>>>;

// Laplace expansion along rows, memoized on the set of columns still free.
template <class K>
MPoly<K> det_rec(const PolyMatrix<K>& a, std::size_t row, std::uint64_t used, std::map<std::uint64_t, MPoly<K>>& memo) {
  const std::size_t r = a.size();
  const std::size_t nv = a[0][0].nvars();
  if (row == r) return MPoly<K>::constant(nv, CoeffTraits<K>::one());
  if (auto it = memo.find(used); it != memo.end()) return it->second;
  MPoly<K> s(nv);
  int sign = 1;
  for (std::size_t c = 0; c < r; ++c) {
    if (used & (std::uint64_t{1} << c)) continue;
    if (!a[row][c].is_zero()) {
      MPoly<K> t = a[row][c] * det_rec(a, row + 1, used | (std::uint64_t{1} << c), memo);
      if (sign > 0) {
        s += t;
      } else {
        s -= t;
      }
    }
    sign = -sign;
  }
  memo.emplace(used, s);
  return s;
}

template <class K>
bool is_duplicate(const MPoly<K>& p, const PolySystem<K>& existing) {
  for (const auto& q : existing)
    if (proportional(p, q)) return true;
  return false;
}

double rank_tolerance(const RankReport& r, double rank_tol) {
  const double smax = r.singular_values.empty() ? 0.0 : r.singular_values.front();
  return rank_tol * std::max(smax, 1.0);
}

// Row-scaled, see CompiledSystem::scaled_jacobian.
template <class K>
DenseMatrix numeric_jacobian(const PolySystem<K>& f, std::span<const Complex> xi) {
  return CompiledSystem::from(f).scaled_jacobian(xi);
}

// Gauss-Newton with minimum-norm steps on a random square subsystem; a step
// is kept only when it lowers the residual of the whole system.
template <class K>
Point refresh_point(const PolySystem<K>& f, Point x, const FirstOrderOptions& opts) {
  const std::size_t n = x.size();
  if (f.size() < n || opts.newton_steps == 0) return x;
  const CompiledSystem full = CompiledSystem::from(f);
  double res = full.evaluate(x).norm();
  if (res <= opts.refresh_residual) return x;
  const CompiledSystem g(random_square_subsystem(f, opts.seed));
  for (unsigned k = 0; k < opts.newton_steps; ++k) {
    const DenseMatrix j = g.jacobian(x);
    Eigen::CompleteOrthogonalDecomposition<DenseMatrix> cod(j);
    cod.setThreshold(opts.rank_tol);
    const DenseVector dx = cod.solve(-g.evaluate(x));
    Point trial = x;
    for (std::size_t v = 0; v < n; ++v) trial[v] += dx(static_cast<Index>(v));
    const double tres = full.evaluate(trial).norm();
    if (!(tres < res)) break;
    x = std::move(trial);
    res = tres;
    if (res <= opts.refresh_residual) break;
  }
  return x;
}

}  // namespace

template <class K>
MPoly<K> poly_determinant(const PolyMatrix<K>& a) {
  if (a.empty()) throw InvalidArgument("determinant of an empty matrix");
  if (a.size() > 63) throw InvalidArgument("matrix too large for cofactor expansion");
  for (const auto& row : a)
    if (row.size() != a.size()) throw InvalidArgument("determinant of a non-square matrix");
  std::map<std::uint64_t, MPoly<K>> memo;
  return det_rec(a, 0, 0, memo);
}

template <class K>
PolyMatrix<K> poly_adjugate(const PolyMatrix<K>& a) {
  const std::size_t r = a.size();
  if (r == 0) throw InvalidArgument("adjugate of an empty matrix");
  const std::size_t nv = a[0][0].nvars();
  PolyMatrix<K> adj(r, std::vector<MPoly<K>>(r, MPoly<K>(nv)));
  if (r == 1) {
    adj[0][0] = MPoly<K>::constant(nv, CoeffTraits<K>::one());
    return adj;
  }
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      PolyMatrix<K> minor;
      for (std::size_t a_r = 0; a_r < r; ++a_r) {
        if (a_r == i) continue;
        std::vector<MPoly<K>> row;
        for (std::size_t a_c = 0; a_c < r; ++a_c)
          if (a_c != j) row.push_back(a[a_r][a_c]);
        minor.push_back(std::move(row));
      }
      MPoly<K> c = poly_determinant(minor);
      adj[j][i] = (i + j) % 2 ? -c : c;
    }
  }
  return adj;
}

template <class K>
std::size_t jacobian_rank(const PolySystem<K>& f, std::span<const Complex> xi, double rank_tol) {
  const DenseMatrix j = numeric_jacobian(f, xi);
  const RankReport r0 = numerical_rank(j, 0.0);
  return numerical_rank(j, rank_tolerance(r0, rank_tol)).rank;
}

namespace {

bool all_real(const PolySystem<Complex>& f) {
  for (const auto& p : f)
    for (const auto& [e, c] : p.terms())
      if (c.imag() != 0.0) return false;
  return true;
}

// Every double is a dyadic rational, so this conversion is exact.
PolySystem<Rational> to_exact(const PolySystem<Complex>& f) {
  PolySystem<Rational> q;
  for (const auto& p : f) q.push_back(p.map_coefficients([](const Complex& c) { return Rational(c.real()); }));
  return q;
}

template <class K, class C>
MPoly<K> convert(const MPoly<C>& p) {
  if constexpr (std::is_same_v<K, C>) {
    return p;
  } else {
    return to_complex_poly(p);
  }
}

template <class K, class C>
KernelForms<K> convert(const KernelForms<C>& kf) {
  if constexpr (std::is_same_v<K, C>) {
    return kf;
  } else {
    KernelForms<K> out;
    out.block = kf.block;
    out.rank = kf.rank;
    for (const auto& f : kf.forms) {
      KernelForm<K> g;
      g.column = f.column;
      for (const auto& c : f.coefficients) g.coefficients.push_back(convert<K>(c));
      out.forms.push_back(std::move(g));
    }
    return out;
  }
}

template <class K>
KernelForms<K> kernel_forms_impl(const PolySystem<K>& f, std::span<const Complex> xi, double rank_tol) {
  if (f.empty()) throw InvalidArgument("empty system");
  const std::size_t n = f.front().nvars();
  if (xi.size() != n) throw InvalidArgument("point has wrong length");
  const DenseMatrix jn = numeric_jacobian(f, xi);
  const RankReport r0 = numerical_rank(jn, 0.0);
  const double tol = rank_tolerance(r0, rank_tol);
  const std::size_t r = numerical_rank(jn, tol).rank;
  if (r == n) throw InvalidArgument("root is simple: the Jacobian has full column rank");

  KernelForms<K> out;
  out.rank = r;
  const auto jp = jacobian(f);
  std::vector<bool> in_block(n, false);
  MPoly<K> det = MPoly<K>::constant(n, CoeffTraits<K>::one());
  PolyMatrix<K> adj;
  if (r > 0) {
    out.block = max_rank_submatrix(jn, r, tol);
    PolyMatrix<K> a(r, std::vector<MPoly<K>>(r));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j)
        a[i][j] = jp[static_cast<std::size_t>(out.block.rows[i])][static_cast<std::size_t>(out.block.cols[j])];
    det = poly_determinant(a);
    adj = poly_adjugate(a);
    for (auto c : out.block.cols) in_block[static_cast<std::size_t>(c)] = true;
  }
  for (std::size_t free = 0; free < n; ++free) {
    if (in_block[free]) continue;
    KernelForm<K> form;
    form.column = free;
    form.coefficients.assign(n, MPoly<K>(n));
    form.coefficients[free] = det;
    // Block coordinates: -(adj(A) B)_{s, free}, B being the free column restricted to the block rows.
    for (std::size_t s = 0; s < r; ++s) {
      MPoly<K> acc(n);
      for (std::size_t t = 0; t < r; ++t)
        acc += adj[s][t] * jp[static_cast<std::size_t>(out.block.rows[t])][free];
      form.coefficients[static_cast<std::size_t>(out.block.cols[s])] = -acc;
    }
    out.forms.push_back(std::move(form));
  }
  return out;
}

}  // namespace

// Real floating systems are handled exactly over the rationals, so the
// identities behind the construction (block rows of Lambda(f) vanish) hold
// without rounding noise; results are rounded once at the end.
template <class K>
KernelForms<K> kernel_forms(const PolySystem<K>& f, std::span<const Complex> xi, double rank_tol) {
  if constexpr (!CoeffTraits<K>::exact) {
    if (all_real(f)) return convert<K>(kernel_forms_impl(to_exact(f), xi, rank_tol));
  }
  return kernel_forms_impl(f, xi, rank_tol);
}

template <class K>
MPoly<K> apply_form(const KernelForm<K>& form, const MPoly<K>& p) {
  const std::size_t n = p.nvars();
  if (form.coefficients.size() != n) throw InvalidArgument("kernel form has wrong length");
  MPoly<K> s(n);
  for (std::size_t m = 0; m < n; ++m) {
    if (form.coefficients[m].is_zero()) continue;
    const MPoly<K> d = p.differentiate(m);
    if (!d.is_zero()) s += form.coefficients[m] * d;
  }
  return s;
}

namespace {

template <class K, class C>
DeflationStep<K> deflate_core(const PolySystem<K>& f, const PolySystem<C>& fc, std::span<const Complex> xi,
                              const std::vector<std::size_t>& i_set, double rank_tol) {
  if (i_set.empty()) throw InvalidArgument("empty column set");
  const KernelForms<C> kf = kernel_forms_impl(fc, xi, rank_tol);
  std::vector<std::size_t> chosen = i_set;
  std::sort(chosen.begin(), chosen.end());
  chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());
  if (chosen.back() >= kf.forms.size())
    throw InvalidArgument("column index " + std::to_string(chosen.back() + 1) + " exceeds the corank " +
                          std::to_string(kf.forms.size()));

  DeflationStep<K> step;
  step.system = f;
  step.info.block = kf.block;
  step.info.rank = kf.rank;
  step.info.corank = kf.forms.size();
  step.info.i_set = chosen;
  for (std::size_t k = 0; k < f.size(); ++k) {
    for (auto j : chosen) {
      ++step.info.candidates;
      MPoly<C> pc = apply_form(kf.forms[j], fc[k]);
      if (pc.is_zero()) {
        ++step.info.zero;
        continue;
      }
      MPoly<K> p = convert<K>(pc);
      if (is_duplicate(p, step.system)) {
        ++step.info.duplicates;
        continue;
      }
      step.system.push_back(std::move(p));
      ++step.info.appended;
    }
  }
  return step;
}

}  // namespace

template <class K>
DeflationStep<K> deflate_once(const PolySystem<K>& f, std::span<const Complex> xi, const std::vector<std::size_t>& i_set,
                              double rank_tol) {
  if constexpr (!CoeffTraits<K>::exact) {
    if (all_real(f)) return deflate_core(f, to_exact(f), xi, i_set, rank_tol);
  }
  return deflate_core(f, f, xi, i_set, rank_tol);
}

template <class K>
DeflationTrace<K> deflate_fully(const PolySystem<K>& f, std::span<const Complex> xi, const FirstOrderOptions& opts) {
  if (f.empty()) throw InvalidArgument("empty system");
  const std::size_t n = f.front().nvars();
  DeflationTrace<K> tr;
  tr.systems.push_back(f);
  tr.point.assign(xi.begin(), xi.end());
  for (;;) {
    const PolySystem<K>& cur = tr.systems.back();
    const std::size_t r = jacobian_rank(cur, tr.point, opts.rank_tol);
    tr.ranks.push_back(r);
    if (r == n) break;
    if (tr.steps.size() >= opts.max_iterations)
      throw NumericalError("deflation did not reach a simple root within " + std::to_string(opts.max_iterations) +
                           " steps");
    std::vector<std::size_t> cols;
    for (auto j : opts.i_set)
      if (j < n - r) cols.push_back(j);
    if (cols.empty()) cols.push_back(0);
    DeflationStep<K> step = deflate_once(cur, tr.point, cols, opts.rank_tol);
    if (step.info.appended == 0) throw NumericalError("deflation step added no new polynomial");
    tr.steps.push_back(step.info);
    tr.systems.push_back(std::move(step.system));
    tr.point = refresh_point(tr.systems.back(), tr.point, opts);
  }
  return tr;
}

#define MULTDEFL_INSTANTIATE(K)                                                                                  \
  template MPoly<K> poly_determinant(const PolyMatrix<K>&);                                                      \
  template PolyMatrix<K> poly_adjugate(const PolyMatrix<K>&);                                                    \
  template std::size_t jacobian_rank(const PolySystem<K>&, std::span<const Complex>, double);                    \
  template KernelForms<K> kernel_forms(const PolySystem<K>&, std::span<const Complex>, double);                  \
  template MPoly<K> apply_form(const KernelForm<K>&, const MPoly<K>&);                                           \
  template DeflationStep<K> deflate_once(const PolySystem<K>&, std::span<const Complex>,                         \
                                         const std::vector<std::size_t>&, double);                               \
  template DeflationTrace<K> deflate_fully(const PolySystem<K>&, std::span<const Complex>, const FirstOrderOptions&);

MULTDEFL_INSTANTIATE(Rational)
MULTDEFL_INSTANTIATE(Complex)

}  // namespace multdefl
