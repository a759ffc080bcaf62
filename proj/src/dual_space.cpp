#include "multdefl/dual_space.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace multdefl {

namespace {

// Taylor coefficients of each f_i scaled to unit max-norm. Scaling a block of
// rows leaves the null space unchanged and makes the tolerance meaningful.
template <class K>
std::vector<TaylorMap> normalized_taylor(const PolySystem<K>& f, std::span<const Complex> xi, double residual_tol) {
  if (f.empty()) throw InvalidArgument("empty system");
  const std::size_t n = f.front().nvars();
  if (xi.size() != n) throw InvalidArgument("point has wrong length");
  std::vector<TaylorMap> out;
  out.reserve(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i].nvars() != n) throw InvalidArgument("system polynomials have different variable counts");
    TaylorMap t = taylor_coefficients(f[i], xi);
    double scale = 0.0;
    for (const auto& [e, c] : t) scale = std::max(scale, std::abs(c));
    if (scale == 0.0) {
      out.push_back({});
      continue;
    }
    for (auto& [e, c] : t) c /= scale;
    auto it = t.find(ExponentVector(n));
    if (it != t.end() && std::abs(it->second) > residual_tol)
      throw InvalidArgument("point does not annihilate polynomial " + std::to_string(i + 1) + " (relative residual " +
                            std::to_string(std::abs(it->second)) + ")");
    out.push_back(std::move(t));
  }
  return out;
}

NullSpace order_null_space(std::size_t n, std::span<const TaylorMap> taylor, unsigned t, const DualSpaceOptions& opts,
                           std::vector<ExponentVector>* columns) {
  MacaulayMatrix m = macaulay_layout(n, taylor.size(), t);
  if (opts.kernel == Kernel::Serial) {
    fill_macaulay_serial(m, taylor, ColumnScaling::Normalized);
  } else {
    fill_macaulay_parallel(m, taylor, ColumnScaling::Normalized);
  }
  if (columns) *columns = m.columns;
  return null_space_relative(m.matrix, opts.rank_tol, 1.0);
}

void fill_column_index(PrimalDualPair& p) {
  p.column_index.clear();
  for (std::size_t j = 0; j < p.columns.size(); ++j) p.column_index.emplace(p.columns[j], static_cast<Index>(j));
}

DualElement element_from_pairings(const Point& anchor, const DenseMatrix& rows, Index r,
                                  const std::vector<ExponentVector>& columns) {
  DualElement L(anchor);
  const double scale = rows.row(r).cwiseAbs().maxCoeff();
  for (Index j = 0; j < rows.cols(); ++j) {
    const Complex v = rows(r, j);
    if (std::abs(v) <= 1e-14 * scale) continue;
    L.add_term(columns[static_cast<std::size_t>(j)], v / columns[static_cast<std::size_t>(j)].factorial());
  }
  return L;
}

}  // namespace

template <class K>
std::size_t dual_dimension(const PolySystem<K>& f, std::span<const Complex> xi, unsigned t,
                           const DualSpaceOptions& opts) {
  const auto taylor = normalized_taylor(f, xi, opts.residual_tol);
  return order_null_space(xi.size(), taylor, t, opts, nullptr).basis.size();
}

template <class K>
DualSpaceResult compute_dual_space(const PolySystem<K>& f, std::span<const Complex> xi, const DualSpaceOptions& opts) {
  const std::size_t n = xi.size();
  const auto taylor = normalized_taylor(f, xi, opts.residual_tol);
  DualSpaceResult res;
  res.anchor.assign(xi.begin(), xi.end());

  std::vector<ExponentVector> cols;
  NullSpace prev = order_null_space(n, taylor, 0, opts, &cols);
  std::vector<ExponentVector> prev_cols = cols;
  res.dims.push_back(prev.basis.size());
  if (prev.basis.empty()) throw NumericalError("no functional vanishes on the system at this point");
  for (unsigned t = 1;; ++t) {
    if (t > opts.max_order + 1)
      throw NumericalError("dual space did not stabilize up to order " + std::to_string(opts.max_order));
    NullSpace cur = order_null_space(n, taylor, t, opts, &cols);
    res.dims.push_back(cur.basis.size());
    if (cur.basis.size() < prev.basis.size())
      throw NumericalError("dual space dimension decreased at order " + std::to_string(t));
    if (cur.basis.size() == prev.basis.size()) {
      res.nil_index = t - 1;
      break;
    }
    prev = std::move(cur);
    prev_cols = cols;
  }

  res.multiplicity = prev.basis.size();
  res.columns = prev_cols;
  res.pairings.resize(static_cast<Index>(res.multiplicity), static_cast<Index>(prev_cols.size()));
  for (std::size_t k = 0; k < res.multiplicity; ++k) res.pairings.row(static_cast<Index>(k)) = prev.basis[k].transpose();
  for (Index k = 0; k < res.pairings.rows(); ++k)
    res.basis.push_back(element_from_pairings(res.anchor, res.pairings, k, res.columns));
  return res;
}

template std::size_t dual_dimension(const PolySystem<Rational>&, std::span<const Complex>, unsigned,
                                    const DualSpaceOptions&);
template std::size_t dual_dimension(const PolySystem<Complex>&, std::span<const Complex>, unsigned,
                                    const DualSpaceOptions&);
template DualSpaceResult compute_dual_space(const PolySystem<Rational>&, std::span<const Complex>,
                                            const DualSpaceOptions&);
template DualSpaceResult compute_dual_space(const PolySystem<Complex>&, std::span<const Complex>,
                                            const DualSpaceOptions&);

bool connected_to_one(const std::vector<ExponentVector>& exponents) {
  if (exponents.empty()) return false;
  std::set<ExponentVector> s(exponents.begin(), exponents.end());
  const std::size_t n = exponents.front().size();
  if (!s.count(ExponentVector(n))) return false;
  for (const auto& a : exponents) {
    if (a.size() != n) return false;
    if (a.is_zero()) continue;
    bool ok = false;
    for (std::size_t i = 0; i < n && !ok; ++i)
      if (a[i] > 0 && s.count(a.minus_unit(i))) ok = true;
    if (!ok) return false;
  }
  return true;
}

Complex PrimalDualPair::nu(std::size_t i, const ExponentVector& beta) const {
  auto it = column_index.find(beta);
  if (it == column_index.end()) return {};
  return pairings(static_cast<Index>(i), it->second);
}

PrimalDualPair make_primal_dual(Point anchor, std::vector<ExponentVector> exponents, DenseMatrix pairings,
                                std::vector<ExponentVector> columns) {
  if (static_cast<Index>(columns.size()) != pairings.cols() || static_cast<Index>(exponents.size()) != pairings.rows())
    throw InvalidArgument("pairing table shape does not match its labels");
  PrimalDualPair p;
  p.anchor = std::move(anchor);
  p.exponents = std::move(exponents);
  p.pairings = std::move(pairings);
  p.columns = std::move(columns);
  for (Index k = 0; k < p.pairings.rows(); ++k) p.basis.push_back(element_from_pairings(p.anchor, p.pairings, k, p.columns));
  fill_column_index(p);
  return p;
}

PrimalDualPair orthogonal_primal_dual(const DualSpaceResult& d, double echelon_tol) {
  if (d.basis.empty()) throw InvalidArgument("empty dual space");
  const Index cols = d.pairings.cols();
  std::vector<Index> order(static_cast<std::size_t>(cols));
  // Columns are stored ascending, so the reverse scan is descending grevlex.
  std::iota(order.rbegin(), order.rend(), Index{0});
  const double scale = d.pairings.cwiseAbs().maxCoeff();
  EchelonForm ech = reduced_row_echelon(d.pairings, order, echelon_tol * scale);
  if (ech.pivot_columns.size() != d.multiplicity)
    throw NumericalError("dual basis coefficient matrix is rank deficient at the echelon tolerance");

  std::vector<std::size_t> perm(ech.pivot_columns.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    return grevlex_less(d.columns[static_cast<std::size_t>(ech.pivot_columns[a])],
                        d.columns[static_cast<std::size_t>(ech.pivot_columns[b])]);
  });

  PrimalDualPair p;
  p.anchor = d.anchor;
  p.columns = d.columns;
  p.pairings.resize(static_cast<Index>(perm.size()), cols);
  for (std::size_t k = 0; k < perm.size(); ++k) {
    p.exponents.push_back(d.columns[static_cast<std::size_t>(ech.pivot_columns[perm[k]])]);
    p.pairings.row(static_cast<Index>(k)) = ech.matrix.row(static_cast<Index>(perm[k]));
  }
  if (!connected_to_one(p.exponents)) throw NumericalError("primal exponents are not connected to 1");
  for (Index k = 0; k < p.pairings.rows(); ++k) p.basis.push_back(element_from_pairings(p.anchor, p.pairings, k, p.columns));
  fill_column_index(p);
  return p;
}

PrimalDualPair primal_dual_for_basis(const DualSpaceResult& d, const std::vector<ExponentVector>& exponents) {
  if (exponents.size() != d.multiplicity)
    throw InvalidArgument("primal basis size " + std::to_string(exponents.size()) + " differs from multiplicity " +
                          std::to_string(d.multiplicity));
  if (!connected_to_one(exponents)) throw InvalidArgument("primal basis is not connected to 1");
  PrimalDualPair p;
  p.anchor = d.anchor;
  p.columns = d.columns;
  fill_column_index(p);
  const Index delta = static_cast<Index>(d.multiplicity);
  DenseMatrix ce(delta, delta);
  for (Index j = 0; j < delta; ++j) {
    auto it = p.column_index.find(exponents[static_cast<std::size_t>(j)]);
    ce.col(j) = it == p.column_index.end() ? DenseVector::Zero(delta) : DenseVector(d.pairings.col(it->second));
  }
  Eigen::FullPivLU<DenseMatrix> lu(ce);
  lu.setThreshold(1e-8);
  if (!lu.isInvertible()) throw InvalidArgument("given exponents do not index a basis of the local quotient");
  // Rows L = ce^{-1} C satisfy L * ce = I, i.e. Lambda_i((x - xi)^{alpha_j}) = delta_ij.
  p.pairings = lu.inverse() * d.pairings;
  p.exponents = exponents;
  for (Index k = 0; k < delta; ++k) p.basis.push_back(element_from_pairings(p.anchor, p.pairings, k, p.columns));
  return p;
}

}  // namespace multdefl
