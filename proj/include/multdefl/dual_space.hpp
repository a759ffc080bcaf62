#pragma once

// Truncated dual spaces D_t, multiplicity, nil-index and the orthogonal
// primal-dual pair.

#include <map>
#include <vector>

#include "multdefl/macaulay.hpp"

namespace multdefl {

struct DualSpaceOptions {
  /// Null-space tolerance relative to max(sigma_max, 1) of the row-normalized matrix.
  double rank_tol = 1e-8;
  unsigned max_order = 40;
  /// Bound on |f_i(xi)| relative to the largest Taylor coefficient of f_i.
  double residual_tol = 1e-6;
  Kernel kernel = Kernel::Parallel;
};

struct DualSpaceResult {
  Point anchor;
  std::vector<DualElement> basis;
  std::size_t multiplicity = 0;  // delta
  unsigned nil_index = 0;        // o
  std::vector<std::size_t> dims;  // dim D_t for t = 0..o+1
  /// Pairing values Lambda((x - xi)^gamma): one row per basis element,
  /// columns labeled by `columns` (all gamma with |gamma| <= o).
  DenseMatrix pairings;
  std::vector<ExponentVector> columns;
};

/// Dimension of D_t from the order-t Macaulay matrix.
template <class K>
std::size_t dual_dimension(const PolySystem<K>& f, std::span<const Complex> xi, unsigned t,
                           const DualSpaceOptions& opts = {});

template <class K>
DualSpaceResult compute_dual_space(const PolySystem<K>& f, std::span<const Complex> xi,
                                   const DualSpaceOptions& opts = {});

extern template std::size_t dual_dimension(const PolySystem<Rational>&, std::span<const Complex>, unsigned,
                                           const DualSpaceOptions&);
extern template std::size_t dual_dimension(const PolySystem<Complex>&, std::span<const Complex>, unsigned,
                                           const DualSpaceOptions&);
extern template DualSpaceResult compute_dual_space(const PolySystem<Rational>&, std::span<const Complex>,
                                                   const DualSpaceOptions&);
extern template DualSpaceResult compute_dual_space(const PolySystem<Complex>&, std::span<const Complex>,
                                                   const DualSpaceOptions&);

struct PrimalDualPair {
  Point anchor;
  std::vector<ExponentVector> exponents;  // E, alpha_0 = 0
  std::vector<DualElement> basis;         // Lambda_i orthogonal to (x - xi)^{alpha_j}
  DenseMatrix pairings;                   // rows: Lambda_i, columns: `columns`
  std::vector<ExponentVector> columns;
  std::map<ExponentVector, Index> column_index;

  std::size_t size() const noexcept { return exponents.size(); }
  /// nu_{alpha_i, beta} = Lambda_i((x - xi)^beta); zero beyond the stored orders.
  Complex nu(std::size_t i, const ExponentVector& beta) const;
};

/// Assembles a pair from pairing rows; builds the dual elements and the column index.
PrimalDualPair make_primal_dual(Point anchor, std::vector<ExponentVector> exponents, DenseMatrix pairings,
                                std::vector<ExponentVector> columns);

/// Primal exponents by Gauss-Jordan reduction with columns scanned in
/// descending grevlex order, then sorted ascending. Throws NumericalError
/// when the resulting E is not connected to 1.
PrimalDualPair orthogonal_primal_dual(const DualSpaceResult& d, double echelon_tol = 1e-6);

/// Dual basis of D orthogonal to a user-supplied E (kept in the given order).
PrimalDualPair primal_dual_for_basis(const DualSpaceResult& d, const std::vector<ExponentVector>& exponents);

/// True when every nonzero alpha in E has some alpha - e_i in E.
bool connected_to_one(const std::vector<ExponentVector>& exponents);

}  // namespace multdefl
