#pragma once

// Macaulay (dialytic) matrices whose right null spaces are the truncated
// dual spaces D_t of a polynomial system at a point.

#include <map>
#include <span>
#include <utility>
#include <vector>

#include "multdefl/dual_element.hpp"
#include "multdefl/linalg.hpp"

namespace multdefl {

/// How columns are scaled. Raw columns hold d^gamma((x-xi)^beta f_i)(xi);
/// Normalized columns hold the same value divided by gamma!, so a null
/// vector is read directly as pairing values Lambda((x-xi)^gamma).
enum class ColumnScaling { Raw, Normalized };

/// Which fill kernel to run. Both produce identical matrices.
enum class Kernel { Serial, Parallel };

struct MacaulayRow {
  std::size_t poly = 0;  // i, 0-based
  ExponentVector shift;  // beta
};

struct MacaulayMatrix {
  DenseMatrix matrix;
  std::vector<ExponentVector> columns;  // gamma, degree-graded, grevlex-ascending per degree
  std::vector<MacaulayRow> rows;        // (i, beta), |beta| <= max(t-1, 0)
};

using TaylorMap = std::map<ExponentVector, Complex>;

/// Row and column labels of the order-t matrix for n variables, N polynomials.
MacaulayMatrix macaulay_layout(std::size_t n, std::size_t num_polys, unsigned t);

/// Fills a laid-out matrix from per-polynomial Taylor coefficients at xi.
void fill_macaulay_serial(MacaulayMatrix& m, std::span<const TaylorMap> taylor, ColumnScaling scaling);
void fill_macaulay_parallel(MacaulayMatrix& m, std::span<const TaylorMap> taylor, ColumnScaling scaling);

/// Order-t Macaulay matrix of F at xi. Entry ((i,beta), gamma) is
/// d^gamma((x - xi)^beta f_i)(xi) for Raw scaling.
template <class K>
MacaulayMatrix macaulay_matrix(const PolySystem<K>& f, std::span<const Complex> xi, unsigned t,
                               ColumnScaling scaling = ColumnScaling::Raw, Kernel kernel = Kernel::Parallel);

extern template MacaulayMatrix macaulay_matrix(const PolySystem<Rational>&, std::span<const Complex>, unsigned,
                                               ColumnScaling, Kernel);
extern template MacaulayMatrix macaulay_matrix(const PolySystem<Complex>&, std::span<const Complex>, unsigned,
                                               ColumnScaling, Kernel);

}  // namespace multdefl
