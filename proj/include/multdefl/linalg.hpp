#pragma once

// Dense complex linear algebra with explicit, tolerance-controlled rank
// decisions. Rank is always read off singular values.

#include <Eigen/Dense>

#include <optional>
#include <vector>

#include "multdefl/coeff.hpp"

namespace multdefl {

using DenseMatrix = Eigen::MatrixXcd;
using DenseVector = Eigen::VectorXcd;
using Index = Eigen::Index;

struct RankReport {
  std::size_t rank = 0;
  std::vector<double> singular_values;  // descending
  double tolerance = 0.0;
};

/// Default tolerance max(rows, cols) * eps * sigma_max.
double default_rank_tolerance(Index rows, Index cols, double sigma_max);

/// Rank from an SVD; singular values above `tol` count. When `tol` is empty
/// the default tolerance is used.
RankReport numerical_rank(const DenseMatrix& m, std::optional<double> tol = std::nullopt);

struct NullSpace {
  std::vector<DenseVector> basis;  // orthonormal
  RankReport rank;
};

/// Orthonormal basis of the right null space at the given tolerance.
NullSpace null_space_report(const DenseMatrix& m, std::optional<double> tol = std::nullopt);

inline std::vector<DenseVector> null_space(const DenseMatrix& m, std::optional<double> tol = std::nullopt) {
  return null_space_report(m, tol).basis;
}

/// Same as null_space_report but the tolerance is rel_tol * max(sigma_max, floor).
NullSpace null_space_relative(const DenseMatrix& m, double rel_tol, double floor = 0.0);

struct EchelonForm {
  DenseMatrix matrix;               // reduced rows first, in pivot order
  std::vector<Index> pivot_columns;  // in processing order
};

/// Gauss-Jordan reduction scanning columns in `column_order`. In each column
/// the remaining row with the largest magnitude becomes the pivot if it
/// exceeds `tol`; pivot rows are scaled to 1 and the column is cleared in all
/// other rows. Entries with magnitude below `tol` are flushed to zero.
EchelonForm reduced_row_echelon(const DenseMatrix& m, const std::vector<Index>& column_order, double tol);

struct BlockSelection {
  std::vector<Index> rows;  // ascending
  std::vector<Index> cols;  // ascending
};

/// r rows and r columns of an invertible block chosen by r steps of
/// complete-pivoting Gaussian elimination. Throws NumericalError when a pivot
/// falls below `tol` (r exceeds the numerical rank).
BlockSelection max_rank_submatrix(const DenseMatrix& m, std::size_t r, std::optional<double> tol = std::nullopt);

}  // namespace multdefl
