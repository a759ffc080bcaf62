#include "multdefl/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "multdefl/error.hpp"

namespace multdefl {

namespace {

struct SvdResult {
  Eigen::VectorXd sigma;  // descending, length min(rows, cols) of the reduced problem
  DenseMatrix v;          // cols x cols, full right basis
};

// Tall inputs are first compressed by a Householder QR; R has the same
// singular values and right singular vectors as the input.
template <class Mat>
SvdResult svd_right(const Mat& m) {
  using Scalar = typename Mat::Scalar;
  using Plain = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  SvdResult out;
  Plain work;
  if (m.rows() > m.cols() + m.cols() / 2) {
    Eigen::HouseholderQR<Plain> qr(m);
    work = qr.matrixQR().topRows(m.cols()).template triangularView<Eigen::Upper>();
  } else {
    work = m;
  }
  Eigen::BDCSVD<Plain> svd(work, Eigen::ComputeFullV);
  out.sigma = svd.singularValues();
  out.v = svd.matrixV().template cast<Complex>();
  return out;
}

SvdResult svd_any(const DenseMatrix& m) {
  if (m.imag().isZero(0.0)) return svd_right(Eigen::MatrixXd(m.real()));
  return svd_right(m);
}

void require_nonempty(const DenseMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) throw InvalidArgument("empty matrix");
}

RankReport make_report(const Eigen::VectorXd& sigma, Index rows, Index cols, std::optional<double> tol) {
  RankReport r;
  r.singular_values.assign(sigma.data(), sigma.data() + sigma.size());
  const double smax = r.singular_values.empty() ? 0.0 : r.singular_values.front();
  r.tolerance = tol ? *tol : default_rank_tolerance(rows, cols, smax);
  r.rank = static_cast<std::size_t>(
      std::count_if(r.singular_values.begin(), r.singular_values.end(), [&](double s) { return s > r.tolerance; }));
  return r;
}

NullSpace null_space_impl(const DenseMatrix& m, std::optional<double> tol, double rel, double floor) {
  require_nonempty(m);
  SvdResult s = svd_any(m);
  if (!tol) {
    const double smax = s.sigma.size() ? s.sigma(0) : 0.0;
    if (rel > 0.0) tol = rel * std::max(smax, floor);
  }
  NullSpace ns;
  ns.rank = make_report(s.sigma, m.rows(), m.cols(), tol);
  for (Index j = static_cast<Index>(ns.rank.rank); j < m.cols(); ++j) ns.basis.push_back(s.v.col(j));
  return ns;
}

}  // namespace

double default_rank_tolerance(Index rows, Index cols, double sigma_max) {
  return static_cast<double>(std::max(rows, cols)) * std::numeric_limits<double>::epsilon() * sigma_max;
}

RankReport numerical_rank(const DenseMatrix& m, std::optional<double> tol) {
  require_nonempty(m);
  Eigen::VectorXd sigma;
  if (m.imag().isZero(0.0)) {
    sigma = Eigen::BDCSVD<Eigen::MatrixXd>(m.real()).singularValues();
  } else {
    sigma = Eigen::BDCSVD<DenseMatrix>(m).singularValues();
  }
  return make_report(sigma, m.rows(), m.cols(), tol);
}

NullSpace null_space_report(const DenseMatrix& m, std::optional<double> tol) {
  return null_space_impl(m, tol, 0.0, 0.0);
}

NullSpace null_space_relative(const DenseMatrix& m, double rel_tol, double floor) {
  return null_space_impl(m, std::nullopt, rel_tol, floor);
}

EchelonForm reduced_row_echelon(const DenseMatrix& m, const std::vector<Index>& column_order, double tol) {
  const Index rows = m.rows(), cols = m.cols();
  {
    std::vector<Index> check = column_order;
    std::sort(check.begin(), check.end());
    if (static_cast<Index>(check.size()) != cols) throw InvalidArgument("column order is not a permutation");
    for (Index j = 0; j < cols; ++j)
      if (check[static_cast<std::size_t>(j)] != j) throw InvalidArgument("column order is not a permutation");
  }
  EchelonForm out;
  DenseMatrix a = m;
  Index next = 0;  // first row not yet holding a pivot
  for (Index c : column_order) {
    if (next == rows) break;
    Index best = -1;
    double best_abs = tol;
    for (Index r = next; r < rows; ++r) {
      const double v = std::abs(a(r, c));
      if (v > best_abs) {
        best_abs = v;
        best = r;
      }
    }
    if (best < 0) continue;
    a.row(next).swap(a.row(best));
    a.row(next) /= a(next, c);
    a(next, c) = 1.0;
    for (Index r = 0; r < rows; ++r) {
      if (r == next || a(r, c) == Complex{}) continue;
      a.row(r) -= a(r, c) * a.row(next);
      a(r, c) = 0.0;
    }
    out.pivot_columns.push_back(c);
    ++next;
  }
  for (Index r = 0; r < rows; ++r)
    for (Index c = 0; c < cols; ++c)
      if (std::abs(a(r, c)) <= tol) a(r, c) = 0.0;
  out.matrix = std::move(a);
  return out;
}

BlockSelection max_rank_submatrix(const DenseMatrix& m, std::size_t r, std::optional<double> tol) {
  require_nonempty(m);
  if (r > static_cast<std::size_t>(std::min(m.rows(), m.cols())))
    throw NumericalError("requested block larger than the matrix");
  DenseMatrix a = m;
  const double scale = a.cwiseAbs().maxCoeff();
  const double pivot_tol = tol ? *tol : default_rank_tolerance(m.rows(), m.cols(), scale);
  std::vector<bool> row_used(static_cast<std::size_t>(m.rows()), false), col_used(static_cast<std::size_t>(m.cols()), false);
  BlockSelection sel;
  for (std::size_t step = 0; step < r; ++step) {
    Index pr = -1, pc = -1;
    double best = -1.0;
    for (Index i = 0; i < a.rows(); ++i) {
      if (row_used[static_cast<std::size_t>(i)]) continue;
      for (Index j = 0; j < a.cols(); ++j) {
        if (col_used[static_cast<std::size_t>(j)]) continue;
        const double v = std::abs(a(i, j));
        if (v > best) {
          best = v;
          pr = i;
          pc = j;
        }
      }
    }
    if (best <= pivot_tol) throw NumericalError("block size exceeds the numerical rank");
    row_used[static_cast<std::size_t>(pr)] = true;
    col_used[static_cast<std::size_t>(pc)] = true;
    sel.rows.push_back(pr);
    sel.cols.push_back(pc);
    for (Index i = 0; i < a.rows(); ++i) {
      if (row_used[static_cast<std::size_t>(i)]) continue;
      const Complex f = a(i, pc) / a(pr, pc);
      if (f != Complex{}) a.row(i) -= f * a.row(pr);
    }
  }
  std::sort(sel.rows.begin(), sel.rows.end());
  std::sort(sel.cols.begin(), sel.cols.end());
  return sel;
}

}  // namespace multdefl
