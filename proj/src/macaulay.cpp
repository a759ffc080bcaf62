#include "multdefl/macaulay.hpp"

#include <unordered_map>

#ifdef MULTDEFL_HAVE_OPENMP
#include <omp.h>
#endif

namespace multdefl {

namespace {

struct ExponentHash {
  std::size_t operator()(const ExponentVector& e) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto v : e) h = (h ^ v) * 1099511628211ull;
    return h;
  }
};

using ColumnIndex = std::unordered_map<ExponentVector, Index, ExponentHash>;

ColumnIndex index_columns(const std::vector<ExponentVector>& cols) {
  ColumnIndex idx;
  idx.reserve(cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) idx.emplace(cols[j], static_cast<Index>(j));
  return idx;
}

// One row: (x - xi)^beta f_i = sum_alpha t_alpha (x - xi)^(alpha + beta), and
// d^gamma of (x - xi)^gamma at xi is gamma!.
void fill_row(MacaulayMatrix& m, Index r, const TaylorMap& taylor, const ColumnIndex& cols, unsigned t,
              ColumnScaling scaling) {
  const ExponentVector& beta = m.rows[static_cast<std::size_t>(r)].shift;
  const unsigned bdeg = beta.degree();
  for (const auto& [alpha, c] : taylor) {
    if (alpha.degree() + bdeg > t) continue;
    const ExponentVector gamma = alpha + beta;
    const Index j = cols.at(gamma);
    m.matrix(r, j) = scaling == ColumnScaling::Raw ? c * gamma.factorial() : c;
  }
}

}  // namespace

MacaulayMatrix macaulay_layout(std::size_t n, std::size_t num_polys, unsigned t) {
  MacaulayMatrix m;
  m.columns = monomials_up_to(n, t);
  const unsigned row_deg = t == 0 ? 0 : t - 1;
  const auto shifts = monomials_up_to(n, row_deg);
  m.rows.reserve(num_polys * shifts.size());
  for (std::size_t i = 0; i < num_polys; ++i)
    for (const auto& b : shifts) m.rows.push_back({i, b});
  m.matrix = DenseMatrix::Zero(static_cast<Index>(m.rows.size()), static_cast<Index>(m.columns.size()));
  return m;
}

void fill_macaulay_serial(MacaulayMatrix& m, std::span<const TaylorMap> taylor, ColumnScaling scaling) {
  const ColumnIndex cols = index_columns(m.columns);
  const unsigned t = m.columns.back().degree();
  for (Index r = 0; r < static_cast<Index>(m.rows.size()); ++r)
    fill_row(m, r, taylor[m.rows[static_cast<std::size_t>(r)].poly], cols, t, scaling);
}

void fill_macaulay_parallel(MacaulayMatrix& m, std::span<const TaylorMap> taylor, ColumnScaling scaling) {
  const ColumnIndex cols = index_columns(m.columns);
  const unsigned t = m.columns.back().degree();
  const Index nrows = static_cast<Index>(m.rows.size());
  // Rows are independent and each writes only its own entries.
#pragma omp parallel for schedule(static)
  for (Index r = 0; r < nrows; ++r)
    fill_row(m, r, taylor[m.rows[static_cast<std::size_t>(r)].poly], cols, t, scaling);
}

template <class K>
MacaulayMatrix macaulay_matrix(const PolySystem<K>& f, std::span<const Complex> xi, unsigned t, ColumnScaling scaling,
                               Kernel kernel) {
  if (f.empty()) throw InvalidArgument("empty system");
  const std::size_t n = f.front().nvars();
  if (xi.size() != n) throw InvalidArgument("point has wrong length");
  std::vector<TaylorMap> taylor;
  taylor.reserve(f.size());
  for (const auto& p : f) {
    if (p.nvars() != n) throw InvalidArgument("system polynomials have different variable counts");
    taylor.push_back(taylor_coefficients(p, xi));
  }
  MacaulayMatrix m = macaulay_layout(n, f.size(), t);
  if (kernel == Kernel::Serial) {
    fill_macaulay_serial(m, taylor, scaling);
  } else {
    fill_macaulay_parallel(m, taylor, scaling);
  }
  return m;
}

template MacaulayMatrix macaulay_matrix(const PolySystem<Rational>&, std::span<const Complex>, unsigned, ColumnScaling,
                                        Kernel);
template MacaulayMatrix macaulay_matrix(const PolySystem<Complex>&, std::span<const Complex>, unsigned, ColumnScaling,
                                        Kernel);

}  // namespace multdefl
