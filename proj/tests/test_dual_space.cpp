#include <doctest.h>

#include "oracle.hpp"

#include "multdefl/dual_space.hpp"
#include "multdefl/io.hpp"
#include "multdefl/suite.hpp"

using namespace multdefl;

namespace {

SystemFile load(const std::string& name) { return parse_system_file(std::string(MULTDEFL_DATA_DIR) + "/" + name); }

DualSpaceResult dual_of(const SystemFile& sf) {
  return std::visit([&](const auto& f) { return compute_dual_space(f, sf.root); }, sf.system);
}

// Distance of v from the row space of m, relative to |v|.
double off_span(const DenseMatrix& m, const DenseVector& v) {
  const DenseVector x = m.transpose().colPivHouseholderQr().solve(v);
  return (m.transpose() * x - v).norm() / std::max(1.0, v.norm());
}

}  // namespace

TEST_CASE("illustrative example: multiplicity 2, basis {1, d2}") {
  const auto sf = load("illustrative.sys");
  const auto d = dual_of(sf);
  CHECK(d.multiplicity == 2);
  CHECK(d.nil_index == 1);
  const auto pd = orthogonal_primal_dual(d);
  REQUIRE(pd.size() == 2);
  CHECK(pd.exponents[0] == ExponentVector{0, 0});
  CHECK(pd.exponents[1] == ExponentVector{0, 1});
  CHECK(std::abs(pd.basis[1].coefficient(ExponentVector{0, 1}) - 1.0) < 1e-10);
  CHECK(std::abs(pd.basis[1].coefficient(ExponentVector{1, 0})) < 1e-10);
}

TEST_CASE("Macaulay kernels agree and column scalings differ by gamma!") {
  const auto sf = load("dz2.sys");
  const auto& f = std::get<0>(sf.system);
  const auto a = macaulay_matrix(f, sf.root, 5, ColumnScaling::Raw, Kernel::Serial);
  const auto b = macaulay_matrix(f, sf.root, 5, ColumnScaling::Raw, Kernel::Parallel);
  CHECK(a.matrix == b.matrix);
  const auto c = macaulay_matrix(f, sf.root, 5, ColumnScaling::Normalized, Kernel::Parallel);
  for (std::size_t k = 0; k < c.columns.size(); ++k) {
    const Index j = static_cast<Index>(k);
    CHECK((a.matrix.col(j) - c.matrix.col(j) * c.columns[k].factorial()).norm() < 1e-9);
  }
  // row (i, beta), column gamma: d^gamma((x - xi)^beta f_i)(xi), checked on the exact product
  const std::vector<Rational> xq{0, 0, -1};
  for (std::size_t r = 0; r < a.rows.size(); r += 7) {
    const auto& row = a.rows[r];
    const RationalPoly g = shifted_monomial(row.shift, xq) * f[row.poly];
    for (std::size_t k = 0; k < a.columns.size(); k += 5)
      CHECK(std::abs(a.matrix(static_cast<Index>(r), static_cast<Index>(k)) -
                     g.derivative(a.columns[k]).evaluate(sf.root)) < 1e-9);
  }
}

TEST_CASE("dual basis: orthogonality, annihilation and closedness") {
  for (std::string name : {"caprasse.sys", "dz2.sys", "dz3.sys"}) {
    CAPTURE(name);
    const auto sf = load(name);
    const auto d = dual_of(sf);
    const auto pd = orthogonal_primal_dual(d);
    REQUIRE(pd.size() == d.multiplicity);
    for (std::size_t i = 0; i < pd.size(); ++i)
      for (std::size_t j = 0; j < pd.size(); ++j)
        CHECK(std::abs(pd.nu(i, pd.exponents[j]) - Complex(i == j ? 1.0 : 0.0)) < 1e-8);
    std::visit(
        [&](const auto& f) {
          for (const auto& L : pd.basis)
            for (const auto& p : f) CHECK(std::abs(apply_dual(L, p)) < 1e-8);
        },
        sf.system);
    for (const auto& L : d.basis)
      for (std::size_t v = 0; v < sf.names.size(); ++v) {
        const DualElement D = L.derive_symbol(v);
        DenseVector w(static_cast<Index>(d.columns.size()));
        for (std::size_t k = 0; k < d.columns.size(); ++k) w(static_cast<Index>(k)) = D.pairing(d.columns[k]);
        CHECK(off_span(d.pairings, w) < 1e-8);
      }
  }
}

TEST_CASE("dimensions agree with the exact oracle") {
  for (std::string name : {"illustrative.sys", "dz2.sys"}) {
    CAPTURE(name);
    const auto sf = load(name);
    const auto& f = std::get<0>(sf.system);
    std::vector<mpq_class> xq;
    for (auto c : sf.root) xq.push_back(mpq_class(c.real()));
    const auto d = dual_of(sf);
    for (unsigned t = 0; t <= d.nil_index + 1; ++t) CHECK(dual_dimension(f, sf.root, t) == oracle::null_dimension(f, xq, t));
  }
}

TEST_CASE("user-supplied primal basis") {
  const auto sf = load("caprasse.sys");
  const auto d = dual_of(sf);
  const auto pd = primal_dual_for_basis(d, *sf.basis);
  CHECK(pd.exponents == *sf.basis);
  for (std::size_t i = 0; i < pd.size(); ++i)
    for (std::size_t j = 0; j < pd.size(); ++j)
      CHECK(std::abs(pd.nu(i, pd.exponents[j]) - Complex(i == j ? 1.0 : 0.0)) < 1e-8);
  CHECK(connected_to_one(*sf.basis));
  CHECK_FALSE(connected_to_one({ExponentVector{0, 0}, ExponentVector{1, 1}}));
}

TEST_CASE("a point that is not a root is rejected") {
  const auto f = gen_family(2);
  const Point p{0.5, 0.0};
  CHECK_THROWS_AS(compute_dual_space(f, p), InvalidArgument);
}
