#include <doctest.h>

#include <random>

#include "multdefl/io.hpp"
#include "multdefl/mult_structure.hpp"
#include "multdefl/refine.hpp"
#include "multdefl/suite.hpp"

using namespace multdefl;

namespace {

SystemFile load(const std::string& name) { return parse_system_file(std::string(MULTDEFL_DATA_DIR) + "/" + name); }

std::vector<ExponentVector> E2() { return {ExponentVector{0, 0}, ExponentVector{0, 1}}; }

struct Fixture {
  PolySystem<Rational> f;
  ExponentSets s;
  DeflatedSystem<Rational> sys;
  Point point;  // (xi, nu)
};

Fixture caprasse(bool reduce = false) {
  const auto sf = load("caprasse.sys");
  Fixture fx;
  fx.f = std::get<0>(sf.system);
  fx.s = exponent_sets(*sf.basis, ExponentOrder::AsGiven);
  DeflationOptions o;
  o.reduce = reduce;
  fx.sys = build_deflated_system(fx.f, fx.s, o);
  const auto pd = primal_dual_for_basis(compute_dual_space(fx.f, sf.root), fx.s.E);
  const auto mu = parameter_values(fx.sys.matrices, pd);
  fx.point = sf.root;
  fx.point.insert(fx.point.end(), mu.begin(), mu.end());
  return fx;
}

}  // namespace

TEST_CASE("exponent set validation") {
  const auto s = exponent_sets(E2());
  CHECK(s.border == std::vector<ExponentVector>{ExponentVector{1, 0}, ExponentVector{1, 1}, ExponentVector{0, 2}});
  const std::vector<ExponentVector> no_zero{ExponentVector{0, 1}};
  const std::vector<ExponentVector> gap{ExponentVector{0, 0}, ExponentVector{0, 2}};
  const std::vector<ExponentVector> ungraded{ExponentVector{0, 0}, ExponentVector{1, 1}, ExponentVector{1, 0}};
  CHECK_THROWS_AS(exponent_sets(no_zero), InvalidArgument);
  CHECK_THROWS_AS(exponent_sets(gap), InvalidArgument);
  CHECK_THROWS_AS(exponent_sets(ungraded, ExponentOrder::AsGiven), InvalidArgument);
}

TEST_CASE("illustrative example with E = {0, e2}") {
  const PolySystem<Rational> f{parse_rational_poly("x1 + x2^2", default_names(2)),
                               parse_rational_poly("x1^2 + x2^2", default_names(2))};
  const auto sys = build_deflated_system(f, exponent_sets(E2()));
  CHECK(sys.names == std::vector<std::string>{"z1", "z2", "mu1"});
  REQUIRE(sys.num_polys() == 4);
  const char* want[] = {"z1 + z2^2", "mu1 + 2*z2", "z1^2 + z2^2", "2*mu1*z1 + 2*z2"};
  for (std::size_t k = 0; k < 4; ++k) CHECK(sys.polys[k].poly == parse_rational_poly(want[k], sys.names));
  CHECK(commutator_equations(sys.matrices).empty());
  const Point zero(3, Complex{});
  CHECK(verify_simple_root(sys.system(), zero).simple);
  // p = x_i: z_i e_1 plus the first column of M_i
  const auto nf = param_normal_form(RationalPoly::variable(2, 1), sys.matrices);
  CHECK(nf[0] == RationalPoly::variable(3, 1));
  CHECK(nf[1] == sys.matrices.at(1, 1, 0));
}

TEST_CASE("Caprasse: registry, counts and the root (xi, nu)") {
  const auto fx = caprasse();
  CHECK(fx.s.border.size() == 12);
  CHECK(fx.sys.matrices.registry.size() == 15);
  CHECK(fx.sys.num_vars() == 19);
  CHECK(fx.sys.num_polys() == 30);
  const auto rep = verify_simple_root(fx.sys.system(), fx.point);
  CHECK(rep.residual < 1e-8);
  CHECK(rep.sigma_min > 1e-6);
}

TEST_CASE("matrix identities at the root") {
  const auto fx = caprasse();
  const auto& p = fx.sys.matrices;
  const std::size_t n = p.n;
  const std::vector<Complex> mu(fx.point.begin() + static_cast<long>(n), fx.point.end());
  const auto m = evaluate_matrices(p, mu);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) CHECK((m[i] * m[j] - m[j] * m[i]).norm() < 1e-8);
    // strictly lower triangular, hence nilpotent of index <= delta
    DenseMatrix pw = DenseMatrix::Identity(4, 4);
    for (int k = 0; k < 4; ++k) pw = pw * m[i];
    CHECK(pw.norm() == 0.0);
  }
  // M^{alpha_k} e_1 = e_k exactly
  NormalFormEngine<Rational> eng(p);
  for (std::size_t k = 0; k < fx.s.size(); ++k) {
    const auto& col = eng.power_column(fx.s.E[k]);
    REQUIRE(col.size() == fx.s.size());
    for (std::size_t l = 0; l < col.size(); ++l)
      CHECK(col[l] == RationalPoly::constant(p.nvars(), Rational(l == k ? 1 : 0)));
  }
}

TEST_CASE("normal form specialization and product rule") {
  const auto fx = caprasse();
  const auto& p = fx.sys.matrices;
  const std::size_t n = p.n;
  const std::vector<Complex> mu(fx.point.begin() + static_cast<long>(n), fx.point.end());
  const auto m = evaluate_matrices(p, mu);
  NormalFormEngine<Rational> eng(p);
  auto eval = [&](const std::vector<RationalPoly>& v) {
    DenseVector out(static_cast<Index>(v.size()));
    for (std::size_t l = 0; l < v.size(); ++l) out(static_cast<Index>(l)) = v[l].evaluate(fx.point);
    return out;
  };
  for (const auto& fk : fx.f) CHECK(eval(eng.normal_form(fk)).norm() < 1e-8);

  std::mt19937_64 gen(3);
  std::uniform_int_distribution<int> c(-3, 3);
  for (int trial = 0; trial < 4; ++trial) {
    RationalPoly q(n);
    for (const auto& e : monomials_up_to(n, 3)) q.add_term(e, Rational(c(gen)));
    const DenseVector nq = eval(eng.normal_form(q));
    for (std::size_t i = 0; i < n; ++i) {
      // N((x_i - xi_i) q) = N(x_i q) - xi_i N(q)
      const DenseVector lhs = eval(eng.normal_form(RationalPoly::variable(n, i) * q)) - fx.point[i] * nq;
      CHECK((lhs - m[i] * nq).norm() < 1e-8 * std::max(1.0, nq.norm()));
    }
  }
}

TEST_CASE("dual basis recovered from the matrices") {
  const auto sf = load("caprasse.sys");
  const auto fx = caprasse();
  const std::vector<Complex> mu(fx.point.begin() + 4, fx.point.end());
  const auto pd = dual_from_matrices(fx.sys.matrices, mu, fx.s, 2, sf.root);
  for (const auto& L : pd.basis)
    for (const auto& fk : fx.f) CHECK(std::abs(apply_dual(L, fk)) < 1e-8);
}

TEST_CASE("parameter reduction keeps the root") {
  const auto f = gen_family(3);
  const auto s = exponent_sets(family_basis(3), ExponentOrder::AsGiven);
  const auto full = build_param_matrices<Rational>(s);
  const auto red = reduce_parameters(s, full);
  CHECK(red.registry.size() + red.eliminated.size() == full.registry.size());
  CHECK(red.registry.size() <= 2 * (s.size() - 1));
  DeflationOptions o;
  o.reduce = true;
  const auto sys = build_deflated_system(f, s, o);
  const Point origin(3, Complex{});
  const auto pd = primal_dual_for_basis(compute_dual_space(f, origin), s.E);
  const auto mu = parameter_values(sys.matrices, pd);
  Point pt = origin;
  pt.insert(pt.end(), mu.begin(), mu.end());
  for (const auto& lp : sys.polys) CHECK(std::abs(lp.poly.evaluate(pt)) < 1e-8);
  CHECK(verify_simple_root(sys.system(), pt).simple);
}
