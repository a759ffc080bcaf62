#pragma once

// Parametric multiplication matrices, parametric normal forms, commutator
// equations and the deflated system whose simple root carries xi together
// with the dual basis coefficients.

#include <map>
#include <string>
#include <vector>

#include "multdefl/dual_space.hpp"

namespace multdefl {

enum class ExponentOrder {
  Grevlex,  // sort ascending, d_1 < ... < d_n
  AsGiven   // keep the caller's order; it must start at 0 and be degree-graded
};

struct ExponentSets {
  std::size_t n = 0;
  std::vector<ExponentVector> E;       // alpha_0 = 0, ...
  std::vector<ExponentVector> E_plus;  // union of E + e_i, grevlex ascending
  std::vector<ExponentVector> border;  // E_plus \ E, grevlex ascending
  std::map<ExponentVector, std::size_t> index;  // position in E

  std::size_t size() const noexcept { return E.size(); }
  bool contains(const ExponentVector& a) const { return index.count(a) > 0; }
};

ExponentSets exponent_sets(std::vector<ExponentVector> E, ExponentOrder order = ExponentOrder::Grevlex);

/// The variable mu_{alpha, beta}: the coefficient of (x - xi)^beta ... in
/// Lambda_alpha, alpha = E[row].
struct MuVariable {
  std::size_t row = 0;
  ExponentVector alpha;
  ExponentVector beta;
};

/// Matrices of multiplication by x_i - xi_i in the basis (x - xi)^{alpha}.
/// Stored as operators acting on coordinate columns, so entry (l, k) of M_i
/// is Lambda_l((x - xi)^{alpha_k + e_i}) and every M_i is strictly lower
/// triangular; the usual row layout is the transpose. Entries are
/// polynomials in n + m variables: z_1..z_n (unused here), then the
/// registry mu_1..mu_m.
template <class K>
struct ParamMulMatrices {
  std::size_t n = 0;
  std::size_t delta = 0;
  std::vector<MuVariable> registry;
  std::vector<std::vector<MPoly<K>>> m;  // m[i][l * delta + k]
  /// Eliminated parameters and their values in terms of the registry.
  std::vector<std::pair<MuVariable, MPoly<K>>> eliminated;

  std::size_t nvars() const noexcept { return n + registry.size(); }
  const MPoly<K>& at(std::size_t i, std::size_t l, std::size_t k) const { return m[i][l * delta + k]; }
  MPoly<K>& at(std::size_t i, std::size_t l, std::size_t k) { return m[i][l * delta + k]; }
};

template <class K>
ParamMulMatrices<K> build_param_matrices(const ExponentSets& s);

enum class ReductionRule {
  /// Entry affine in the chosen variable with a constant coefficient; the
  /// rest may involve other parameters.
  ConstantCoefficient,
  /// Additionally the rest must be free of parameters.
  ConstantRemainder
};

/// Eliminates parameters through commutator entries, to a fixpoint. Each
/// round takes the first commutator entry (i < j, then row-major) that has a
/// qualifying variable and eliminates the last-registered such variable.
template <class K>
ParamMulMatrices<K> reduce_parameters(const ExponentSets& s, ParamMulMatrices<K> p,
                                      ReductionRule rule = ReductionRule::ConstantCoefficient);

/// N_{z,mu}(p) = sum_gamma (1/gamma!) d^gamma p(z) M(mu)^gamma e_1, with
/// M^gamma = M_i M^{gamma - e_i} for the smallest i with gamma_i > 0.
template <class K>
class NormalFormEngine {
 public:
  explicit NormalFormEngine(const ParamMulMatrices<K>& p) : p_(p) {}
  /// p is a polynomial in the n original variables.
  std::vector<MPoly<K>> normal_form(const MPoly<K>& p);
  /// M(mu)^gamma e_1; empty vector when it is identically zero.
  const std::vector<MPoly<K>>& power_column(const ExponentVector& gamma);

 private:
  const ParamMulMatrices<K>& p_;
  std::map<ExponentVector, std::vector<MPoly<K>>> memo_;
};

template <class K>
std::vector<MPoly<K>> param_normal_form(const MPoly<K>& p, const ParamMulMatrices<K>& m) {
  NormalFormEngine<K> e(m);
  return e.normal_form(p);
}

struct Provenance {
  enum class Kind { NormalForm, Commutator } kind = Kind::NormalForm;
  std::size_t k = 0, row = 0;    // normal form: polynomial index and entry
  std::size_t i = 0, j = 0, col = 0;  // commutator: pair, row, col (row shared)

  std::string to_string() const;
};

template <class K>
struct LabeledPoly {
  MPoly<K> poly;
  Provenance origin;
};

/// Entries of M_i M_j - M_j M_i for i < j, zero and proportional entries dropped.
template <class K>
std::vector<LabeledPoly<K>> commutator_equations(const ParamMulMatrices<K>& p);

struct DeflationOptions {
  bool reduce = false;
  ReductionRule rule = ReductionRule::ConstantCoefficient;
};

template <class K>
struct DeflatedSystem {
  std::size_t n = 0;
  std::vector<std::string> names;  // z names then mu names
  std::vector<LabeledPoly<K>> polys;
  ParamMulMatrices<K> matrices;
  std::size_t nf_candidates = 0;
  std::size_t commutator_candidates = 0;

  std::size_t num_vars() const noexcept { return names.size(); }
  std::size_t num_polys() const noexcept { return polys.size(); }
  PolySystem<K> system() const;
};

template <class K>
DeflatedSystem<K> build_deflated_system(const PolySystem<K>& f, const ExponentSets& s, const DeflationOptions& opts = {},
                                        const std::vector<std::string>& var_names = {});

/// Values of the registry parameters read off a primal-dual pair whose E
/// matches the matrices: mu_{alpha_l, beta} = Lambda_l((x - xi)^beta).
template <class K>
std::vector<Complex> parameter_values(const ParamMulMatrices<K>& p, const PrimalDualPair& pd);

/// Full dual basis from numeric parameter values: Lambda_i((x - xi)^gamma) is
/// entry i of M(mu)^gamma e_1 for |gamma| <= o. Throws NumericalError when
/// the numeric matrices fail to commute within `commute_tol`.
template <class K>
PrimalDualPair dual_from_matrices(const ParamMulMatrices<K>& p, std::span<const Complex> mu, const ExponentSets& s,
                                  unsigned o, std::span<const Complex> anchor, double commute_tol = 1e-8);

/// Numeric matrices M_i(mu).
template <class K>
std::vector<DenseMatrix> evaluate_matrices(const ParamMulMatrices<K>& p, std::span<const Complex> mu);

}  // namespace multdefl
