#pragma once

// Square subsystems, damped Newton refinement and simple-root checks.

#include <cstdint>
#include <vector>

#include "multdefl/dual_element.hpp"
#include "multdefl/linalg.hpp"

namespace multdefl {

/// A system in the floating domain with its formal Jacobian, ready for
/// repeated evaluation.
class CompiledSystem {
 public:
  CompiledSystem() = default;
  explicit CompiledSystem(PolySystem<Complex> polys);
  template <class K>
  static CompiledSystem from(const PolySystem<K>& f) {
    PolySystem<Complex> c;
    c.reserve(f.size());
    for (const auto& p : f) c.push_back(to_complex_poly(p));
    return CompiledSystem(std::move(c));
  }

  std::size_t num_polys() const noexcept { return polys_.size(); }
  std::size_t num_vars() const noexcept { return n_; }
  const PolySystem<Complex>& polys() const noexcept { return polys_; }

  DenseVector evaluate(std::span<const Complex> x) const;
  DenseMatrix jacobian(std::span<const Complex> x) const;
  /// Jacobian with row i divided by the largest coefficient magnitude of
  /// polynomial i. Same rank, but rank tolerances stop depending on how the
  /// polynomials happen to be scaled.
  DenseMatrix scaled_jacobian(std::span<const Complex> x) const;
  /// Values with the same row scaling.
  DenseVector scaled_evaluate(std::span<const Complex> x) const;

 private:
  std::size_t n_ = 0;
  PolySystem<Complex> polys_;
  std::vector<std::vector<ComplexPoly>> jac_;
  std::vector<double> row_scale_;
};

enum class SubsystemMode {
  Combination,  // random complex linear combinations
  Selection,    // a random choice of rows, for debugging
  Identity      // the system itself; only valid when already square
};

/// nvars polynomials built from `f` with a mt19937_64 generator seeded by
/// `seed`; combination coefficients are uniform on [-1,1] + [-1,1]i.
template <class K>
PolySystem<Complex> random_square_subsystem(const PolySystem<K>& f, std::uint64_t seed,
                                            SubsystemMode mode = SubsystemMode::Combination);

extern template PolySystem<Complex> random_square_subsystem(const PolySystem<Rational>&, std::uint64_t, SubsystemMode);
extern template PolySystem<Complex> random_square_subsystem(const PolySystem<Complex>&, std::uint64_t, SubsystemMode);

struct NewtonOptions {
  unsigned max_iter = 50;
  double tol = 1e-12;
  unsigned max_halvings = 8;
  /// Relative pivot threshold below which the Jacobian counts as singular.
  double singular_tol = 1e-13;
};

struct RefinementTrace {
  std::vector<Point> iterates;   // start first
  std::vector<double> residuals;  // ||G(x_k)||_2 per iterate
  std::vector<double> steps;      // ||x_{k+1} - x_k||_2 per iteration
  bool converged = false;
  double sigma_min = 0.0;  // smallest singular value of the Jacobian at the last iterate
  std::string message;

  const Point& solution() const { return iterates.back(); }
  std::size_t iterations() const noexcept { return steps.size(); }
};

/// Damped Newton on a square system, in complex arithmetic.
RefinementTrace newton_refine(const CompiledSystem& g, Point start, const NewtonOptions& opts = {});

struct SimpleRootReport {
  double residual = 0.0;  // row-scaled, like the Jacobian
  double raw_residual = 0.0;
  double sigma_min = 0.0;
  double sigma_max = 0.0;
  double rank_tolerance = 0.0;
  bool simple = false;
};

/// Simple iff residual <= tol and sigma_min > rank_tol * max(1, sigma_max),
/// residual and singular values taken after dividing every polynomial by
/// its largest coefficient magnitude. Systems with fewer
/// polynomials than variables have sigma_min = 0.
SimpleRootReport verify_simple_root(const CompiledSystem& g, std::span<const Complex> x, double tol = 1e-8,
                                    double rank_tol = 1e-8);

template <class K>
SimpleRootReport verify_simple_root(const PolySystem<K>& f, std::span<const Complex> x, double tol = 1e-8,
                                    double rank_tol = 1e-8) {
  return verify_simple_root(CompiledSystem::from(f), x, tol, rank_tol);
}

}  // namespace multdefl
