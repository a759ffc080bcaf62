#pragma once

// Deflation by first-order differentials with polynomial coefficients.

#include <cstdint>
#include <vector>

#include "multdefl/linalg.hpp"
#include "multdefl/dual_element.hpp"

namespace multdefl {

/// Lambda^x = sum_m lambda_m(x) d_m with exact polynomial coefficients.
template <class K>
struct KernelForm {
  std::vector<MPoly<K>> coefficients;  // lambda_1..lambda_n
  std::size_t column = 0;              // the free column of J outside the block
};

template <class K>
struct KernelForms {
  std::vector<KernelForm<K>> forms;  // one per free column, ascending
  BlockSelection block;              // rows/cols of A
  std::size_t rank = 0;
};

/// Forms det(A) [-A^{-1} B; Id] = [-adj(A) B; det(A) Id] for the block A
/// picked by complete pivoting on J(xi). `rank_tol` is relative to the
/// largest singular value of J(xi). Throws InvalidArgument when the root is
/// already simple.
template <class K>
KernelForms<K> kernel_forms(const PolySystem<K>& f, std::span<const Complex> xi, double rank_tol = 1e-8);

/// Lambda(p) = sum_m lambda_m * dp/dx_m.
template <class K>
MPoly<K> apply_form(const KernelForm<K>& form, const MPoly<K>& p);

/// Exact determinant and adjugate of a square polynomial matrix by
/// cofactor expansion.
template <class K>
MPoly<K> poly_determinant(const std::vector<std::vector<MPoly<K>>>& a);
template <class K>
std::vector<std::vector<MPoly<K>>> poly_adjugate(const std::vector<std::vector<MPoly<K>>>& a);

struct DeflationStepInfo {
  BlockSelection block;
  std::size_t rank = 0;
  std::size_t corank = 0;
  std::vector<std::size_t> i_set;  // 0-based indices into the kernel forms
  std::size_t candidates = 0;      // |i| * N
  std::size_t zero = 0;            // identically zero candidates
  std::size_t duplicates = 0;      // dropped as proportional to an earlier polynomial
  std::size_t appended = 0;
};

template <class K>
struct DeflationStep {
  PolySystem<K> system;
  DeflationStepInfo info;
};

/// The i-deflated system {f, Lambda_{i_1}(f), ..., Lambda_{i_k}(f)}. Appended
/// entries are ordered by k, then j; zero and proportional entries are
/// dropped. Indices in `i_set` are 0-based and refer to the kernel forms.
template <class K>
DeflationStep<K> deflate_once(const PolySystem<K>& f, std::span<const Complex> xi, const std::vector<std::size_t>& i_set,
                              double rank_tol = 1e-8);

struct FirstOrderOptions {
  double rank_tol = 1e-8;
  /// Kernel forms used at every step; {0} uses a single form, the first kernel column.
  /// Indices beyond the corank of a step are ignored at that step.
  std::vector<std::size_t> i_set{0};
  unsigned max_iterations = 32;
  /// Newton refresh of the point between steps.
  unsigned newton_steps = 5;
  double refresh_residual = 1e-10;
  std::uint64_t seed = 42;
};

template <class K>
struct DeflationTrace {
  std::vector<PolySystem<K>> systems;  // f^(0), f^(1), ...
  std::vector<DeflationStepInfo> steps;
  std::vector<std::size_t> ranks;      // rank J_{f^(k)}(xi) for every system
  Point point;                         // final approximation of xi
  std::size_t iterations() const noexcept { return steps.size(); }
  const PolySystem<K>& final_system() const { return systems.back(); }
};

template <class K>
DeflationTrace<K> deflate_fully(const PolySystem<K>& f, std::span<const Complex> xi, const FirstOrderOptions& opts = {});

/// Numerical rank of J_f(xi) with tolerance rank_tol * sigma_max.
template <class K>
std::size_t jacobian_rank(const PolySystem<K>& f, std::span<const Complex> xi, double rank_tol = 1e-8);

}  // namespace multdefl
