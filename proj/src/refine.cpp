#include "multdefl/refine.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace multdefl {

CompiledSystem::CompiledSystem(PolySystem<Complex> polys) : polys_(std::move(polys)) {
  if (polys_.empty()) throw InvalidArgument("empty system");
  n_ = polys_.front().nvars();
  jac_ = multdefl::jacobian(polys_);
  for (const auto& p : polys_) {
    double m = 0.0;
    for (const auto& [e, c] : p.terms()) m = std::max(m, std::abs(c));
    row_scale_.push_back(m > 0.0 ? 1.0 / m : 1.0);
  }
}

DenseMatrix CompiledSystem::scaled_jacobian(std::span<const Complex> x) const {
  DenseMatrix j = jacobian(x);
  for (Index i = 0; i < j.rows(); ++i) j.row(i) *= row_scale_[static_cast<std::size_t>(i)];
  return j;
}

DenseVector CompiledSystem::scaled_evaluate(std::span<const Complex> x) const {
  DenseVector v = evaluate(x);
  for (Index i = 0; i < v.size(); ++i) v(i) *= row_scale_[static_cast<std::size_t>(i)];
  return v;
}

DenseVector CompiledSystem::evaluate(std::span<const Complex> x) const {
  if (x.size() != n_) throw InvalidArgument("point has wrong length");
  DenseVector v(static_cast<Index>(polys_.size()));
  for (std::size_t i = 0; i < polys_.size(); ++i) v(static_cast<Index>(i)) = polys_[i].evaluate(x);
  return v;
}

DenseMatrix CompiledSystem::jacobian(std::span<const Complex> x) const {
  if (x.size() != n_) throw InvalidArgument("point has wrong length");
  DenseMatrix j(static_cast<Index>(polys_.size()), static_cast<Index>(n_));
  for (std::size_t i = 0; i < polys_.size(); ++i)
    for (std::size_t v = 0; v < n_; ++v) j(static_cast<Index>(i), static_cast<Index>(v)) = jac_[i][v].evaluate(x);
  return j;
}

template <class K>
PolySystem<Complex> random_square_subsystem(const PolySystem<K>& f, std::uint64_t seed, SubsystemMode mode) {
  if (f.empty()) throw InvalidArgument("empty system");
  const std::size_t n = f.front().nvars();
  const std::size_t N = f.size();
  if (N < n)
    throw InvalidArgument("system has " + std::to_string(N) + " polynomials but " + std::to_string(n) + " variables");
  PolySystem<Complex> fc;
  fc.reserve(N);
  for (const auto& p : f) fc.push_back(to_complex_poly(p));
  if (mode == SubsystemMode::Identity) {
    if (N != n) throw InvalidArgument("identity subsystem requires a square system");
    return fc;
  }
  std::mt19937_64 gen(seed);
  if (mode == SubsystemMode::Selection) {
    std::vector<std::size_t> idx(N);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::shuffle(idx.begin(), idx.end(), gen);
    idx.resize(n);
    std::sort(idx.begin(), idx.end());
    PolySystem<Complex> out;
    for (auto i : idx) out.push_back(fc[i]);
    return out;
  }
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  PolySystem<Complex> out;
  out.reserve(n);
  for (std::size_t r = 0; r < n; ++r) {
    ComplexPoly g(n);
    for (std::size_t k = 0; k < N; ++k) {
      const double re = u(gen);
      const double im = u(gen);
      g += fc[k] * Complex(re, im);
    }
    out.push_back(std::move(g));
  }
  return out;
}

template PolySystem<Complex> random_square_subsystem(const PolySystem<Rational>&, std::uint64_t, SubsystemMode);
template PolySystem<Complex> random_square_subsystem(const PolySystem<Complex>&, std::uint64_t, SubsystemMode);

namespace {

double point_norm(std::span<const Complex> x) {
  double s = 0.0;
  for (auto c : x) s += std::norm(c);
  return std::sqrt(s);
}

double smallest_singular_value(const DenseMatrix& j) {
  const RankReport r = numerical_rank(j, 0.0);
  if (j.rows() < j.cols() || r.singular_values.empty()) return 0.0;
  return r.singular_values.back();
}

}  // namespace

RefinementTrace newton_refine(const CompiledSystem& g, Point start, const NewtonOptions& opts) {
  if (g.num_polys() != g.num_vars()) throw InvalidArgument("Newton refinement needs a square system");
  if (start.size() != g.num_vars()) throw InvalidArgument("start point has wrong length");
  RefinementTrace tr;
  Point x = std::move(start);
  DenseVector fx = g.evaluate(x);
  tr.iterates.push_back(x);
  tr.residuals.push_back(fx.norm());
  for (unsigned it = 0; it < opts.max_iter; ++it) {
    const DenseMatrix j = g.jacobian(x);
    Eigen::FullPivLU<DenseMatrix> lu(j);
    lu.setThreshold(opts.singular_tol);
    if (!lu.isInvertible()) {
      tr.message = "singular Jacobian at iterate " + std::to_string(it);
      break;
    }
    const DenseVector dx = lu.solve(-fx);
    // Step halving: keep the trial with the smallest residual.
    Point best_x = x;
    DenseVector best_f = fx;
    double best_res = std::numeric_limits<double>::infinity();
    double best_step = 0.0;
    double lambda = 1.0;
    for (unsigned h = 0; h <= opts.max_halvings; ++h, lambda *= 0.5) {
      Point trial = x;
      for (std::size_t v = 0; v < trial.size(); ++v) trial[v] += lambda * dx(static_cast<Index>(v));
      const DenseVector ft = g.evaluate(trial);
      const double res = ft.norm();
      if (res < best_res) {
        best_res = res;
        best_x = std::move(trial);
        best_f = ft;
        best_step = lambda * dx.norm();
      }
      if (res <= tr.residuals.back()) break;
    }
    x = std::move(best_x);
    fx = std::move(best_f);
    tr.iterates.push_back(x);
    tr.residuals.push_back(best_res);
    tr.steps.push_back(best_step);
    if (best_step <= opts.tol * std::max(1.0, point_norm(x)) && best_res <= opts.tol) {
      tr.converged = true;
      break;
    }
  }
  if (!tr.converged && tr.message.empty()) tr.message = "iteration limit reached";
  tr.sigma_min = smallest_singular_value(g.jacobian(x));
  return tr;
}

SimpleRootReport verify_simple_root(const CompiledSystem& g, std::span<const Complex> x, double tol, double rank_tol) {
  SimpleRootReport rep;
  rep.raw_residual = g.evaluate(x).norm();
  rep.residual = g.scaled_evaluate(x).norm();
  const RankReport r = numerical_rank(g.scaled_jacobian(x), 0.0);
  rep.sigma_max = r.singular_values.empty() ? 0.0 : r.singular_values.front();
  rep.sigma_min = g.num_polys() < g.num_vars() || r.singular_values.empty() ? 0.0 : r.singular_values.back();
  rep.rank_tolerance = rank_tol * std::max(1.0, rep.sigma_max);
  rep.simple = rep.residual <= tol && rep.sigma_min > rep.rank_tolerance;
  return rep;
}

}  // namespace multdefl
