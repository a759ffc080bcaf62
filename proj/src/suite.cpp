#include "multdefl/suite.hpp"

#include <chrono>
#include <cstdio>

namespace multdefl {

PolySystem<Rational> gen_family(std::size_t n) {
  if (n < 2) throw InvalidArgument("family needs n >= 2");
  PolySystem<Rational> f;
  auto x = [n](std::size_t i) { return RationalPoly::variable(n, i); };
  for (std::size_t i = 0; i + 1 < n; ++i) {
    RationalPoly p = x(i).pow(3) + x(i).pow(2);
    p -= i == 0 ? x(1).pow(2) : x(i + 1);
    f.push_back(std::move(p));
  }
  f.push_back(x(n - 1).pow(2));
  return f;
}

std::vector<ExponentVector> family_basis(std::size_t n) {
  if (n < 2) throw InvalidArgument("family needs n >= 2");
  std::vector<ExponentVector> e;
  const unsigned top = 1u << (n - 1);
  for (unsigned a = 0; a < top; ++a)
    for (unsigned b = 0; b < 2; ++b) {
      ExponentVector v(n);
      v[0] = static_cast<ExponentVector::value_type>(a);
      v[1] = static_cast<ExponentVector::value_type>(b);
      e.push_back(v);
    }
  return e;
}

const std::vector<SuiteEntry>& iteration_suite() {
  static const std::vector<SuiteEntry> s{{"dz1", "dz1.sys"}, {"dz2", "dz2.sys"}, {"dz3", "dz3.sys"}, {"dz4", "dz4.sys"}};
  return s;
}

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

unsigned max_degree(const std::vector<ExponentVector>& e) {
  unsigned d = 0;
  for (const auto& a : e) d = std::max(d, a.degree());
  return d;
}

}  // namespace

BenchRow bench_family(std::size_t n, bool reduce, bool verify_dual) {
  BenchRow row;
  row.id = "family-" + std::to_string(n);
  row.method = "mult";
  const auto f = gen_family(n);
  const auto e = family_basis(n);
  if (verify_dual) {
    const Point origin(n, Complex{});
    const auto d = compute_dual_space(f, origin);
    row.delta = d.multiplicity;
    row.nil_index = d.nil_index;
  } else {
    row.delta = e.size();
    row.nil_index = max_degree(e);
  }
  const auto t0 = Clock::now();
  DeflationOptions opts;
  opts.reduce = reduce;
  const auto sys = build_deflated_system(f, exponent_sets(e, ExponentOrder::AsGiven), opts);
  row.seconds = since(t0);
  row.vars = sys.num_vars();
  row.polys = sys.num_polys();
  row.iterations = 1;
  return row;
}

BenchRow bench_first_order(const std::string& id, const std::string& path, const FirstOrderOptions& opts) {
  const SystemFile sf = parse_system_file(path);
  if (sf.root.empty()) throw InvalidArgument(path + ": no root given");
  BenchRow row;
  row.id = id;
  row.method = "first-order";
  std::visit(
      [&](const auto& f) {
        const auto d = compute_dual_space(f, sf.root);
        row.delta = d.multiplicity;
        row.nil_index = d.nil_index;
        const auto t0 = Clock::now();
        const auto tr = deflate_fully(f, sf.root, opts);
        row.seconds = since(t0);
        row.vars = f.front().nvars();
        row.polys = tr.final_system().size();
        row.iterations = tr.iterations();
      },
      sf.system);
  return row;
}

BenchRow bench_mult(const std::string& id, const std::string& path, const DeflationOptions& opts) {
  const SystemFile sf = parse_system_file(path);
  if (sf.root.empty()) throw InvalidArgument(path + ": no root given");
  BenchRow row;
  row.id = id;
  row.method = "mult";
  std::visit(
      [&](const auto& f) {
        const auto d = compute_dual_space(f, sf.root);
        row.delta = d.multiplicity;
        row.nil_index = d.nil_index;
        std::vector<ExponentVector> e = sf.basis ? *sf.basis : orthogonal_primal_dual(d).exponents;
        const auto t0 = Clock::now();
        const auto sys = build_deflated_system(
            f, exponent_sets(e, sf.basis ? ExponentOrder::AsGiven : ExponentOrder::Grevlex), opts, sf.names);
        row.seconds = since(t0);
        row.vars = sys.num_vars();
        row.polys = sys.num_polys();
        row.iterations = 1;
      },
      sf.system);
  return row;
}

std::string format_bench_table(const std::vector<BenchRow>& rows) {
  std::string out = "system        method       mult  o    vars  poly  it   time(s)\n";
  char buf[160];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%-13s %-12s %-5zu %-4u %-5zu %-5zu %-4zu %.3f\n", r.id.c_str(), r.method.c_str(),
                  r.delta, r.nil_index, r.vars, r.polys, r.iterations, r.seconds);
    out += buf;
  }
  return out;
}

}  // namespace multdefl
