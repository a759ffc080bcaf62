// Serial vs OpenMP Macaulay fill on the benchmark systems. Checks that both
// kernels give the same matrix and reports the best of several runs.
//
//   bench_kernels [repeats]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#ifdef MULTDEFL_HAVE_OPENMP
#include <omp.h>
#endif

#include "multdefl/macaulay.hpp"
#include "multdefl/suite.hpp"

using namespace multdefl;

namespace {

struct Case {
  std::string name;
  std::vector<TaylorMap> taylor;
  std::size_t n;
  unsigned t;
};

template <class K>
std::vector<TaylorMap> taylor_of(const PolySystem<K>& f, std::span<const Complex> xi) {
  std::vector<TaylorMap> out;
  for (const auto& p : f) out.push_back(taylor_coefficients(p, xi));
  return out;
}

Case load(const std::string& name, const std::string& path, unsigned t) {
  const SystemFile sf = parse_system_file(path);
  Case c;
  c.name = name;
  c.n = sf.names.size();
  c.t = t;
  std::visit([&](const auto& f) { c.taylor = taylor_of(f, sf.root); }, sf.system);
  return c;
}

template <class F>
double best_of(int repeats, F&& fn) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  const int repeats = argc > 1 ? std::atoi(argv[1]) : 5;
  const std::string dir = MULTDEFL_DATA_DIR;
  std::vector<Case> cases;
  cases.push_back(load("dz1", dir + "/dz1.sys", 11));
  cases.push_back(load("dz2", dir + "/dz2.sys", 8));
  cases.push_back(load("dz4", dir + "/dz4.sys", 8));
  cases.push_back(load("caprasse", dir + "/caprasse.sys", 3));
  {
    Case c;
    c.name = "family-4";
    c.n = 4;
    c.t = 9;
    const Point origin(4, Complex{});
    c.taylor = taylor_of(gen_family(4), origin);
    cases.push_back(std::move(c));
  }

  int threads = 1;
#ifdef MULTDEFL_HAVE_OPENMP
  threads = omp_get_max_threads();
#endif
  std::printf("threads %d, best of %d\n", threads, repeats);
  std::printf("%-10s %3s %14s %10s %10s %8s %s\n", "system", "t", "size", "serial(s)", "omp(s)", "speedup", "match");
  bool all_match = true;
  for (const auto& c : cases) {
    MacaulayMatrix a = macaulay_layout(c.n, c.taylor.size(), c.t);
    MacaulayMatrix b = a;
    const double ts = best_of(repeats, [&] { fill_macaulay_serial(a, c.taylor, ColumnScaling::Normalized); });
    const double tp = best_of(repeats, [&] { fill_macaulay_parallel(b, c.taylor, ColumnScaling::Normalized); });
    const bool match = a.matrix == b.matrix;
    all_match = all_match && match;
    const std::string size = std::to_string(a.matrix.rows()) + "x" + std::to_string(a.matrix.cols());
    std::printf("%-10s %3u %14s %10.4f %10.4f %8.2f %s\n", c.name.c_str(), c.t, size.c_str(), ts, tp, ts / tp,
                match ? "yes" : "NO");
  }
  return all_match ? 0 : 1;
}
