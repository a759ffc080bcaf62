#pragma once

// Benchmark systems.

#include <string>
#include <vector>

#include "multdefl/first_order.hpp"
#include "multdefl/io.hpp"
#include "multdefl/mult_structure.hpp"

namespace multdefl {

/// x1^3 + x1^2 - x2^2, x2^3 + x2^2 - x3, ..., x_{n-1}^3 + x_{n-1}^2 - x_n, x_n^2
/// with a root of multiplicity 2^n at the origin.
PolySystem<Rational> gen_family(std::size_t n);

/// Primal exponents x1^a x2^b, a < 2^{n-1}, b < 2, listed with a outer and
/// b inner (1, x2, x1, x1 x2, x1^2, ...).
std::vector<ExponentVector> family_basis(std::size_t n);

struct SuiteEntry {
  std::string id;
  std::string file;  // relative to the data directory
};

/// The systems with multiple deflation iterations, in table order.
const std::vector<SuiteEntry>& iteration_suite();

struct BenchRow {
  std::string id;
  std::string method;  // "first-order" or "mult"
  std::size_t delta = 0;
  unsigned nil_index = 0;
  std::size_t vars = 0;
  std::size_t polys = 0;
  std::size_t iterations = 0;
  double seconds = 0.0;  // construction time only
};

/// Family member n through the multiplicity-structure construction with the
/// basis of family_basis(n). delta and o are read off E unless
/// `verify_dual` is set, in which case the dual space is computed.
BenchRow bench_family(std::size_t n, bool reduce = true, bool verify_dual = false);

/// Iterated first-order deflation of a system file.
BenchRow bench_first_order(const std::string& id, const std::string& path, const FirstOrderOptions& opts = {});

/// Multiplicity-structure deflation of a system file; the file's basis is
/// used when present, otherwise E comes from the dual space.
BenchRow bench_mult(const std::string& id, const std::string& path, const DeflationOptions& opts = {});

std::string format_bench_table(const std::vector<BenchRow>& rows);

}  // namespace multdefl
