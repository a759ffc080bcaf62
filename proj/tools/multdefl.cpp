// multdefl: command-line driver.
//
//   multdefl analyze FILE         multiplicity, nil-index, primal/dual basis
//   multdefl deflate1 FILE        iterated first-order deflation
//   multdefl deflate-mult FILE    point + multiplicity structure deflation
//   multdefl refine FILE          Newton on a random square subsystem
//   multdefl bench                table over the benchmark systems
//
// Exit codes: 0 ok, 1 bad arguments, 2 parse error, 3 numerical failure.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "multdefl/dual_space.hpp"
#include "multdefl/first_order.hpp"
#include "multdefl/io.hpp"
#include "multdefl/mult_structure.hpp"
#include "multdefl/refine.hpp"
#include "multdefl/suite.hpp"

#ifndef MULTDEFL_DATA_DIR
#define MULTDEFL_DATA_DIR "data"
#endif

using namespace multdefl;
using nlohmann::json;

namespace {

struct Options {
  std::string file;
  std::optional<double> tol;
  std::optional<double> rank_tol;
  std::uint64_t seed = 42;
  std::vector<std::size_t> i_set;
  std::string basis;
  bool reduce = false;
  std::string json_path;
  std::string data_dir = MULTDEFL_DATA_DIR;
  std::size_t family_max = 4;
  bool first_order = false;
  bool quiet = false;
};

json exponents_json(const std::vector<ExponentVector>& e) {
  json a = json::array();
  for (const auto& v : e) a.push_back(v.entries());
  return a;
}

json complex_json(Complex c) { return json::array({c.real(), c.imag()}); }

json dual_json(const DualElement& d, double cut = 1e-12) {
  json terms = json::array();
  for (const auto& [g, c] : d.terms())
    if (std::abs(c) > cut) terms.push_back({{"exponent", g.entries()}, {"coefficient", complex_json(c)}});
  return terms;
}

std::string dual_to_string(const DualElement& d, double cut = 1e-9) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [g, c] : d.terms()) {
    if (std::abs(c) <= cut) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << complex_to_string(c) << ")";
    if (!g.is_zero()) os << "*d" << g.to_string();
  }
  if (first) os << "0";
  return os.str();
}

void write_json(const Options& o, const json& j) {
  if (o.json_path.empty()) return;
  std::ofstream out(o.json_path);
  if (!out) throw InvalidArgument("cannot write " + o.json_path);
  out << j.dump(2) << "\n";
}

double tol_of(const Options& o, const SystemFile& sf, double fallback) {
  if (o.tol) return *o.tol;
  if (sf.tol) return *sf.tol;
  return fallback;
}

double rank_tol_of(const Options& o, const SystemFile& sf) {
  if (o.rank_tol) return *o.rank_tol;
  if (sf.rank_tol) return *sf.rank_tol;
  return 1e-8;
}

SystemFile load(const Options& o) {
  SystemFile sf = parse_system_file(o.file);
  if (sf.root.empty()) throw InvalidArgument(o.file + ": no root given");
  if (!o.basis.empty()) {
    try {
      sf.basis = parse_exponent_list(o.basis, sf.names.size());
    } catch (const InvalidArgument& e) {
      throw ParseError(std::string("--basis: ") + e.what(), 1, 1);
    }
  }
  return sf;
}

int run_analyze(const Options& o) {
  const SystemFile sf = load(o);
  DualSpaceOptions dopt;
  dopt.rank_tol = rank_tol_of(o, sf);
  std::visit(
      [&](const auto& f) {
        const auto d = compute_dual_space(f, sf.root, dopt);
        const PrimalDualPair pd = sf.basis ? primal_dual_for_basis(d, *sf.basis) : orthogonal_primal_dual(d);
        std::cout << "multiplicity " << d.multiplicity << "\n"
                  << "nil-index " << d.nil_index << "\n"
                  << "dims";
        for (auto v : d.dims) std::cout << " " << v;
        std::cout << "\nprimal basis";
        for (const auto& e : pd.exponents) std::cout << " " << e.to_string();
        std::cout << "\n";
        if (!o.quiet)
          for (std::size_t i = 0; i < pd.basis.size(); ++i)
            std::cout << "  L" << i << " = " << dual_to_string(pd.basis[i]) << "\n";
        json j{{"format", 1},
               {"multiplicity", d.multiplicity},
               {"nil_index", d.nil_index},
               {"dims", d.dims},
               {"root", point_to_json(sf.root)},
               {"primal", exponents_json(pd.exponents)}};
        json duals = json::array();
        for (const auto& b : pd.basis) duals.push_back(dual_json(b));
        j["dual"] = duals;
        write_json(o, j);
      },
      sf.system);
  return 0;
}

int run_deflate1(const Options& o) {
  const SystemFile sf = load(o);
  FirstOrderOptions fo;
  fo.rank_tol = rank_tol_of(o, sf);
  fo.seed = o.seed;
  if (!o.i_set.empty()) {
    fo.i_set.clear();
    for (auto i : o.i_set) {
      if (i == 0) throw InvalidArgument("--i-set entries are 1-based");
      fo.i_set.push_back(i - 1);
    }
  }
  const double tol = tol_of(o, sf, 1e-8);
  std::visit(
      [&](const auto& f) {
        const auto tr = deflate_fully(f, sf.root, fo);
        json steps = json::array();
        for (std::size_t k = 0; k < tr.steps.size(); ++k) {
          const auto& s = tr.steps[k];
          std::cout << "step " << k + 1 << ": rank " << s.rank << ", corank " << s.corank << ", block rows";
          for (auto r : s.block.rows) std::cout << " " << r + 1;
          std::cout << " cols";
          for (auto c : s.block.cols) std::cout << " " << c + 1;
          std::cout << ", appended " << s.appended << " (zero " << s.zero << ", duplicate " << s.duplicates << ")\n";
          steps.push_back({{"rank", s.rank},
                           {"corank", s.corank},
                           {"block_rows", s.block.rows},
                           {"block_cols", s.block.cols},
                           {"appended", s.appended},
                           {"zero", s.zero},
                           {"duplicates", s.duplicates}});
        }
        const auto& g = tr.final_system();
        const auto rep = verify_simple_root(g, tr.point, tol, fo.rank_tol);
        std::cout << "polynomials " << g.size() << ", variables " << sf.names.size() << ", iterations "
                  << tr.iterations() << "\n"
                  << "simple " << (rep.simple ? "yes" : "no") << " (residual " << rep.residual << ", sigma_min "
                  << rep.sigma_min << ")\n";
        if (!o.quiet) std::cout << system_to_text(g, sf.names);
        json j{{"format", 1},
               {"steps", steps},
               {"iterations", tr.iterations()},
               {"point", point_to_json(tr.point)},
               {"simple", rep.simple},
               {"system", system_to_json(g, sf.names)}};
        write_json(o, j);
      },
      sf.system);
  return 0;
}

template <class K>
struct MultRun {
  ExponentSets sets;
  DeflatedSystem<K> sys;
  Point start;  // (xi, nu) from the numerical dual space
};

template <class K>
MultRun<K> mult_run(const PolySystem<K>& f, const SystemFile& sf, const Options& o) {
  DualSpaceOptions dopt;
  dopt.rank_tol = rank_tol_of(o, sf);
  const auto d = compute_dual_space(f, sf.root, dopt);
  const PrimalDualPair pd = sf.basis ? primal_dual_for_basis(d, *sf.basis) : orthogonal_primal_dual(d);
  MultRun<K> r;
  r.sets = exponent_sets(pd.exponents, sf.basis ? ExponentOrder::AsGiven : ExponentOrder::Grevlex);
  DeflationOptions opts;
  opts.reduce = o.reduce;
  r.sys = build_deflated_system(f, r.sets, opts, sf.names);
  const PrimalDualPair aligned = sf.basis ? pd : primal_dual_for_basis(d, r.sets.E);
  const auto mu = parameter_values(r.sys.matrices, aligned);
  r.start = sf.root;
  r.start.insert(r.start.end(), mu.begin(), mu.end());
  return r;
}

int run_deflate_mult(const Options& o) {
  const SystemFile sf = load(o);
  const double tol = tol_of(o, sf, 1e-8);
  std::visit(
      [&](const auto& f) {
        const auto r = mult_run(f, sf, o);
        const auto& s = r.sys;
        std::cout << "primal basis";
        for (const auto& e : r.sets.E) std::cout << " " << e.to_string();
        std::cout << "\nborder " << r.sets.border.size() << ", parameters " << s.matrices.registry.size()
                  << ", eliminated " << s.matrices.eliminated.size() << "\n"
                  << "polynomials " << s.num_polys() << ", variables " << s.num_vars() << " (normal form "
                  << s.nf_candidates << ", commutator " << s.commutator_candidates << " candidates)\n";
        const auto rep = verify_simple_root(s.system(), r.start, tol, rank_tol_of(o, sf));
        std::cout << "simple at (xi, nu) " << (rep.simple ? "yes" : "no") << " (residual " << rep.residual
                  << ", sigma_min " << rep.sigma_min << ")\n";
        if (!o.quiet)
          for (const auto& p : s.polys) std::cout << p.origin.to_string() << ": " << p.poly.to_string(s.names) << "\n";
        std::vector<std::string> labels;
        for (const auto& p : s.polys) labels.push_back(p.origin.to_string());
        json params = json::array();
        for (const auto& v : s.matrices.registry)
          params.push_back({{"row", v.row}, {"alpha", v.alpha.entries()}, {"beta", v.beta.entries()}});
        json j{{"format", 1},
               {"primal", exponents_json(r.sets.E)},
               {"parameters", params},
               {"point", point_to_json(r.start)},
               {"simple", rep.simple},
               {"system", system_to_json(s.system(), s.names, labels)}};
        write_json(o, j);
      },
      sf.system);
  return 0;
}

int run_refine(const Options& o) {
  const SystemFile sf = load(o);
  const double tol = tol_of(o, sf, 1e-12);
  NewtonOptions nopt;
  nopt.tol = tol;
  std::visit(
      [&](const auto& f) {
        using K = typename std::decay_t<decltype(f)>::value_type::Coeff;
        PolySystem<K> g;
        Point start;
        std::vector<std::string> names;
        if (o.first_order) {
          FirstOrderOptions fo;
          fo.rank_tol = rank_tol_of(o, sf);
          fo.seed = o.seed;
          const auto tr = deflate_fully(f, sf.root, fo);
          g = tr.final_system();
          start = sf.root;
          names = sf.names;
        } else {
          const auto r = mult_run(f, sf, o);
          g = r.sys.system();
          start = r.start;
          names = r.sys.names;
        }
        const CompiledSystem sq(g.size() == start.size()
                                    ? random_square_subsystem(g, o.seed, SubsystemMode::Identity)
                                    : random_square_subsystem(g, o.seed));
        const auto tr = newton_refine(sq, start, nopt);
        for (std::size_t k = 0; k < tr.residuals.size(); ++k) {
          std::printf("iter %2zu  residual %.3e", k, tr.residuals[k]);
          if (k > 0) std::printf("  step %.3e", tr.steps[k - 1]);
          std::printf("\n");
        }
        const auto rep = verify_simple_root(g, tr.solution(), std::max(tol, 1e-10), rank_tol_of(o, sf));
        std::cout << (tr.converged ? "converged" : "not converged: " + tr.message) << ", sigma_min " << tr.sigma_min
                  << ", simple " << (rep.simple ? "yes" : "no") << "\n";
        if (!o.quiet)
          for (std::size_t v = 0; v < names.size(); ++v)
            std::cout << "  " << names[v] << " = " << complex_to_string(tr.solution()[v]) << "\n";
        json j{{"format", 1},
               {"converged", tr.converged},
               {"residuals", tr.residuals},
               {"steps", tr.steps},
               {"sigma_min", tr.sigma_min},
               {"variables", names},
               {"solution", point_to_json(tr.solution())}};
        write_json(o, j);
      },
      sf.system);
  return 0;
}

int run_bench(const Options& o) {
  std::vector<BenchRow> rows;
  for (std::size_t n = 2; n <= o.family_max; ++n) rows.push_back(bench_family(n, true, n <= 4));
  rows.push_back(bench_first_order("caprasse", o.data_dir + "/caprasse.sys"));
  rows.push_back(bench_mult("caprasse", o.data_dir + "/caprasse.sys"));
  FirstOrderOptions fo;
  fo.seed = o.seed;
  if (o.rank_tol) fo.rank_tol = *o.rank_tol;
  for (const auto& e : iteration_suite()) rows.push_back(bench_first_order(e.id, o.data_dir + "/" + e.file, fo));
  std::cout << format_bench_table(rows);
  json a = json::array();
  for (const auto& r : rows)
    a.push_back({{"id", r.id},
                 {"method", r.method},
                 {"multiplicity", r.delta},
                 {"nil_index", r.nil_index},
                 {"vars", r.vars},
                 {"polys", r.polys},
                 {"iterations", r.iterations},
                 {"seconds", r.seconds}});
  write_json(o, json{{"format", 1}, {"rows", a}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deflation of isolated singular roots of polynomial systems"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* c, bool needs_file) {
    if (needs_file) c->add_option("file", o.file, "system file")->required()->check(CLI::ExistingFile);
    c->add_option("--tol", o.tol, "residual / convergence tolerance");
    c->add_option("--rank-tol", o.rank_tol, "relative rank tolerance");
    c->add_option("--seed", o.seed, "seed for random subsystems");
    c->add_option("--json", o.json_path, "write a JSON report");
    c->add_flag("-q,--quiet", o.quiet, "counts only");
  };

  auto* analyze = app.add_subcommand("analyze", "multiplicity, nil-index and dual basis");
  add_common(analyze, true);
  analyze->add_option("--basis", o.basis, "primal exponents, e.g. \"0 0; 0 1\"");

  auto* d1 = app.add_subcommand("deflate1", "iterated first-order deflation");
  add_common(d1, true);
  d1->add_option("--i-set", o.i_set, "1-based kernel columns used at each step")->delimiter(',');

  auto* dm = app.add_subcommand("deflate-mult", "deflation with the multiplicity structure");
  add_common(dm, true);
  dm->add_option("--basis", o.basis, "primal exponents, e.g. \"0 0; 0 1\"");
  dm->add_option("--reduce-params", o.reduce, "eliminate parameters through commutators (true/false)");

  auto* rf = app.add_subcommand("refine", "Newton refinement of the deflated root");
  add_common(rf, true);
  rf->add_option("--basis", o.basis, "primal exponents");
  rf->add_option("--reduce-params", o.reduce, "eliminate parameters through commutators (true/false)");
  rf->add_flag("--first-order", o.first_order, "refine the first-order deflation instead");

  auto* bench = app.add_subcommand("bench", "benchmark table");
  add_common(bench, false);
  bench->add_option("--data-dir", o.data_dir, "directory with the .sys files");
  bench->add_option("--family-max", o.family_max, "largest family member")->check(CLI::Range(2, 6));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*analyze) return run_analyze(o);
    if (*d1) return run_deflate1(o);
    if (*dm) return run_deflate_mult(o);
    if (*rf) return run_refine(o);
    if (*bench) return run_bench(o);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
