// Command-line front end: system generation, single-system analysis,
// pattern inspection, and CSV scaling benchmarks.
//
// Exit codes: 0 success (Solved/Stable), 1 runtime or I/O failure,
// 2 invalid flags, 3 analysis finished without a certificate
// (Unknown/MaxIters/Infeasible-suspected), 4 unreadable or invalid system
// file (including precondition failures like a nonzero D for h2).

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "netsdp/analysis.hpp"
#include "netsdp/errors.hpp"
#include "netsdp/graph.hpp"
#include "netsdp/sdp.hpp"
#include "netsdp/sysio.hpp"
#include "netsdp/sysmodel.hpp"

namespace {

struct SolveFlags {
  std::string file;
  std::string problem;
  std::string solver = "decomposed";
  double tol = 1e-4;
  int max_iter = 2000;
  double rho = 0.0;  // 0 = per-problem default
  int threads = 0;
};

netsdp::AnalysisSettings to_settings(const SolveFlags& f) {
  netsdp::AnalysisSettings s;
  s.tol = f.tol;
  s.max_iter = f.max_iter;
  s.dense = f.solver == "dense";
  s.threads = f.threads;
  if (f.rho > 0.0) s.rho = f.rho;
  return s;
}

netsdp::NetworkedSystem zero_feedthrough(netsdp::NetworkedSystem sys) {
  for (auto& s : sys.subsystems) s.D.setZero();
  return sys;
}

int run_gen(int n, std::uint64_t seed, const std::string& out, bool zero_d) {
  netsdp::NetworkedSystem sys = netsdp::random_chain(n, seed);
  if (zero_d) sys = zero_feedthrough(sys);
  try {
    netsdp::write_system(sys, out);
  } catch (const netsdp::IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}

int load_system(const std::string& path, netsdp::NetworkedSystem& sys) {
  try {
    sys = netsdp::read_system(path);
  } catch (const netsdp::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  }
  return 0;
}

int run_analyze(const SolveFlags& f) {
  netsdp::NetworkedSystem sys;
  if (int rc = load_system(f.file, sys)) return rc;
  const netsdp::AnalysisSettings settings = to_settings(f);
  try {
    if (f.problem == "stability") {
      const auto rep = netsdp::verify_stability(sys, settings);
      std::printf(
          "problem=stability solver=%s status=%s verdict=%s iterations=%d "
          "time_s=%.6f\n",
          f.solver.c_str(), netsdp::to_string(rep.solve.status).c_str(),
          netsdp::to_string(rep.verdict), rep.solve.iterations,
          rep.solve.wall_time);
      return rep.verdict == netsdp::StabilityVerdict::Stable ? 0 : 3;
    }
    const auto rep = f.problem == "h2" ? netsdp::h2_report(sys, settings)
                                       : netsdp::hinf_report(sys, settings);
    std::printf(
        "problem=%s solver=%s status=%s objective=%.10g bound=%.10g "
        "iterations=%d time_s=%.6f\n",
        f.problem.c_str(), f.solver.c_str(),
        netsdp::to_string(rep.solve.status).c_str(), rep.solve.objective,
        rep.value, rep.solve.iterations, rep.solve.wall_time);
    return rep.solve.status == netsdp::SolveStatus::Solved ? 0 : 3;
  } catch (const netsdp::NonzeroDError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  } catch (const netsdp::UnstableError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  } catch (const netsdp::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}

void print_edges(const char* label,
                 const std::vector<std::pair<int, int>>& edges) {
  std::printf("%s:", label);
  if (edges.empty()) std::printf(" none");
  for (const auto& [u, v] : edges) std::printf(" (%d,%d)", u + 1, v + 1);
  std::printf("\n");
}

void print_cliques(const char* label, const netsdp::CliqueSet& cs) {
  std::printf("%s:", label);
  for (const auto& c : cs.cliques) {
    std::printf(" {");
    for (std::size_t k = 0; k < c.size(); ++k)
      std::printf(k ? ",%d" : "%d", c[k] + 1);
    std::printf("}");
  }
  std::printf("\n");
}

int max_cardinality(const netsdp::CliqueSet& cs) {
  std::size_t best = 0;
  for (const auto& c : cs.cliques) best = std::max(best, c.size());
  return static_cast<int>(best);
}

int run_pattern(const std::string& file, const std::string& problem) {
  netsdp::NetworkedSystem sys;
  if (int rc = load_system(file, sys)) return rc;
  try {
    const netsdp::GlobalSystem gs = netsdp::assemble(sys);
    const auto [chordal_state, fill] =
        netsdp::chordal_extension(netsdp::state_block_graph(gs));

    std::printf("problem: %s\n", problem.c_str());
    if (problem == "hinf") {
      const netsdp::PPattern pp(gs.alpha);
      const auto [pattern, predicted] = netsdp::hinf_pattern(gs, pp);
      const auto actual = netsdp::maximal_cliques(pattern.graph);

      std::printf("partition:");
      for (int s : pattern.partition.sizes) std::printf(" %d", s);
      std::printf("\n");

      // Structural edges are the built pattern minus the chordal fill.
      const std::set<std::pair<int, int>> fillset(fill.begin(), fill.end());
      std::vector<std::pair<int, int>> structural;
      for (const auto& e : pattern.graph.edges())
        if (!fillset.count(e)) structural.push_back(e);
      print_edges("edges", structural);
      print_edges("fill", fill);
      print_cliques("cliques", actual);
      std::printf("clique_count: %d\n", actual.size());
      std::printf("max_cardinality: %d\n", max_cardinality(actual));
      print_cliques("predicted_cliques", predicted);
      std::printf("predicted_count: %d\n", predicted.size());
    } else {
      const auto cliques = netsdp::maximal_cliques(chordal_state);
      std::printf("partition:");
      for (int s : gs.alpha.sizes) std::printf(" %d", s);
      std::printf("\n");
      const std::set<std::pair<int, int>> fillset(fill.begin(), fill.end());
      std::vector<std::pair<int, int>> structural;
      for (const auto& e : chordal_state.edges())
        if (!fillset.count(e)) structural.push_back(e);
      print_edges("edges", structural);
      print_edges("fill", fill);
      print_cliques("cliques", cliques);
      std::printf("clique_count: %d\n", cliques.size());
      std::printf("max_cardinality: %d\n", max_cardinality(cliques));
    }
    return 0;
  } catch (const netsdp::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  }
}

int run_bench(const std::vector<int>& sizes, std::uint64_t seed,
              const std::vector<std::string>& problems,
              const std::string& out, const SolveFlags& base) {
  std::ofstream csv(out);
  if (!csv) {
    std::fprintf(stderr, "error: cannot open %s for writing\n", out.c_str());
    return 1;
  }
  csv << "n,N,problem,solver,status,objective,iterations,time_s\n";

  try {
    for (int n : sizes) {
      const netsdp::NetworkedSystem sys = netsdp::random_chain(n, seed);
      const int N =
          static_cast<int>(netsdp::assemble(sys).A.rows());
      for (const auto& problem : problems) {
        for (const char* solver : {"decomposed", "dense"}) {
          SolveFlags f = base;
          f.problem = problem;
          f.solver = solver;
          const netsdp::AnalysisSettings settings = to_settings(f);

          netsdp::SolveResult res;
          if (problem == "stability") {
            res = netsdp::verify_stability(sys, settings).solve;
          } else if (problem == "h2") {
            // The quadratic program needs D = 0; benchmarks drop the
            // feedthrough blocks for these rows.
            res = netsdp::h2_report(zero_feedthrough(sys), settings).solve;
          } else {
            res = netsdp::hinf_report(sys, settings).solve;
          }
          char line[256];
          std::snprintf(line, sizeof line, "%d,%d,%s,%s,%s,%.10g,%d,%.6f\n",
                        n, N, problem.c_str(), solver,
                        netsdp::to_string(res.status).c_str(), res.objective,
                        res.iterations, res.wall_time);
          csv << line;
        }
      }
    }
  } catch (const netsdp::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  csv.close();
  if (!csv) {
    std::fprintf(stderr, "error: writing %s failed\n", out.c_str());
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stability and performance bounds for sparse networked "
               "systems via clique-decomposed semidefinite programming"};
  app.require_subcommand(1);

  int threads = 0;
  app.add_option("--threads", threads,
                 "PSD projection workers (0 = all cores)");

  // gen
  auto* gen = app.add_subcommand("gen", "Write a random chain system file");
  int gen_n = 0;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  bool gen_zero_d = false;
  gen->add_option("--chain", gen_n, "number of subsystems")
      ->required()
      ->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_seed, "generator seed (default 0)");
  gen->add_option("--out,-o", gen_out, "output path")->required();
  gen->add_flag("--zero-d", gen_zero_d, "drop the feedthrough blocks");

  // analyze
  auto* analyze =
      app.add_subcommand("analyze", "Solve one problem for one system");
  SolveFlags af;
  analyze->add_option("--problem", af.problem, "stability, h2, or hinf")
      ->required()
      ->check(CLI::IsMember({"stability", "h2", "hinf"}));
  analyze->add_option("--solver", af.solver, "decomposed (default) or dense")
      ->check(CLI::IsMember({"decomposed", "dense"}));
  analyze->add_option("--tol", af.tol, "residual tolerance (default 1e-4)")
      ->check(CLI::PositiveNumber);
  analyze
      ->add_option("--max-iter", af.max_iter,
                   "iteration cap (default 2000)")
      ->check(CLI::PositiveNumber);
  analyze->add_option("--rho", af.rho, "penalty override")
      ->check(CLI::PositiveNumber);
  analyze->add_option("file", af.file, "system JSON file")->required();

  // pattern
  auto* pattern =
      app.add_subcommand("pattern", "Report the clique structure");
  std::string pat_problem = "stability";
  std::string pat_file;
  pattern->add_option("--problem", pat_problem, "stability, h2, or hinf")
      ->check(CLI::IsMember({"stability", "h2", "hinf"}));
  pattern->add_option("file", pat_file, "system JSON file")->required();

  // bench
  auto* bench = app.add_subcommand("bench", "Scaling runs to CSV");
  std::vector<int> bench_sizes;
  std::uint64_t bench_seed = 0;
  std::vector<std::string> bench_problems = {"stability", "h2", "hinf"};
  std::string bench_out;
  SolveFlags bf;
  bench->add_option("--sizes", bench_sizes, "chain lengths, comma separated")
      ->required()
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  bench->add_option("--seed", bench_seed, "generator seed (default 0)");
  bench
      ->add_option("--problems", bench_problems,
                   "subset of stability,h2,hinf (default all)")
      ->delimiter(',')
      ->check(CLI::IsMember({"stability", "h2", "hinf"}));
  bench->add_option("--out,-o", bench_out, "CSV output path")->required();
  bench->add_option("--tol", bf.tol, "residual tolerance (default 1e-4)")
      ->check(CLI::PositiveNumber);
  bench->add_option("--max-iter", bf.max_iter, "iteration cap (default 2000)")
      ->check(CLI::PositiveNumber);
  bench->add_option("--rho", bf.rho, "penalty override")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (gen->parsed()) return run_gen(gen_n, gen_seed, gen_out, gen_zero_d);
  if (analyze->parsed()) {
    af.threads = threads;
    return run_analyze(af);
  }
  if (pattern->parsed()) return run_pattern(pat_file, pat_problem);
  bf.threads = threads;
  return run_bench(bench_sizes, bench_seed, bench_problems, bench_out, bf);
}
