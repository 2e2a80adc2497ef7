// Microbenchmark for the PSD projection kernels and the two solver paths.
//
// Part 1 times project_cliques_serial against project_cliques_parallel on
// identical batches of random symmetric blocks and reports the speedup.
// Part 2 solves the same stability problem with the clique-decomposed
// solver and the dense-cone solver to show where the decomposition pays.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "CLI11.hpp"
#include "netsdp/clique_project.hpp"
#include "netsdp/sdp.hpp"
#include "netsdp/solver.hpp"
#include "netsdp/sysmodel.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<Eigen::MatrixXd> random_blocks(int count, int dim,
                                           std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Eigen::MatrixXd> blocks(count);
  for (auto& b : blocks) {
    Eigen::MatrixXd g(dim, dim);
    for (int j = 0; j < dim; ++j)
      for (int i = 0; i < dim; ++i) g(i, j) = gauss(rng);
    b = 0.5 * (g + g.transpose());
  }
  return blocks;
}

double time_kernel(const std::vector<Eigen::MatrixXd>& input, int reps,
                   bool parallel, int threads) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    std::vector<Eigen::MatrixXd> work = input;
    const auto t0 = Clock::now();
    if (parallel)
      netsdp::project_cliques_parallel(work, threads);
    else
      netsdp::project_cliques_serial(work);
    best = std::min(best, seconds_since(t0));
  }
  return best;
}

void bench_projection(int threads, int reps, std::uint64_t seed) {
  std::printf("PSD projection kernels (best of %d runs)\n", reps);
  std::printf("%8s %6s %12s %12s %9s\n", "blocks", "dim", "serial_ms",
              "parallel_ms", "speedup");
  const int shapes[][2] = {{256, 16}, {64, 48}, {16, 96}, {4, 192}};
  for (const auto& [count, dim] : shapes) {
    const auto input = random_blocks(count, dim, seed);
    const double ts = time_kernel(input, reps, false, threads);
    const double tp = time_kernel(input, reps, true, threads);
    std::printf("%8d %6d %12.3f %12.3f %8.2fx\n", count, dim, 1e3 * ts,
                1e3 * tp, ts / tp);
  }
}

void bench_solvers(const std::vector<int>& sizes, std::uint64_t seed) {
  std::printf("\nStability solve, decomposed cone vs dense cone\n");
  std::printf("%4s %6s %8s %14s %14s\n", "n", "N", "cliques", "decomposed_s",
              "dense_s");
  for (int n : sizes) {
    const netsdp::GlobalSystem gs =
        netsdp::assemble(netsdp::random_chain(n, seed));
    const netsdp::PPattern pp(gs.alpha);
    const netsdp::SdpProblem prob = netsdp::stability_sdp(gs, pp, 1.0);
    const netsdp::DecomposedSdp dec =
        netsdp::decompose(prob, netsdp::stability_cone_pattern(gs));

    netsdp::AdmmSettings s;
    const netsdp::SolveResult rd = netsdp::solve_decomposed(dec, s);
    const netsdp::SolveResult rf = netsdp::solve_dense(prob, s);
    std::printf("%4d %6d %8d %14.4f %14.4f\n", n, gs.alpha.total(),
                dec.clique_count(), rd.wall_time, rf.wall_time);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kernel and solver-path microbenchmarks"};
  int threads = 0;
  int reps = 5;
  std::uint64_t seed = 0;
  std::vector<int> sizes = {10, 20, 40};
  app.add_option("--threads", threads, "projection workers (0 = all cores)");
  app.add_option("--reps", reps, "repetitions per measurement")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "generator seed");
  app.add_option("--sizes", sizes, "chain lengths for the solver comparison")
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  bench_projection(threads, reps, seed);
  bench_solvers(sizes, seed);
  return 0;
}
