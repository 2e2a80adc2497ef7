#include "netsdp/clique_project.hpp"

#include <cstdint>
#include <exception>

#include "netsdp/eig.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace netsdp {

void project_cliques_serial(std::vector<Eigen::MatrixXd>& blocks) {
  for (Eigen::MatrixXd& b : blocks) b = psd_project(b);
}

void project_cliques_parallel(std::vector<Eigen::MatrixXd>& blocks,
                              int threads) {
#ifdef _OPENMP
  const int nt = threads > 0 ? threads : omp_get_max_threads();
  if (nt <= 1) {
    project_cliques_serial(blocks);
    return;
  }
  const std::int64_t count = static_cast<std::int64_t>(blocks.size());
  std::exception_ptr failure = nullptr;
#pragma omp parallel for schedule(dynamic) num_threads(nt)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      blocks[i] = psd_project(blocks[i]);
    } catch (...) {
#pragma omp critical
      if (failure == nullptr) failure = std::current_exception();
    }
  }
  if (failure != nullptr) std::rethrow_exception(failure);
#else
  (void)threads;
  project_cliques_serial(blocks);
#endif
}

}  // namespace netsdp
