#ifndef NETSDP_CLIQUE_PROJECT_HPP
#define NETSDP_CLIQUE_PROJECT_HPP

#include <Eigen/Dense>
#include <vector>

namespace netsdp {

// Projects every workspace matrix onto the PSD cone in place. The blocks
// are independent, so the parallel kernel and the serial reference produce
// identical output; both exist so they can be compared and benchmarked.
void project_cliques_serial(std::vector<Eigen::MatrixXd>& blocks);

// threads = 0 picks the runtime default. Falls back to the serial kernel
// when built without OpenMP.
void project_cliques_parallel(std::vector<Eigen::MatrixXd>& blocks,
                              int threads = 0);

}  // namespace netsdp

#endif  // NETSDP_CLIQUE_PROJECT_HPP
