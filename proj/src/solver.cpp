#include "netsdp/solver.hpp"

#include <Eigen/SparseCholesky>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <utility>
#include <vector>

#include "netsdp/clique_project.hpp"
#include "netsdp/errors.hpp"

namespace netsdp {

namespace {

void validate_settings(const AdmmSettings& s) {
  if (!(s.rho > 0.0)) throw Error("penalty must be positive");
  if (!(s.alpha_relax >= 1.0 && s.alpha_relax < 2.0))
    throw Error("relaxation must lie in [1, 2)");
  if (!(s.tol > 0.0)) throw Error("tolerance must be positive");
  if (s.max_iter < 1) throw Error("iteration cap must be at least 1");
  if (s.check_every < 1) throw Error("check period must be at least 1");
}

// Union of the scalar entries covered by some clique, as sorted (row, col)
// keys. Everything the iteration touches lives on these slots, so one
// iteration costs O(sum of squared clique sizes), not O(cone_dim^2).
struct Slots {
  std::vector<std::pair<int, int>> keys;

  int find(int r, int c) const {
    const auto it =
        std::lower_bound(keys.begin(), keys.end(), std::make_pair(r, c));
    if (it == keys.end() || *it != std::make_pair(r, c))
      throw PatternMismatchError("data entry outside the clique cover");
    return static_cast<int>(it - keys.begin());
  }
};

Slots build_slots(const std::vector<IndexMatrix>& selectors) {
  Slots slots;
  std::size_t total = 0;
  for (const IndexMatrix& sel : selectors) {
    const std::size_t q = sel.global_indices().size();
    total += q * q;
  }
  slots.keys.reserve(total);
  for (const IndexMatrix& sel : selectors)
    for (int r : sel.global_indices())
      for (int c : sel.global_indices()) slots.keys.emplace_back(r, c);
  std::sort(slots.keys.begin(), slots.keys.end());
  slots.keys.erase(std::unique(slots.keys.begin(), slots.keys.end()),
                   slots.keys.end());
  return slots;
}

// Sparse data flattened onto slot indices (CSR over the variables).
struct SlotData {
  std::vector<int> offsets;  // m + 1
  std::vector<int> slot;
  std::vector<double> value;
};

void append_matrix(const SparseSym& s, const Slots& slots, SlotData& out) {
  for (int k = 0; k < s.outerSize(); ++k) {
    for (SparseSym::InnerIterator it(s, k); it; ++it) {
      if (it.value() == 0.0) continue;
      out.slot.push_back(
          slots.find(static_cast<int>(it.row()), static_cast<int>(it.col())));
      out.value.push_back(it.value());
    }
  }
  out.offsets.push_back(static_cast<int>(out.slot.size()));
}

}  // namespace

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Solved:
      return "Solved";
    case SolveStatus::MaxIters:
      return "MaxIters";
    case SolveStatus::InfeasibleSuspected:
      return "Infeasible-suspected";
  }
  return "Unknown";
}

SolveResult solve_decomposed(const DecomposedSdp& d, const AdmmSettings& s) {
  validate_settings(s);
  const auto t_start = std::chrono::steady_clock::now();

  const SdpProblem& p = d.base;
  const int m = p.m();
  const int K = d.clique_count();
  if (K == 0) throw Error("decomposition has no cliques");

  const Slots slots = build_slots(d.selectors);
  const int E = static_cast<int>(slots.keys.size());

  // Per-clique local (a, b) -> slot, row-major, plus workspace sizes.
  std::vector<std::vector<int>> clique_slot(K);
  std::vector<int> qdim(K);
  for (int k = 0; k < K; ++k) {
    const auto& gi = d.selectors[k].global_indices();
    const int q = static_cast<int>(gi.size());
    qdim[k] = q;
    clique_slot[k].resize(static_cast<std::size_t>(q) * q);
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b)
        clique_slot[k][a * q + b] = slots.find(gi[a], gi[b]);
  }

  // Entry multiplicity and its reciprocal; every key is covered at least
  // once by the clique that generated it.
  Eigen::VectorXd mult = Eigen::VectorXd::Zero(E);
  for (int k = 0; k < K; ++k)
    for (int slot : clique_slot[k]) mult(slot) += 1.0;
  const Eigen::VectorXd mult_inv = mult.cwiseInverse();

  // Constant term and variable data on slots.
  SlotData a0;
  a0.offsets.push_back(0);
  append_matrix(p.A0, slots, a0);
  SlotData av;
  av.offsets.push_back(0);
  for (const SparseSym& ai : p.A) append_matrix(ai, slots, av);

  // Gram matrix of the variable data in the 1/multiplicity inner product,
  // factored once and reused by every affine step.
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> gram;
  if (m > 0) {
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(av.slot.size());
    for (int i = 0; i < m; ++i)
      for (int e = av.offsets[i]; e < av.offsets[i + 1]; ++e)
        trip.emplace_back(av.slot[e], i,
                          av.value[e] * std::sqrt(mult_inv(av.slot[e])));
    Eigen::SparseMatrix<double> stacked(E, m);
    stacked.setFromTriplets(trip.begin(), trip.end());
    const Eigen::SparseMatrix<double> G =
        (Eigen::SparseMatrix<double>(stacked.transpose()) * stacked)
            .pruned();
    gram.compute(G);
    if (gram.info() != Eigen::Success)
      throw NumericalError("affine-step factorization failed");
  }

  // Iterates. Z: psd variables, L: scaled duals, V: affine-step output,
  // Vh: relaxed V, work: projection input/output.
  std::vector<Eigen::MatrixXd> Z(K), L(K), V(K), Vh(K), work(K);
  for (int k = 0; k < K; ++k) {
    Z[k] = Eigen::MatrixXd::Zero(qdim[k], qdim[k]);
    L[k] = Z[k];
    V[k] = Z[k];
    Vh[k] = Z[k];
    work[k] = Z[k];
  }

  Eigen::VectorXd r(E), t(E), sc(E);
  Eigen::VectorXd rhs(m), y = Eigen::VectorXd::Zero(m);

  SolveResult res;
  bool converged = false;
  int it = 0;
  while (it < s.max_iter) {
    ++it;

    // Affine step: project (y, V) onto the consensus constraint given the
    // current X = Z - L. The multiplier system is the factored Gram.
    r.setZero();
    for (int e = a0.offsets[0]; e < a0.offsets[1]; ++e)
      r(a0.slot[e]) -= a0.value[e];
    for (int k = 0; k < K; ++k) {
      V[k] = Z[k] - L[k];
      const int q = qdim[k];
      const double* x = V[k].data();
      const int* cs = clique_slot[k].data();
      for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
          r(cs[a * q + b]) += x[b * q + a];  // column-major storage
    }
    t = mult_inv.cwiseProduct(r);
    if (m > 0) {
      for (int i = 0; i < m; ++i) {
        double acc = 0.0;
        for (int e = av.offsets[i]; e < av.offsets[i + 1]; ++e)
          acc += av.value[e] * t(av.slot[e]);
        rhs(i) = p.b(i) / s.rho - acc;
      }
      y = gram.solve(rhs);
      if (!y.allFinite())
        throw NumericalError("affine-step solve produced non-finite values");
      sc = r;
      for (int i = 0; i < m; ++i)
        for (int e = av.offsets[i]; e < av.offsets[i + 1]; ++e)
          sc(av.slot[e]) += y(i) * av.value[e];
      sc = s.rho * mult_inv.cwiseProduct(sc);
    } else {
      sc = s.rho * t;
    }

    for (int k = 0; k < K; ++k) {
      const int q = qdim[k];
      double* v = V[k].data();
      const int* cs = clique_slot[k].data();
      for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
          v[b * q + a] -= sc(cs[a * q + b]) / s.rho;
      Vh[k] = s.alpha_relax * V[k] + (1.0 - s.alpha_relax) * Z[k];
      work[k] = Vh[k] + L[k];
    }

    // Cone step: independent psd projections.
    project_cliques_parallel(work, s.threads);

    // Dual ascent and (periodically) scaled residuals, in a fixed order.
    const bool checking = (it % s.check_every == 0) || it == s.max_iter;
    double pr2 = 0.0, vn2 = 0.0, zn2 = 0.0, dn2 = 0.0, ln2 = 0.0;
    for (int k = 0; k < K; ++k) {
      if (checking) {
        pr2 += (V[k] - work[k]).squaredNorm();
        vn2 += V[k].squaredNorm();
        zn2 += work[k].squaredNorm();
        dn2 += (work[k] - Z[k]).squaredNorm();
      }
      L[k] += Vh[k] - work[k];
      Z[k] = work[k];
      if (checking) ln2 += L[k].squaredNorm();
    }
    if (checking) {
      const double prim_scale =
          std::max({1.0, std::sqrt(vn2), std::sqrt(zn2)});
      const double dual_scale = std::max(1.0, s.rho * std::sqrt(ln2));
      res.primal_residual = std::sqrt(pr2) / prim_scale;
      res.dual_residual = s.rho * std::sqrt(dn2) / dual_scale;
      res.residual_history.push_back(
          std::max(res.primal_residual, res.dual_residual));
      if (std::max(res.primal_residual, res.dual_residual) <= s.tol) {
        converged = true;
        break;
      }
    }
  }

  res.iterations = it;
  res.y = y;
  res.objective = m > 0 ? p.b.dot(y) : 0.0;
  res.cone_vars = std::move(Z);
  if (converged) {
    res.status = SolveStatus::Solved;
  } else if (res.dual_residual <= 10.0 * s.tol &&
             res.primal_residual >= 1e3 * s.tol) {
    res.status = SolveStatus::InfeasibleSuspected;
  } else {
    res.status = SolveStatus::MaxIters;
  }
  res.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
          .count();
  return res;
}

SolveResult solve_dense(const SdpProblem& p, const AdmmSettings& s) {
  Graph complete(p.cone.block_count());
  for (int i = 0; i < complete.node_count(); ++i)
    for (int j = i + 1; j < complete.node_count(); ++j) complete.add_edge(i, j);
  return solve_decomposed(decompose(p, BlockPattern(p.cone, complete)), s);
}

}  // namespace netsdp
