#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "fragnet/matrices.hpp"

namespace fragnet {

struct SolverOptions {
    // Dense symmetric solve when n <= dense_threshold, Lanczos otherwise.
    int dense_threshold = 512;
    // Residual tolerance ||S s - lambda s|| / ||s|| for iterative solves.
    double tolerance = 1e-10;
    // Matrix-application budget = budget_factor * n.
    int budget_factor = 50;
    // Seed of the deterministic Lanczos start vector. Exposed so tests can
    // perturb the solver start; unrelated to the ensemble seed.
    std::uint64_t start_seed = 0x243F6A8885A308D3ULL;
    // Eigenvalues closer than this are treated as one degenerate cluster.
    double degeneracy_gap = 1e-10;
};

// Top-K eigenstructure of P = AB.
//
// Eigenpairs are computed on the symmetric S = D^{1/2} P D^{-1/2}
// (D = diag of bank strengths) and mapped back via x = D^{-1/2} s, which
// lands exactly on the weight-metric normalization
// sum_u w_u x_u^(k) x_u^(l) = delta_kl. Vectors inside a degenerate
// eigenvalue cluster are canonicalized (pivoted QR of the subspace), so
// only the spanned space is identifiable, not the individual columns;
// `degenerate[k]` marks those ranks.
struct SpectralResult {
    Eigen::VectorXd eigenvalues;      // descending, clamped to [0, 1]
    Eigen::VectorXd raw_eigenvalues;  // unclamped solver output
    Eigen::VectorXd normalized;       // eigenvalues / trace
    Eigen::MatrixXd fragility;        // n x K, column k is x^(k)
    Eigen::MatrixXd dual;             // n x K, column k is u^(k) = w .* x^(k)
    double trace = 0.0;               // tr P, computed from the edge shares
    std::vector<bool> degenerate;

    int rank_count() const { return static_cast<int>(eigenvalues.size()); }
};

SpectralResult fragility_spectrum(const ShareMatrices& shares,
                                  const Eigen::VectorXd& bank_strength,
                                  int K,
                                  const SolverOptions& options = {});

// Firm scores y = B x for a bank configuration x (proportionality fixed
// to 1).
Eigen::VectorXd firm_scores(const ShareMatrices& shares,
                            const Eigen::VectorXd& x);

// Dual (left-eigenvector) scores u^(k) = w .* x^(k) for every rank.
Eigen::MatrixXd dual_scores(const SpectralResult& result,
                            const Eigen::VectorXd& bank_strength);

// Normalized eigenvalues lambda_k / tr P.
Eigen::VectorXd normalized_eigenvalues(const SpectralResult& result);

// Removes the trivial lambda=1 mode: subtracts the strength-weighted mean
// of x0 on every connected component.
Eigen::VectorXd project_out_trivial(const ShareMatrices& shares,
                                    const Eigen::VectorXd& x0);

// states[0] = x0 with the trivial mode projected out; states[t] = P^t of it.
struct PropagationTrace {
    int steps = 0;
    std::vector<Eigen::VectorXd> states;  // size steps + 1
};

PropagationTrace propagate(const ShareMatrices& shares,
                           const Eigen::VectorXd& x0, int steps);

}  // namespace fragnet
