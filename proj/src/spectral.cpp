#include "fragnet/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fragnet/error.hpp"
#include "fragnet/rng.hpp"

namespace fragnet {

namespace {

struct SymmetricPairs {
    Eigen::VectorXd values;   // descending
    Eigen::MatrixXd vectors;  // Euclidean-orthonormal columns of S
};

// All eigenpairs via Eigen's dense symmetric solver, reordered descending.
SymmetricPairs solve_dense(const ShareMatrices& shares, int K) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(shares.dense_S());
    const int n = shares.bank_count();
    SymmetricPairs out;
    out.values.resize(K);
    out.vectors.resize(n, K);
    for (int k = 0; k < K; ++k) {
        out.values[k] = es.eigenvalues()[n - 1 - k];
        out.vectors.col(k) = es.eigenvectors().col(n - 1 - k);
    }
    return out;
}

// Lanczos with full reorthogonalization on the operator S. On breakdown
// (an invariant subspace was exhausted) a fresh deterministic vector is
// injected with a zero coupling coefficient, which lets the iteration pick
// up further invariant subspaces and degenerate copies. The block-diagonal
// T it produces still satisfies T = V^T S V because a breakdown makes the
// preceding span S-invariant.
SymmetricPairs solve_lanczos(const ShareMatrices& shares, int K,
                             const SolverOptions& opt) {
    const int n = shares.bank_count();
    const long budget = static_cast<long>(opt.budget_factor) * n;
    long matvecs = 0;

    Rng rng(opt.start_seed);
    auto fresh_vector = [&]() {
        Eigen::VectorXd v(n);
        for (int u = 0; u < n; ++u) v[u] = rng.uniform01() - 0.5;
        return v;
    };

    std::vector<Eigen::VectorXd> basis;
    std::vector<double> alpha;
    std::vector<double> beta;  // beta[j] couples basis j and j+1; 0 = block cut

    auto reorthogonalize = [&](Eigen::VectorXd& w) {
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& q : basis) w -= q.dot(w) * q;
        }
    };

    // Draws a vector orthogonal to the current basis; false when the space
    // is exhausted.
    auto inject = [&]() {
        for (int tries = 0; tries < 32; ++tries) {
            Eigen::VectorXd v = fresh_vector();
            reorthogonalize(v);
            const double norm = v.norm();
            if (norm > 1e-8) {
                basis.push_back(v / norm);
                return true;
            }
        }
        return false;
    };

    basis.push_back(fresh_vector());
    basis.back().normalize();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tsolver;
    auto eigensolve_T = [&]() {
        const int j = static_cast<int>(alpha.size());
        Eigen::MatrixXd T = Eigen::MatrixXd::Zero(j, j);
        for (int t = 0; t < j; ++t) {
            T(t, t) = alpha[static_cast<std::size_t>(t)];
            if (t + 1 < j) {
                T(t, t + 1) = T(t + 1, t) = beta[static_cast<std::size_t>(t)];
            }
        }
        tsolver.compute(T);
    };

    // Top-K ritz pairs from the current T, with a cheap residual bound.
    auto converged = [&]() {
        const int j = static_cast<int>(alpha.size());
        if (j < K) return false;
        eigensolve_T();
        const double tail = beta.size() == alpha.size()
                                ? std::abs(beta.back())
                                : 0.0;
        for (int k = 0; k < K; ++k) {
            const auto y = tsolver.eigenvectors().col(j - 1 - k);
            const double resid = tail * std::abs(y[j - 1]);
            if (resid > opt.tolerance) return false;
        }
        return true;
    };

    bool complete = false;  // basis spans the whole space
    while (true) {
        const std::size_t j = alpha.size();
        const Eigen::VectorXd& v = basis[j];
        Eigen::VectorXd w = shares.apply_S(v);
        ++matvecs;
        alpha.push_back(v.dot(w));
        reorthogonalize(w);
        const double norm = w.norm();

        if (static_cast<int>(basis.size()) == n) {
            complete = true;
            break;
        }
        if (norm <= 1e-13) {
            // invariant subspace exhausted
            if (!inject()) {
                complete = true;
                break;
            }
            beta.push_back(0.0);
        } else {
            basis.push_back(w / norm);
            beta.push_back(norm);
        }
        if (static_cast<int>(alpha.size()) >= K && converged()) break;
        if (matvecs >= budget) break;
    }

    eigensolve_T();
    const int j = static_cast<int>(alpha.size());
    if (j < K) {
        throw Error(ErrorKind::convergence_failure,
                    "rank " + std::to_string(j + 1) +
                        ": Krylov space exhausted below requested K");
    }

    SymmetricPairs out;
    out.values.resize(K);
    out.vectors.resize(n, K);
    for (int k = 0; k < K; ++k) {
        out.values[k] = tsolver.eigenvalues()[j - 1 - k];
        Eigen::VectorXd s = Eigen::VectorXd::Zero(n);
        const auto y = tsolver.eigenvectors().col(j - 1 - k);
        for (int t = 0; t < j; ++t) s += y[t] * basis[static_cast<std::size_t>(t)];
        s.normalize();
        out.vectors.col(k) = s;
    }

    if (!complete) {
        // Explicit residual check; the in-loop bound is only an estimate.
        for (int k = 0; k < K; ++k) {
            const Eigen::VectorXd s = out.vectors.col(k);
            const double resid = (shares.apply_S(s) - out.values[k] * s).norm();
            if (resid > 10.0 * opt.tolerance) {
                throw Error(ErrorKind::convergence_failure,
                            "rank " + std::to_string(k + 1) + ": residual " +
                                std::to_string(resid) +
                                " above tolerance after budget of " +
                                std::to_string(budget) + " applications");
            }
        }
    }
    return out;
}

// Replaces the basis of each degenerate cluster by a canonical one
// (column-pivoted QR of the coefficient matrix), so the returned vectors
// depend only on the spanned subspace, not on the solver's path to it.
void canonicalize_clusters(SymmetricPairs& pairs, double gap,
                           std::vector<bool>& degenerate) {
    const int K = static_cast<int>(pairs.values.size());
    degenerate.assign(static_cast<std::size_t>(K), false);
    int start = 0;
    while (start < K) {
        int end = start + 1;
        while (end < K &&
               std::abs(pairs.values[end - 1] - pairs.values[end]) < gap) {
            ++end;
        }
        const int d = end - start;
        if (d > 1) {
            Eigen::MatrixXd block = pairs.vectors.middleCols(start, d);
            // coefficients of every coordinate axis in the cluster basis
            Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(block.transpose());
            Eigen::MatrixXd q =
                qr.householderQ() * Eigen::MatrixXd::Identity(d, d);
            pairs.vectors.middleCols(start, d) = block * q;
            for (int k = start; k < end; ++k) {
                degenerate[static_cast<std::size_t>(k)] = true;
            }
        }
        start = end;
    }
}

}  // namespace

SpectralResult fragility_spectrum(const ShareMatrices& shares,
                                  const Eigen::VectorXd& bank_strength,
                                  int K, const SolverOptions& options) {
    const int n = shares.bank_count();
    if (K < 1) {
        throw Error(ErrorKind::invalid_argument, "K must be >= 1");
    }
    if (K > n) {
        throw Error(ErrorKind::dimension_mismatch,
                    "K = " + std::to_string(K) + " exceeds bank count " +
                        std::to_string(n));
    }
    if (bank_strength.size() != n ||
        !bank_strength.isApprox(shares.bank_strength(), 1e-9)) {
        throw Error(ErrorKind::dimension_mismatch,
                    "strength vector inconsistent with share matrices");
    }

    SymmetricPairs pairs = n <= options.dense_threshold
                               ? solve_dense(shares, K)
                               : solve_lanczos(shares, K, options);

    SpectralResult result;
    canonicalize_clusters(pairs, options.degeneracy_gap, result.degenerate);

    result.trace = shares.trace();
    result.raw_eigenvalues = pairs.values;
    result.eigenvalues =
        pairs.values.cwiseMax(0.0).cwiseMin(1.0);  // reporting clamp
    result.normalized = result.eigenvalues / result.trace;

    // x = D^{-1/2} s gives the weight-metric orthonormal fragility vectors.
    const Eigen::VectorXd inv_sqrt_w = bank_strength.cwiseSqrt().cwiseInverse();
    result.fragility.resize(n, K);
    for (int k = 0; k < K; ++k) {
        Eigen::VectorXd x = pairs.vectors.col(k).cwiseProduct(inv_sqrt_w);
        // sign convention: largest-|component| entry positive
        int arg = 0;
        x.cwiseAbs().maxCoeff(&arg);
        if (x[arg] < 0.0) x = -x;
        result.fragility.col(k) = x;
    }
    result.dual = dual_scores(result, bank_strength);
    return result;
}

Eigen::VectorXd firm_scores(const ShareMatrices& shares,
                            const Eigen::VectorXd& x) {
    return shares.apply_B(x);
}

Eigen::MatrixXd dual_scores(const SpectralResult& result,
                            const Eigen::VectorXd& bank_strength) {
    if (bank_strength.size() != result.fragility.rows()) {
        throw Error(ErrorKind::dimension_mismatch,
                    "strength vector does not match fragility vectors");
    }
    return bank_strength.asDiagonal() * result.fragility;
}

Eigen::VectorXd normalized_eigenvalues(const SpectralResult& result) {
    return result.eigenvalues / result.trace;
}

Eigen::VectorXd project_out_trivial(const ShareMatrices& shares,
                                    const Eigen::VectorXd& x0) {
    const int n = shares.bank_count();
    if (x0.size() != n) {
        throw Error(ErrorKind::dimension_mismatch,
                    "expected bank vector of length " + std::to_string(n));
    }
    const auto& comp = shares.bank_component();
    const Eigen::VectorXd& w = shares.bank_strength();
    std::vector<double> wx(static_cast<std::size_t>(shares.component_count()), 0.0);
    std::vector<double> wsum(static_cast<std::size_t>(shares.component_count()), 0.0);
    for (int u = 0; u < n; ++u) {
        wx[static_cast<std::size_t>(comp[static_cast<std::size_t>(u)])] += w[u] * x0[u];
        wsum[static_cast<std::size_t>(comp[static_cast<std::size_t>(u)])] += w[u];
    }
    Eigen::VectorXd out(n);
    for (int u = 0; u < n; ++u) {
        const auto c = static_cast<std::size_t>(comp[static_cast<std::size_t>(u)]);
        out[u] = x0[u] - wx[c] / wsum[c];
    }
    return out;
}

PropagationTrace propagate(const ShareMatrices& shares,
                           const Eigen::VectorXd& x0, int steps) {
    if (steps < 1) {
        throw Error(ErrorKind::invalid_argument, "steps must be >= 1");
    }
    PropagationTrace trace;
    trace.steps = steps;
    trace.states.reserve(static_cast<std::size_t>(steps) + 1);
    trace.states.push_back(project_out_trivial(shares, x0));
    for (int t = 0; t < steps; ++t) {
        trace.states.push_back(shares.apply_P(trace.states.back()));
    }
    return trace;
}

}  // namespace fragnet
