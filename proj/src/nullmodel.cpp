#include "fragnet/nullmodel.hpp"

#include <cmath>
#include <limits>
#include <unordered_set>

#include "fragnet/error.hpp"
#include "fragnet/matrices.hpp"
#include "fragnet/rng.hpp"

namespace fragnet {

// Stub rewiring: cut every edge into a weight-carrying bank-stub and a firm
// stub, shuffle the firm stubs, and re-match them one bank-stub at a time.
// A match that would duplicate a (bank, firm) pair is redrawn from the
// remaining pool a bounded number of times; if that fails the whole
// matching restarts, which keeps the sampling uniform conditional on
// simplicity.
RewiredReplica rewire(const BipartiteNetwork& net, std::uint64_t seed,
                      const RewireBudget& budget) {
    const auto& edges = net.edges();
    const std::size_t E = edges.size();
    const long long m = net.firm_count();

    std::vector<int> pool(E);  // firm stubs
    Rng rng(seed);

    for (int attempt = 0; attempt < budget.restarts; ++attempt) {
        for (std::size_t k = 0; k < E; ++k) pool[k] = edges[k].firm;
        rng.shuffle(pool);

        std::unordered_set<long long> used;
        used.reserve(E * 2);
        bool ok = true;
        for (std::size_t j = 0; j < E && ok; ++j) {
            const long long bank = edges[j].bank;
            int retries = 0;
            while (used.count(bank * m + pool[j])) {
                if (++retries > budget.local_retries) {
                    ok = false;
                    break;
                }
                const std::size_t pick =
                    j + static_cast<std::size_t>(rng.uniform_below(E - j));
                std::swap(pool[j], pool[pick]);
            }
            if (ok) used.insert(bank * m + pool[j]);
        }
        if (!ok) continue;

        std::vector<BipartiteNetwork::Edge> rewired(E);
        for (std::size_t j = 0; j < E; ++j) {
            rewired[j] = {edges[j].bank, pool[j], edges[j].weight};
        }
        RewiredReplica replica{
            BipartiteNetwork(net.bank_ids(), net.firm_ids(), std::move(rewired)),
            seed, attempt};
        return replica;
    }
    throw Error(ErrorKind::matching_exhausted,
                "no simple matching found in " +
                    std::to_string(budget.restarts) + " restarts");
}

NullEnsembleSummary ensemble_summary(const BipartiteNetwork& net, int R,
                                     int K, std::uint64_t seed,
                                     const SolverOptions& options,
                                     const RewireBudget& budget) {
    if (R < 2) {
        throw Error(ErrorKind::invalid_argument,
                    "ensemble needs at least 2 replicas");
    }
    const int n = net.bank_count();
    if (K < 1 || K > n) {
        throw Error(ErrorKind::dimension_mismatch,
                    "K must be in [1, bank count]");
    }

    NullEnsembleSummary summary;
    summary.replica_count = R;
    summary.rank_count = K;
    summary.seed = seed;
    summary.rng_id = Rng::id;
    summary.component_mean = Eigen::MatrixXd::Zero(n, K - 1);
    summary.replica_component_counts.reserve(static_cast<std::size_t>(R));

    const std::vector<std::uint64_t> seeds = derive_seeds(seed, R);
    std::vector<std::vector<double>> lambdas;  // per replica, per rank
    lambdas.reserve(static_cast<std::size_t>(R));

    for (int r = 0; r < R; ++r) {
        RewiredReplica replica = [&] {
            try {
                return rewire(net, seeds[static_cast<std::size_t>(r)], budget);
            } catch (const Error& e) {
                throw Error(e.kind(), "replica " + std::to_string(r) + ": " +
                                          e.what());
            }
        }();
        const ShareMatrices shares(replica.network);
        const SpectralResult spec = fragility_spectrum(
            shares, shares.bank_strength(), K, options);
        lambdas.emplace_back(spec.normalized.data(),
                             spec.normalized.data() + K);
        summary.replica_component_counts.push_back(shares.component_count());
        for (int k = 1; k < K; ++k) {
            summary.component_mean.col(k - 1) +=
                spec.fragility.col(k).cwiseAbs();
        }
    }
    summary.component_mean /= static_cast<double>(R);

    summary.lambda_mean.assign(static_cast<std::size_t>(K), 0.0);
    summary.lambda_std.assign(static_cast<std::size_t>(K), 0.0);
    for (int k = 0; k < K; ++k) {
        double mean = 0.0;
        for (const auto& lam : lambdas) mean += lam[static_cast<std::size_t>(k)];
        mean /= static_cast<double>(R);
        double ss = 0.0;
        for (const auto& lam : lambdas) {
            const double d = lam[static_cast<std::size_t>(k)] - mean;
            ss += d * d;
        }
        summary.lambda_mean[static_cast<std::size_t>(k)] = mean;
        summary.lambda_std[static_cast<std::size_t>(k)] =
            std::sqrt(ss / static_cast<double>(R - 1));
    }
    return summary;
}

Significance significance(const SpectralResult& observed,
                          const NullEnsembleSummary& summary,
                          double threshold) {
    const int K = summary.rank_count;
    if (observed.rank_count() != K) {
        throw Error(ErrorKind::rank_mismatch,
                    "observed spectrum has " +
                        std::to_string(observed.rank_count()) +
                        " ranks, ensemble has " + std::to_string(K));
    }
    Significance sig;
    sig.threshold = threshold;
    sig.z.resize(static_cast<std::size_t>(K));
    sig.flagged.resize(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k) {
        const double obs = observed.normalized[k];
        const double mean = summary.lambda_mean[static_cast<std::size_t>(k)];
        const double sd = summary.lambda_std[static_cast<std::size_t>(k)];
        if (sd == 0.0) {
            const bool differs = obs != mean;
            sig.z[static_cast<std::size_t>(k)] =
                differs ? std::copysign(
                              std::numeric_limits<double>::infinity(),
                              obs - mean)
                        : 0.0;
            sig.flagged[static_cast<std::size_t>(k)] = differs;
        } else {
            const double z = (obs - mean) / sd;
            sig.z[static_cast<std::size_t>(k)] = z;
            sig.flagged[static_cast<std::size_t>(k)] = z > threshold;
        }
    }
    return sig;
}

}  // namespace fragnet
