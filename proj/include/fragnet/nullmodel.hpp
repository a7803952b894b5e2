#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "fragnet/network.hpp"
#include "fragnet/spectral.hpp"

namespace fragnet {

// A degree/weight-preserving random replica: every bank keeps its strength,
// degree and weight multiset; firms keep their degrees while their
// strengths randomize.
struct RewiredReplica {
    BipartiteNetwork network;
    std::uint64_t seed = 0;
    int attempts = 0;  // whole-matching restarts used before success
};

struct RewireBudget {
    int local_retries = 100;  // per-stub redraws before a restart
    int restarts = 1000;      // whole-matching attempts before giving up
};

RewiredReplica rewire(const BipartiteNetwork& net, std::uint64_t seed,
                      const RewireBudget& budget = {});

// Per-rank statistics of normalized eigenvalues over R replicas, plus the
// per-bank mean |x_u^(k)| profile for the non-trivial ranks 2..K.
struct NullEnsembleSummary {
    int replica_count = 0;   // R
    int rank_count = 0;      // K
    std::uint64_t seed = 0;  // master seed; replica seeds derive from it
    std::string rng_id;
    std::vector<double> lambda_mean;  // per rank 1..K
    std::vector<double> lambda_std;   // sample std, per rank
    Eigen::MatrixXd component_mean;   // n x (K-1), columns are ranks 2..K
    std::vector<int> replica_component_counts;
};

NullEnsembleSummary ensemble_summary(const BipartiteNetwork& net, int R,
                                     int K, std::uint64_t seed,
                                     const SolverOptions& options = {},
                                     const RewireBudget& budget = {});

// z_k = (observed lambda~_k - mean_k) / std_k and the advisory flags.
// With a zero ensemble std the rank is flagged iff observed != mean.
struct Significance {
    std::vector<double> z;     // +-inf when std is 0 and values differ
    std::vector<bool> flagged;
    double threshold = 2.0;
};

Significance significance(const SpectralResult& observed,
                          const NullEnsembleSummary& summary,
                          double threshold = 2.0);

}  // namespace fragnet
