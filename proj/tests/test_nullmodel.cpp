#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "fragnet/error.hpp"
#include "fragnet/matrices.hpp"
#include "fragnet/nullmodel.hpp"
#include "fragnet/rng.hpp"
#include "oracles.hpp"
#include "testutil.hpp"

using fragnet::BipartiteNetwork;
using fragnet::Error;
using fragnet::ShareMatrices;

namespace {

// Exact audit of the rewiring invariants against the base network.
void audit_replica(const BipartiteNetwork& base,
                   const BipartiteNetwork& replica) {
    REQUIRE(replica.bank_ids() == base.bank_ids());
    REQUIRE(replica.firm_ids() == base.firm_ids());
    REQUIRE(replica.edge_count() == base.edge_count());

    const auto ba = fragnet::aggregates(base);
    const auto ra = fragnet::aggregates(replica);
    CHECK(ra.bank_strength == ba.bank_strength);  // exact, zero tolerance
    CHECK(ra.bank_degree == ba.bank_degree);
    CHECK(ra.firm_degree == ba.firm_degree);

    // per-bank weight multisets
    std::map<int, std::multiset<double>> base_w, rep_w;
    for (const auto& e : base.edges()) base_w[e.bank].insert(e.weight);
    for (const auto& e : replica.edges()) rep_w[e.bank].insert(e.weight);
    CHECK(base_w == rep_w);

    // simplicity
    std::set<std::pair<int, int>> seen;
    for (const auto& e : replica.edges()) {
        CHECK(seen.insert({e.bank, e.firm}).second);
    }
}

std::string edge_fingerprint(const BipartiteNetwork& net) {
    std::ostringstream os;
    for (const auto& e : net.edges()) {
        os << e.bank << ":" << e.firm << ":" << e.weight << ";";
    }
    return os.str();
}

}  // namespace

TEST_CASE("single edge rewires to itself") {
    const auto net = testutil::make_net({{"b1", "f1", 7.0}});
    const auto rep = fragnet::rewire(net, 99);
    CHECK(edge_fingerprint(rep.network) == edge_fingerprint(net));
}

TEST_CASE("complete unit-weight graph is invariant under rewiring") {
    const auto net = testutil::make_net({{"b1", "f1", 1.0},
                                         {"b1", "f2", 1.0},
                                         {"b2", "f1", 1.0},
                                         {"b2", "f2", 1.0}});
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const auto rep = fragnet::rewire(net, seed);
        CHECK(edge_fingerprint(rep.network) == edge_fingerprint(net));
    }
}

TEST_CASE("replicas pass the exact invariant audit") {
    fragnet::Rng rng(401);
    testutil::RandomNetOptions opt;
    opt.max_banks = 30;
    opt.max_firms = 80;
    opt.integer_weights = true;
    for (int trial = 0; trial < 10; ++trial) {
        const auto net = testutil::random_network(rng, opt);
        for (std::uint64_t s = 0; s < 5; ++s) {
            const auto rep = fragnet::rewire(net, 1000 * trial + s);
            audit_replica(net, rep.network);
        }
    }
}

TEST_CASE("rewiring permutes the support of each A row") {
    fragnet::Rng rng(409);
    testutil::RandomNetOptions opt;
    opt.max_banks = 12;
    opt.max_firms = 30;
    const auto net = testutil::random_network(rng, opt);
    const auto rep = fragnet::rewire(net, 5);
    const ShareMatrices sa(net);
    const ShareMatrices sb(rep.network);
    // sorted nonzero A entries per bank are unchanged
    std::map<int, std::multiset<double>> rows_a, rows_b;
    for (const auto& e : sa.entries()) rows_a[e.bank].insert(e.a);
    for (const auto& e : sb.entries()) rows_b[e.bank].insert(e.a);
    CHECK(rows_a == rows_b);
}

TEST_CASE("rewire determinism and seed sensitivity") {
    fragnet::Rng rng(419);
    testutil::RandomNetOptions opt;
    opt.max_banks = 20;
    opt.max_firms = 40;
    const auto net = testutil::random_network(rng, opt);
    const auto a = fragnet::rewire(net, 42);
    const auto b = fragnet::rewire(net, 42);
    CHECK(edge_fingerprint(a.network) == edge_fingerprint(b.network));
    // a different seed should usually give a different matching
    const auto c = fragnet::rewire(net, 43);
    if (net.edge_count() > 8) {
        CHECK(edge_fingerprint(a.network) != edge_fingerprint(c.network));
    }
}

TEST_CASE("rewiring randomizes firm strengths but not the margins") {
    fragnet::Rng rng(421);
    testutil::RandomNetOptions opt;
    opt.max_banks = 25;
    opt.max_firms = 50;
    opt.min_edge_prob = 0.4;
    const auto net = testutil::random_network(rng, opt);
    const auto base_agg = fragnet::aggregates(net);
    bool any_changed = false;
    for (std::uint64_t s = 0; s < 4; ++s) {
        const auto rep = fragnet::rewire(net, s);
        const auto agg = fragnet::aggregates(rep.network);
        if (agg.firm_strength != base_agg.firm_strength) any_changed = true;
    }
    CHECK(any_changed);
}

TEST_CASE("ensemble summary") {
    SUBCASE("single-edge ensemble is deterministic with zero spread") {
        const auto net = testutil::make_net({{"b1", "f1", 7.0}});
        const auto sum = fragnet::ensemble_summary(net, 2, 1, 11);
        CHECK(sum.replica_count == 2);
        CHECK(sum.lambda_mean[0] == doctest::Approx(1.0));
        CHECK(sum.lambda_std[0] == 0.0);
        CHECK(sum.rng_id == std::string("xoshiro256**"));
    }
    SUBCASE("same seed twice gives identical summaries") {
        fragnet::Rng rng(431);
        testutil::RandomNetOptions opt;
        opt.max_banks = 15;
        opt.max_firms = 30;
        const auto net = testutil::random_network(rng, opt);
        const int K = std::min(4, net.bank_count());
        const auto a = fragnet::ensemble_summary(net, 6, K, 77);
        const auto b = fragnet::ensemble_summary(net, 6, K, 77);
        CHECK(a.lambda_mean == b.lambda_mean);
        CHECK(a.lambda_std == b.lambda_std);
        CHECK(a.component_mean == b.component_mean);
        CHECK(a.replica_component_counts == b.replica_component_counts);
    }
    SUBCASE("R below 2 is rejected") {
        const auto net = testutil::make_net({{"b1", "f1", 1.0}});
        CHECK_THROWS_AS(fragnet::ensemble_summary(net, 1, 1, 1), Error);
    }
}

TEST_CASE("planted two-block structure is detected, ranks stay ordered") {
    fragnet::Rng rng(443);
    const auto net = testutil::planted_two_block(rng);
    const ShareMatrices s(net);
    const int K = 6;
    const auto spec = fragnet::fragility_spectrum(s, s.bank_strength(), K);
    const auto sum = fragnet::ensemble_summary(net, 10, K, 20250809);
    const auto sig = fragnet::significance(spec, sum);
    REQUIRE(static_cast<int>(sig.z.size()) == K);
    CHECK(sig.z[1] > 3.0);
    CHECK(sig.flagged[1]);
}

TEST_CASE("significance") {
    const auto net = testutil::three_edge();
    const ShareMatrices s(net);
    const auto spec = fragnet::fragility_spectrum(s, s.bank_strength(), 2);

    SUBCASE("observed equal to the mean gives z = 0 and no flags") {
        fragnet::NullEnsembleSummary sum;
        sum.replica_count = 10;
        sum.rank_count = 2;
        sum.lambda_mean = {spec.normalized[0], spec.normalized[1]};
        sum.lambda_std = {0.01, 0.02};
        const auto sig = fragnet::significance(spec, sum);
        CHECK(sig.z[0] == 0.0);
        CHECK(sig.z[1] == 0.0);
        CHECK(!sig.flagged[0]);
        CHECK(!sig.flagged[1]);
    }
    SUBCASE("zero std flags only exact differences") {
        fragnet::NullEnsembleSummary sum;
        sum.replica_count = 10;
        sum.rank_count = 2;
        sum.lambda_mean = {spec.normalized[0], spec.normalized[1] + 0.1};
        sum.lambda_std = {0.0, 0.0};
        const auto sig = fragnet::significance(spec, sum);
        CHECK(!sig.flagged[0]);
        CHECK(sig.flagged[1]);
        CHECK(std::isinf(sig.z[1]));
        CHECK(sig.z[1] < 0.0);
    }
    SUBCASE("rank mismatch") {
        fragnet::NullEnsembleSummary sum;
        sum.rank_count = 5;
        sum.lambda_mean.assign(5, 0.0);
        sum.lambda_std.assign(5, 0.0);
        CHECK_THROWS_AS(fragnet::significance(spec, sum), Error);
    }
}
