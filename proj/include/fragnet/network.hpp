#pragma once

#include <string>
#include <unordered_map>
#include <vector>

namespace fragnet {

// One input record: a loan of `amount` from `bank_id` to `firm_id`.
struct CreditRecord {
    std::string bank_id;
    std::string firm_id;
    double amount = 0.0;
};

// Weighted bipartite credit graph. Immutable after construction; node
// indices are assigned in first-appearance order and are internal only --
// anything leaving the library is keyed by id string.
class BipartiteNetwork {
  public:
    struct Edge {
        int bank;       // index into bank_ids()
        int firm;       // index into firm_ids()
        double weight;  // > 0
    };

    // Builds from raw records. Duplicate (bank, firm) records are summed
    // into one edge; a summed amount <= 0 is rejected.
    static BipartiteNetwork from_records(const std::vector<CreditRecord>& records);

    // Builds from pre-validated registries and edges, e.g. a rewired
    // replica that must keep the original node order. Edges are sorted
    // canonically; invariants (positive weights, simplicity, no isolated
    // registry entries) are enforced.
    BipartiteNetwork(std::vector<std::string> bank_ids,
                     std::vector<std::string> firm_ids,
                     std::vector<Edge> edges);

    int bank_count() const { return static_cast<int>(bank_ids_.size()); }
    int firm_count() const { return static_cast<int>(firm_ids_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    const std::vector<std::string>& bank_ids() const { return bank_ids_; }
    const std::vector<std::string>& firm_ids() const { return firm_ids_; }

    // Edges in canonical order: sorted by (bank, firm).
    const std::vector<Edge>& edges() const { return edges_; }

    // -1 when the id is unknown.
    int bank_index(const std::string& id) const;
    int firm_index(const std::string& id) const;

  private:
    BipartiteNetwork() = default;
    void index_ids();

    std::vector<std::string> bank_ids_;
    std::vector<std::string> firm_ids_;
    std::vector<Edge> edges_;
    std::unordered_map<std::string, int> bank_index_;
    std::unordered_map<std::string, int> firm_index_;
};

// Per-node strengths and degrees.
//   bank_strength[u] = sum of weights on edges at bank u
//   firm_strength[i] = sum of weights on edges at firm i
// Total lending equals total borrowing by construction.
struct NodeAggregates {
    std::vector<double> bank_strength;
    std::vector<double> firm_strength;
    std::vector<int> bank_degree;
    std::vector<int> firm_degree;
    double total_weight = 0.0;
};

NodeAggregates aggregates(const BipartiteNetwork& net);

// Connected components over the union of bank and firm nodes.
struct Components {
    int count = 0;
    std::vector<int> bank_component;  // component id per bank, in [0, count)
    std::vector<int> firm_component;  // component id per firm
};

Components connected_components(const BipartiteNetwork& net);

}  // namespace fragnet
