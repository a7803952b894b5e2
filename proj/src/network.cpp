#include "fragnet/network.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "fragnet/error.hpp"

namespace fragnet {

BipartiteNetwork BipartiteNetwork::from_records(
    const std::vector<CreditRecord>& records) {
    BipartiteNetwork net;
    std::map<std::pair<int, int>, double> summed;

    for (const auto& rec : records) {
        if (rec.bank_id.empty() || rec.firm_id.empty()) {
            throw Error(ErrorKind::invalid_record,
                        "record with empty bank or firm id");
        }
        if (!std::isfinite(rec.amount)) {
            throw Error(ErrorKind::invalid_record,
                        "non-finite amount on record (" + rec.bank_id + ", " +
                            rec.firm_id + ")");
        }
        auto [bit, bnew] = net.bank_index_.try_emplace(
            rec.bank_id, static_cast<int>(net.bank_ids_.size()));
        if (bnew) net.bank_ids_.push_back(rec.bank_id);
        auto [fit, fnew] = net.firm_index_.try_emplace(
            rec.firm_id, static_cast<int>(net.firm_ids_.size()));
        if (fnew) net.firm_ids_.push_back(rec.firm_id);
        summed[{bit->second, fit->second}] += rec.amount;
    }

    // Split rows per relationship are legal (short/long-term loans), but the
    // summed exposure must be a positive credit.
    for (const auto& [key, amount] : summed) {
        if (!(amount > 0.0)) {
            throw Error(ErrorKind::non_positive_weight,
                        "non-positive total weight " + std::to_string(amount) +
                            " for (" + net.bank_ids_[key.first] + ", " +
                            net.firm_ids_[key.second] + ")");
        }
        net.edges_.push_back({key.first, key.second, amount});
    }
    if (net.edges_.empty()) {
        throw Error(ErrorKind::empty_network, "no valid edges in input");
    }
    return net;
}

BipartiteNetwork::BipartiteNetwork(std::vector<std::string> bank_ids,
                                   std::vector<std::string> firm_ids,
                                   std::vector<Edge> edges)
    : bank_ids_(std::move(bank_ids)),
      firm_ids_(std::move(firm_ids)),
      edges_(std::move(edges)) {
    if (edges_.empty()) {
        throw Error(ErrorKind::empty_network, "no edges supplied");
    }
    std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
        return std::pair(a.bank, a.firm) < std::pair(b.bank, b.firm);
    });
    std::vector<bool> bank_seen(bank_ids_.size(), false);
    std::vector<bool> firm_seen(firm_ids_.size(), false);
    for (std::size_t k = 0; k < edges_.size(); ++k) {
        const Edge& e = edges_[k];
        if (e.bank < 0 || e.bank >= bank_count() || e.firm < 0 ||
            e.firm >= firm_count()) {
            throw Error(ErrorKind::invalid_record, "edge index out of range");
        }
        if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
            throw Error(ErrorKind::non_positive_weight,
                        "non-positive edge weight");
        }
        if (k > 0 && edges_[k - 1].bank == e.bank &&
            edges_[k - 1].firm == e.firm) {
            throw Error(ErrorKind::invalid_record,
                        "duplicate edge (" + bank_ids_[e.bank] + ", " +
                            firm_ids_[e.firm] + ")");
        }
        bank_seen[static_cast<std::size_t>(e.bank)] = true;
        firm_seen[static_cast<std::size_t>(e.firm)] = true;
    }
    for (std::size_t u = 0; u < bank_seen.size(); ++u) {
        if (!bank_seen[u]) {
            throw Error(ErrorKind::invalid_record,
                        "isolated bank in registry: " + bank_ids_[u]);
        }
    }
    for (std::size_t i = 0; i < firm_seen.size(); ++i) {
        if (!firm_seen[i]) {
            throw Error(ErrorKind::invalid_record,
                        "isolated firm in registry: " + firm_ids_[i]);
        }
    }
    index_ids();
}

void BipartiteNetwork::index_ids() {
    bank_index_.clear();
    firm_index_.clear();
    for (int u = 0; u < bank_count(); ++u) bank_index_[bank_ids_[u]] = u;
    for (int i = 0; i < firm_count(); ++i) firm_index_[firm_ids_[i]] = i;
    if (bank_index_.size() != bank_ids_.size() ||
        firm_index_.size() != firm_ids_.size()) {
        throw Error(ErrorKind::invalid_record, "duplicate id in registry");
    }
}

int BipartiteNetwork::bank_index(const std::string& id) const {
    auto it = bank_index_.find(id);
    return it == bank_index_.end() ? -1 : it->second;
}

int BipartiteNetwork::firm_index(const std::string& id) const {
    auto it = firm_index_.find(id);
    return it == firm_index_.end() ? -1 : it->second;
}

NodeAggregates aggregates(const BipartiteNetwork& net) {
    NodeAggregates agg;
    agg.bank_strength.assign(static_cast<std::size_t>(net.bank_count()), 0.0);
    agg.firm_strength.assign(static_cast<std::size_t>(net.firm_count()), 0.0);
    agg.bank_degree.assign(static_cast<std::size_t>(net.bank_count()), 0);
    agg.firm_degree.assign(static_cast<std::size_t>(net.firm_count()), 0);
    for (const auto& e : net.edges()) {
        agg.bank_strength[static_cast<std::size_t>(e.bank)] += e.weight;
        agg.firm_strength[static_cast<std::size_t>(e.firm)] += e.weight;
        agg.bank_degree[static_cast<std::size_t>(e.bank)] += 1;
        agg.firm_degree[static_cast<std::size_t>(e.firm)] += 1;
        agg.total_weight += e.weight;
    }
    return agg;
}

Components connected_components(const BipartiteNetwork& net) {
    const int n = net.bank_count();
    const int m = net.firm_count();
    Components comp;
    comp.bank_component.assign(static_cast<std::size_t>(n), -1);
    comp.firm_component.assign(static_cast<std::size_t>(m), -1);

    // Adjacency: banks 0..n-1, firms n..n+m-1.
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n + m));
    for (const auto& e : net.edges()) {
        adj[static_cast<std::size_t>(e.bank)].push_back(n + e.firm);
        adj[static_cast<std::size_t>(n + e.firm)].push_back(e.bank);
    }

    std::vector<int> label(static_cast<std::size_t>(n + m), -1);
    std::vector<int> stack;
    int next = 0;
    for (int s = 0; s < n + m; ++s) {
        if (label[static_cast<std::size_t>(s)] != -1) continue;
        label[static_cast<std::size_t>(s)] = next;
        stack.push_back(s);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : adj[static_cast<std::size_t>(v)]) {
                if (label[static_cast<std::size_t>(w)] == -1) {
                    label[static_cast<std::size_t>(w)] = next;
                    stack.push_back(w);
                }
            }
        }
        ++next;
    }
    comp.count = next;
    for (int u = 0; u < n; ++u)
        comp.bank_component[static_cast<std::size_t>(u)] =
            label[static_cast<std::size_t>(u)];
    for (int i = 0; i < m; ++i)
        comp.firm_component[static_cast<std::size_t>(i)] =
            label[static_cast<std::size_t>(n + i)];
    return comp;
}

}  // namespace fragnet
