#include "fragnet/matrices.hpp"

#include <cmath>

#include "fragnet/error.hpp"

namespace fragnet {

ShareMatrices::ShareMatrices(const BipartiteNetwork& net)
    : n_(net.bank_count()),
      m_(net.firm_count()),
      bank_ids_(net.bank_ids()),
      firm_ids_(net.firm_ids()) {
    const NodeAggregates agg = aggregates(net);
    bank_strength_ = Eigen::Map<const Eigen::VectorXd>(
        agg.bank_strength.data(), static_cast<Eigen::Index>(n_));
    firm_strength_ = Eigen::Map<const Eigen::VectorXd>(
        agg.firm_strength.data(), static_cast<Eigen::Index>(m_));

    entries_.reserve(net.edges().size());
    weights_.reserve(net.edges().size());
    bank_offset_.assign(static_cast<std::size_t>(n_) + 1, 0);
    for (const auto& e : net.edges()) {
        Entry entry;
        entry.bank = e.bank;
        entry.firm = e.firm;
        entry.a = e.weight / bank_strength_[e.bank];
        entry.b = e.weight / firm_strength_[e.firm];
        trace_ += entry.a * entry.b;
        entries_.push_back(entry);
        weights_.push_back(e.weight);
        ++bank_offset_[static_cast<std::size_t>(e.bank) + 1];
    }
    for (int u = 0; u < n_; ++u) {
        bank_offset_[static_cast<std::size_t>(u) + 1] +=
            bank_offset_[static_cast<std::size_t>(u)];
    }

    const Components comp = connected_components(net);
    component_count_ = comp.count;
    bank_component_ = comp.bank_component;
}

Eigen::VectorXd ShareMatrices::apply_B(const Eigen::VectorXd& x) const {
    if (x.size() != n_) {
        throw Error(ErrorKind::dimension_mismatch,
                    "expected bank vector of length " + std::to_string(n_));
    }
    Eigen::VectorXd y = Eigen::VectorXd::Zero(m_);
    for (const auto& e : entries_) y[e.firm] += e.b * x[e.bank];
    return y;
}

Eigen::VectorXd ShareMatrices::apply_A(const Eigen::VectorXd& y) const {
    if (y.size() != m_) {
        throw Error(ErrorKind::dimension_mismatch,
                    "expected firm vector of length " + std::to_string(m_));
    }
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n_);
    for (const auto& e : entries_) x[e.bank] += e.a * y[e.firm];
    return x;
}

Eigen::VectorXd ShareMatrices::apply_P(const Eigen::VectorXd& x) const {
    return apply_A(apply_B(x));
}

Eigen::VectorXd ShareMatrices::apply_S(const Eigen::VectorXd& v) const {
    if (v.size() != n_) {
        throw Error(ErrorKind::dimension_mismatch,
                    "expected bank vector of length " + std::to_string(n_));
    }
    // S = G G^T with G_{ui} = w_{ui} / sqrt(w_u w_i).
    Eigen::VectorXd t = Eigen::VectorXd::Zero(m_);
    for (std::size_t k = 0; k < entries_.size(); ++k) {
        const Entry& e = entries_[k];
        const double g = weights_[k] / std::sqrt(bank_strength_[e.bank] *
                                                 firm_strength_[e.firm]);
        t[e.firm] += g * v[e.bank];
    }
    Eigen::VectorXd out = Eigen::VectorXd::Zero(n_);
    for (std::size_t k = 0; k < entries_.size(); ++k) {
        const Entry& e = entries_[k];
        const double g = weights_[k] / std::sqrt(bank_strength_[e.bank] *
                                                 firm_strength_[e.firm]);
        out[e.bank] += g * t[e.firm];
    }
    return out;
}

Eigen::MatrixXd ShareMatrices::dense_P() const {
    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n_, n_);
    // P_{uv} = sum_i A_{ui} B_{iv}: accumulate per firm.
    std::vector<std::vector<std::pair<int, double>>> a_by_firm(
        static_cast<std::size_t>(m_));
    std::vector<std::vector<std::pair<int, double>>> b_by_firm(
        static_cast<std::size_t>(m_));
    for (const auto& e : entries_) {
        a_by_firm[static_cast<std::size_t>(e.firm)].push_back({e.bank, e.a});
        b_by_firm[static_cast<std::size_t>(e.firm)].push_back({e.bank, e.b});
    }
    for (int i = 0; i < m_; ++i) {
        for (const auto& [u, a] : a_by_firm[static_cast<std::size_t>(i)]) {
            for (const auto& [v, b] : b_by_firm[static_cast<std::size_t>(i)]) {
                P(u, v) += a * b;
            }
        }
    }
    return P;
}

Eigen::MatrixXd ShareMatrices::dense_S() const {
    Eigen::MatrixXd S = Eigen::MatrixXd::Zero(n_, n_);
    std::vector<std::vector<std::pair<int, double>>> g_by_firm(
        static_cast<std::size_t>(m_));
    for (std::size_t k = 0; k < entries_.size(); ++k) {
        const Entry& e = entries_[k];
        const double g = weights_[k] / std::sqrt(bank_strength_[e.bank] *
                                                 firm_strength_[e.firm]);
        g_by_firm[static_cast<std::size_t>(e.firm)].push_back({e.bank, g});
    }
    for (int i = 0; i < m_; ++i) {
        const auto& col = g_by_firm[static_cast<std::size_t>(i)];
        for (const auto& [u, gu] : col) {
            for (const auto& [v, gv] : col) S(u, v) += gu * gv;
        }
    }
    return S;
}

std::vector<std::pair<std::string, double>> ShareMatrices::lending_pattern(
    const std::string& bank_id) const {
    int u = -1;
    for (int c = 0; c < n_; ++c) {
        if (bank_ids_[static_cast<std::size_t>(c)] == bank_id) {
            u = c;
            break;
        }
    }
    if (u < 0) {
        throw Error(ErrorKind::unknown_bank, "unknown bank id: " + bank_id);
    }
    std::vector<std::pair<std::string, double>> pattern;
    for (int k = bank_offset_[static_cast<std::size_t>(u)];
         k < bank_offset_[static_cast<std::size_t>(u) + 1]; ++k) {
        const Entry& e = entries_[static_cast<std::size_t>(k)];
        pattern.emplace_back(firm_ids_[static_cast<std::size_t>(e.firm)], e.a);
    }
    return pattern;
}

}  // namespace fragnet
