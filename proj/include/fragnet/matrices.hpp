#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "fragnet/network.hpp"

namespace fragnet {

// Banks whose propagation matrix fits below this count are materialized
// densely; above it P is only applied as the operator x -> A(Bx).
inline constexpr int kDefaultDenseCap = 2048;

// Row-stochastic share matrices derived from a network:
//   A (n x m): lending shares, row sums 1
//   B (m x n): borrowing shares, row sums 1
//   P = AB   (n x n): bank-to-bank propagation, row-stochastic
// Stored edge-indexed; dense P only on demand. The bank-side component
// labels of the underlying graph ride along because the trivial eigenmode
// is constant per component.
class ShareMatrices {
  public:
    explicit ShareMatrices(const BipartiteNetwork& net);

    int bank_count() const { return n_; }
    int firm_count() const { return m_; }

    const std::vector<std::string>& bank_ids() const { return bank_ids_; }
    const std::vector<std::string>& firm_ids() const { return firm_ids_; }

    const Eigen::VectorXd& bank_strength() const { return bank_strength_; }
    const Eigen::VectorXd& firm_strength() const { return firm_strength_; }

    // tr P = sum over edges of A_e * B_e.
    double trace() const { return trace_; }

    int component_count() const { return component_count_; }
    const std::vector<int>& bank_component() const { return bank_component_; }

    // Sparse entries in canonical edge order.
    struct Entry {
        int bank;
        int firm;
        double a;  // lending share of the bank
        double b;  // borrowing share of the firm
    };
    const std::vector<Entry>& entries() const { return entries_; }

    // y = B x (firms from banks) and x = A y (banks from firms).
    Eigen::VectorXd apply_B(const Eigen::VectorXd& x) const;
    Eigen::VectorXd apply_A(const Eigen::VectorXd& y) const;
    // P x = A (B x), never materialized.
    Eigen::VectorXd apply_P(const Eigen::VectorXd& x) const;
    // S v where S = D^{1/2} P D^{-1/2}, D = diag(bank strengths). S is
    // symmetric positive semidefinite and similar to P.
    Eigen::VectorXd apply_S(const Eigen::VectorXd& v) const;

    Eigen::MatrixXd dense_P() const;  // n x n; caller checks the cap
    Eigen::MatrixXd dense_S() const;

    // Row of A for one bank as (firm_id, share) pairs; entries sum to 1.
    std::vector<std::pair<std::string, double>> lending_pattern(
        const std::string& bank_id) const;

  private:
    int n_ = 0;
    int m_ = 0;
    std::vector<std::string> bank_ids_;
    std::vector<std::string> firm_ids_;
    Eigen::VectorXd bank_strength_;
    Eigen::VectorXd firm_strength_;
    std::vector<Entry> entries_;
    std::vector<double> weights_;       // original edge weights
    std::vector<int> bank_offset_;      // CSR offsets into entries_ by bank
    double trace_ = 0.0;
    int component_count_ = 0;
    std::vector<int> bank_component_;
};

inline ShareMatrices share_matrices(const BipartiteNetwork& net) {
    return ShareMatrices(net);
}

}  // namespace fragnet
