#include "fragnet/temporal.hpp"

#include <algorithm>
#include <set>

#include "fragnet/error.hpp"
#include "fragnet/matrices.hpp"

namespace fragnet {

YearPanel load_panel(const std::vector<EdgeRow>& rows) {
    std::map<int, std::vector<CreditRecord>> by_year;
    YearPanel panel;
    std::set<std::string> seen;
    for (const auto& row : rows) {
        if (!row.year) {
            throw Error(ErrorKind::invalid_record,
                        "panel input requires a year column");
        }
        by_year[*row.year].push_back(row.record);
        if (seen.insert(row.record.bank_id).second) {
            panel.roster.push_back(row.record.bank_id);
        }
    }
    for (auto& [year, records] : by_year) {
        try {
            panel.snapshots.emplace(year,
                                    BipartiteNetwork::from_records(records));
        } catch (const Error& e) {
            throw Error(e.kind(), year, e.what());
        }
    }
    return panel;
}

namespace {

int validate_ranks(const YearPanel& panel, const std::vector<int>& ranks) {
    if (ranks.empty()) {
        throw Error(ErrorKind::invalid_argument, "no ranks requested");
    }
    for (int r : ranks) {
        if (r < 1) {
            throw Error(ErrorKind::invalid_argument, "ranks must be >= 1");
        }
    }
    if (panel.snapshots.empty()) {
        throw Error(ErrorKind::empty_network, "panel has no snapshots");
    }
    const int k_max = *std::max_element(ranks.begin(), ranks.end());
    for (const auto& [year, net] : panel.snapshots) {
        if (net.bank_count() < k_max) {
            throw Error(ErrorKind::insufficient_rank, year,
                        "snapshot has " + std::to_string(net.bank_count()) +
                            " banks, rank " + std::to_string(k_max) +
                            " requested");
        }
    }
    return k_max;
}

}  // namespace

std::vector<SeriesPoint> lambda_series(const YearPanel& panel,
                                       const std::vector<int>& ranks,
                                       const SolverOptions& options) {
    const int k_max = validate_ranks(panel, ranks);
    std::vector<SeriesPoint> series;
    series.reserve(panel.snapshots.size());
    for (const auto& [year, net] : panel.snapshots) {
        const ShareMatrices shares(net);
        const SpectralResult spec =
            fragility_spectrum(shares, shares.bank_strength(), k_max, options);
        SeriesPoint point;
        point.year = year;
        for (int r : ranks) {
            point.normalized.push_back(spec.normalized[r - 1]);
            point.sum += spec.normalized[r - 1];
        }
        series.push_back(std::move(point));
    }
    return series;
}

HeatmapMatrix heatmap(const YearPanel& panel, const std::vector<int>& ranks,
                      const SolverOptions& options) {
    const int k_max = validate_ranks(panel, ranks);
    HeatmapMatrix map;
    map.roster = panel.roster;
    for (const auto& [year, net] : panel.snapshots) {
        const ShareMatrices shares(net);
        const SpectralResult spec =
            fragility_spectrum(shares, shares.bank_strength(), k_max, options);
        std::vector<std::optional<double>> row(map.roster.size());
        for (std::size_t c = 0; c < map.roster.size(); ++c) {
            const int u = net.bank_index(map.roster[c]);
            if (u < 0) continue;  // absent bank: missing cell, never zero
            double mean = 0.0;
            for (int r : ranks) mean += std::abs(spec.fragility(u, r - 1));
            row[c] = mean / static_cast<double>(ranks.size());
        }
        map.years.push_back(year);
        map.cells.push_back(std::move(row));
    }
    return map;
}

}  // namespace fragnet
