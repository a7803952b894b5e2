#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fragnet/csv.hpp"
#include "fragnet/network.hpp"
#include "fragnet/spectral.hpp"

namespace fragnet {

// Yearly snapshots plus a global bank roster (first-appearance order) for
// cross-year alignment. A roster bank absent from a year is simply absent
// from that snapshot.
struct YearPanel {
    std::map<int, BipartiteNetwork> snapshots;
    std::vector<std::string> roster;
};

// Rows must all carry a year; build errors are rethrown tagged with it.
YearPanel load_panel(const std::vector<EdgeRow>& rows);

// Normalized eigenvalues at the requested ranks per year, and their sum.
struct SeriesPoint {
    int year = 0;
    std::vector<double> normalized;  // one per requested rank
    double sum = 0.0;
};

std::vector<SeriesPoint> lambda_series(const YearPanel& panel,
                                       const std::vector<int>& ranks = {2, 3},
                                       const SolverOptions& options = {});

// Heatmap of mean |x_u^(k)| over the requested ranks: rows are years,
// columns follow the roster; a cell is empty iff the bank is absent from
// that year.
struct HeatmapMatrix {
    std::vector<int> years;
    std::vector<std::string> roster;
    std::vector<std::vector<std::optional<double>>> cells;  // [year][bank]
};

HeatmapMatrix heatmap(const YearPanel& panel,
                      const std::vector<int>& ranks = {2, 3},
                      const SolverOptions& options = {});

}  // namespace fragnet
