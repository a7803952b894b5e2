#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "fragnet/matrices.hpp"
#include "fragnet/network.hpp"
#include "fragnet/nullmodel.hpp"
#include "fragnet/spectral.hpp"
#include "fragnet/stats.hpp"
#include "fragnet/temporal.hpp"

namespace fragnet {

inline constexpr int kSchemaVersion = 1;

// Battery of distribution statistics for one snapshot: the four node-level
// CCDFs, the strength/degree rank correlations, and the bank-side
// degree-vs-strength exponent fit. Correlation and fit entries are empty
// when undefined for the input (e.g. constant degrees).
struct StatsReport {
    Ccdf bank_strength;
    Ccdf firm_strength;
    Ccdf bank_degree;
    Ccdf firm_degree;
    std::optional<KendallResult> bank_strength_degree;
    std::optional<KendallResult> firm_strength_degree;
    std::optional<TailFit> bank_degree_vs_strength;
};

StatsReport compute_stats(const BipartiteNetwork& net);

// JSON emitters. `config` is echoed verbatim into the output.
nlohmann::ordered_json spectrum_json(const BipartiteNetwork& net,
                                     const SpectralResult& spec,
                                     int component_count,
                                     const nlohmann::ordered_json& config);

nlohmann::ordered_json nullcheck_json(const BipartiteNetwork& net,
                                      const SpectralResult& observed,
                                      const NullEnsembleSummary& summary,
                                      const Significance& sig,
                                      const nlohmann::ordered_json& config);

nlohmann::ordered_json stats_json(const StatsReport& report,
                                  const nlohmann::ordered_json& config);

// CSV emitters; `config_echo` becomes a leading '#' comment line.
void write_stats_csv(std::ostream& out, const StatsReport& report,
                     const std::string& config_echo);

void write_series_csv(std::ostream& out,
                      const std::vector<SeriesPoint>& series,
                      const std::vector<int>& ranks,
                      const std::string& config_echo);

void write_heatmap_csv(std::ostream& out, const HeatmapMatrix& map,
                       const std::string& config_echo);

// Coordinate dump `matrix,row_id,col_id,value` of A, B and (when the bank
// count is at most dense_cap) P.
void write_matrices_csv(std::ostream& out, const ShareMatrices& shares,
                        int dense_cap, const std::string& config_echo);

}  // namespace fragnet
