#include "fragnet/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "fragnet/error.hpp"

namespace fragnet {

namespace {

// Lossless, locale-independent float formatting for CSV output.
std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

nlohmann::ordered_json ccdf_json(const Ccdf& c) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& [value, p] : c.points) arr.push_back({value, p});
    return arr;
}

}  // namespace

StatsReport compute_stats(const BipartiteNetwork& net) {
    const NodeAggregates agg = aggregates(net);
    std::vector<double> kb(agg.bank_degree.begin(), agg.bank_degree.end());
    std::vector<double> kf(agg.firm_degree.begin(), agg.firm_degree.end());

    StatsReport report;
    report.bank_strength = ccdf(agg.bank_strength);
    report.firm_strength = ccdf(agg.firm_strength);
    report.bank_degree = ccdf(kb);
    report.firm_degree = ccdf(kf);
    try {
        report.bank_strength_degree = kendall_tau(agg.bank_strength, kb);
    } catch (const Error&) {
    }
    try {
        report.firm_strength_degree = kendall_tau(agg.firm_strength, kf);
    } catch (const Error&) {
    }
    try {
        report.bank_degree_vs_strength = loglog_fit(agg.bank_strength, kb);
    } catch (const Error&) {
    }
    return report;
}

nlohmann::ordered_json spectrum_json(const BipartiteNetwork& net,
                                     const SpectralResult& spec,
                                     int component_count,
                                     const nlohmann::ordered_json& config) {
    nlohmann::ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["config"] = config;
    j["eigenvalues"] = std::vector<double>(
        spec.eigenvalues.data(), spec.eigenvalues.data() + spec.rank_count());
    j["normalized"] = std::vector<double>(
        spec.normalized.data(), spec.normalized.data() + spec.rank_count());
    auto vectors = nlohmann::ordered_json::object();
    for (int u = 0; u < net.bank_count(); ++u) {
        auto per_rank = nlohmann::ordered_json::array();
        for (int k = 0; k < spec.rank_count(); ++k) {
            per_rank.push_back(spec.fragility(u, k));
        }
        vectors[net.bank_ids()[static_cast<std::size_t>(u)]] = per_rank;
    }
    j["vectors"] = vectors;
    j["trace"] = spec.trace;
    j["components"] = component_count;
    return j;
}

nlohmann::ordered_json nullcheck_json(const BipartiteNetwork& net,
                                      const SpectralResult& observed,
                                      const NullEnsembleSummary& summary,
                                      const Significance& sig,
                                      const nlohmann::ordered_json& config) {
    nlohmann::ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["config"] = config;
    j["R"] = summary.replica_count;
    j["seed"] = summary.seed;
    j["rng"] = summary.rng_id;
    j["lambda_mean"] = summary.lambda_mean;
    j["lambda_std"] = summary.lambda_std;
    // infinities (zero ensemble std) serialize as null
    j["z"] = sig.z;
    j["flags"] = sig.flagged;
    auto component_mean = nlohmann::ordered_json::object();
    for (int u = 0; u < net.bank_count(); ++u) {
        auto per_rank = nlohmann::ordered_json::array();
        for (int k = 0; k + 1 < summary.rank_count; ++k) {
            per_rank.push_back(summary.component_mean(u, k));
        }
        component_mean[net.bank_ids()[static_cast<std::size_t>(u)]] = per_rank;
    }
    j["component_mean"] = component_mean;
    j["observed_normalized"] = std::vector<double>(
        observed.normalized.data(),
        observed.normalized.data() + observed.rank_count());
    j["replica_components"] = summary.replica_component_counts;
    return j;
}

nlohmann::ordered_json stats_json(const StatsReport& report,
                                  const nlohmann::ordered_json& config) {
    nlohmann::ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["config"] = config;
    j["ccdf"] = {{"bank_strength", ccdf_json(report.bank_strength)},
                 {"firm_strength", ccdf_json(report.firm_strength)},
                 {"bank_degree", ccdf_json(report.bank_degree)},
                 {"firm_degree", ccdf_json(report.firm_degree)}};
    auto kendall = nlohmann::ordered_json::object();
    for (const auto& [name, value] :
         {std::pair{"bank_strength_degree", report.bank_strength_degree},
          std::pair{"firm_strength_degree", report.firm_strength_degree}}) {
        if (value) {
            kendall[name] = {{"tau", value->tau},
                             {"sigma_multiples", value->sigma_multiples}};
        } else {
            kendall[name] = nullptr;
        }
    }
    j["kendall"] = kendall;
    if (report.bank_degree_vs_strength) {
        const auto& fit = *report.bank_degree_vs_strength;
        j["fit"] = {{"bank_degree_vs_strength",
                     {{"exponent", fit.exponent},
                      {"ci95", fit.ci95},
                      {"n_points", fit.n_points}}}};
    } else {
        j["fit"] = {{"bank_degree_vs_strength", nullptr}};
    }
    return j;
}

void write_stats_csv(std::ostream& out, const StatsReport& report,
                     const std::string& config_echo) {
    out << "# " << config_echo << "\n";
    out << "record,series,x,y\n";
    const std::pair<const char*, const Ccdf*> series[] = {
        {"bank_strength", &report.bank_strength},
        {"firm_strength", &report.firm_strength},
        {"bank_degree", &report.bank_degree},
        {"firm_degree", &report.firm_degree}};
    for (const auto& [name, c] : series) {
        for (const auto& [value, p] : c->points) {
            out << "ccdf," << name << "," << fmt(value) << "," << fmt(p)
                << "\n";
        }
    }
    for (const auto& [name, value] :
         {std::pair{"bank_strength_degree", report.bank_strength_degree},
          std::pair{"firm_strength_degree", report.firm_strength_degree}}) {
        out << "kendall," << name << ",";
        if (value) out << fmt(value->tau) << "," << fmt(value->sigma_multiples);
        else out << ",";
        out << "\n";
    }
    out << "fit,bank_degree_vs_strength,";
    if (report.bank_degree_vs_strength) {
        out << fmt(report.bank_degree_vs_strength->exponent) << ","
            << fmt(report.bank_degree_vs_strength->ci95);
    } else {
        out << ",";
    }
    out << "\n";
}

void write_series_csv(std::ostream& out,
                      const std::vector<SeriesPoint>& series,
                      const std::vector<int>& ranks,
                      const std::string& config_echo) {
    out << "# " << config_echo << "\n";
    out << "year";
    for (int r : ranks) out << ",lambda" << r;
    out << ",sum\n";
    for (const auto& point : series) {
        out << point.year;
        for (double v : point.normalized) out << "," << fmt(v);
        out << "," << fmt(point.sum) << "\n";
    }
}

void write_heatmap_csv(std::ostream& out, const HeatmapMatrix& map,
                       const std::string& config_echo) {
    out << "# " << config_echo << "\n";
    out << "year";
    for (const auto& id : map.roster) out << "," << id;
    out << "\n";
    for (std::size_t r = 0; r < map.years.size(); ++r) {
        out << map.years[r];
        for (const auto& cell : map.cells[r]) {
            out << ",";
            if (cell) out << fmt(*cell);
        }
        out << "\n";
    }
}

void write_matrices_csv(std::ostream& out, const ShareMatrices& shares,
                        int dense_cap, const std::string& config_echo) {
    out << "# " << config_echo << "\n";
    out << "matrix,row_id,col_id,value\n";
    const auto& banks = shares.bank_ids();
    const auto& firms = shares.firm_ids();
    for (const auto& e : shares.entries()) {
        out << "A," << banks[static_cast<std::size_t>(e.bank)] << ","
            << firms[static_cast<std::size_t>(e.firm)] << "," << fmt(e.a)
            << "\n";
    }
    for (const auto& e : shares.entries()) {
        out << "B," << firms[static_cast<std::size_t>(e.firm)] << ","
            << banks[static_cast<std::size_t>(e.bank)] << "," << fmt(e.b)
            << "\n";
    }
    if (shares.bank_count() <= dense_cap) {
        const Eigen::MatrixXd P = shares.dense_P();
        for (int u = 0; u < shares.bank_count(); ++u) {
            for (int v = 0; v < shares.bank_count(); ++v) {
                if (P(u, v) == 0.0) continue;
                out << "P," << banks[static_cast<std::size_t>(u)] << ","
                    << banks[static_cast<std::size_t>(v)] << ","
                    << fmt(P(u, v)) << "\n";
            }
        }
    }
}

}  // namespace fragnet
