#include "fragnet/cli.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "fragnet/csv.hpp"
#include "fragnet/error.hpp"
#include "fragnet/matrices.hpp"
#include "fragnet/network.hpp"
#include "fragnet/nullmodel.hpp"
#include "fragnet/report.hpp"
#include "fragnet/rng.hpp"
#include "fragnet/spectral.hpp"
#include "fragnet/temporal.hpp"

namespace fragnet {

namespace {

const std::set<std::string> kCommands = {
    "stats", "spectrum", "nullcheck", "panel", "heatmap", "export-matrices"};

std::string default_format(const std::string& command) {
    if (command == "stats") return "json";
    if (command == "spectrum" || command == "nullcheck") return "json";
    return "csv";
}

void validate(const RunConfig& cfg, const std::string& format) {
    if (!kCommands.count(cfg.command)) {
        throw Error(ErrorKind::invalid_argument,
                    "unknown command: " + cfg.command);
    }
    if (cfg.input_path.empty()) {
        throw Error(ErrorKind::invalid_argument, "--input is required");
    }
    if (cfg.k < 1) {
        throw Error(ErrorKind::invalid_argument, "--k must be >= 1");
    }
    if (cfg.command == "nullcheck" && cfg.r < 2) {
        throw Error(ErrorKind::invalid_argument,
                    "--r must be >= 2 for nullcheck");
    }
    const bool json_ok = cfg.command == "stats" ||
                         cfg.command == "spectrum" ||
                         cfg.command == "nullcheck";
    const bool csv_ok = cfg.command == "stats" || cfg.command == "panel" ||
                        cfg.command == "heatmap" ||
                        cfg.command == "export-matrices";
    if ((format == "json" && !json_ok) || (format == "csv" && !csv_ok)) {
        throw Error(ErrorKind::invalid_argument,
                    "format '" + format + "' not supported by " + cfg.command);
    }
    if (format != "json" && format != "csv") {
        throw Error(ErrorKind::invalid_argument,
                    "unknown format: " + format);
    }
}

nlohmann::ordered_json config_json(const RunConfig& cfg,
                                   const std::string& format) {
    nlohmann::ordered_json j;
    j["command"] = cfg.command;
    j["input"] = cfg.input_path;
    j["k"] = cfg.k;
    j["r"] = cfg.r;
    j["seed"] = cfg.seed;
    j["threshold"] = cfg.threshold;
    j["format"] = format;
    if (!cfg.alias_file.empty()) j["alias_file"] = cfg.alias_file;
    if (cfg.command == "panel" || cfg.command == "heatmap") {
        j["ranks"] = cfg.ranks;
    }
    return j;
}

std::string config_echo(const RunConfig& cfg, const std::string& format) {
    std::ostringstream os;
    os << "fragnet schema_version=" << kSchemaVersion
       << " command=" << cfg.command << " input=" << cfg.input_path
       << " k=" << cfg.k << " r=" << cfg.r << " seed=" << cfg.seed
       << " threshold=" << cfg.threshold << " format=" << format;
    if (!cfg.alias_file.empty()) os << " alias_file=" << cfg.alias_file;
    if (cfg.command == "panel" || cfg.command == "heatmap") {
        os << " ranks=";
        for (std::size_t i = 0; i < cfg.ranks.size(); ++i) {
            os << (i ? "," : "") << cfg.ranks[i];
        }
    }
    return os.str();
}

std::vector<EdgeRow> load_rows(const RunConfig& cfg) {
    auto rows = read_edge_csv_file(cfg.input_path);
    if (!cfg.alias_file.empty()) {
        apply_aliases(rows, read_alias_csv_file(cfg.alias_file));
    }
    return rows;
}

// Single-snapshot commands accept a year column only when all rows agree.
BipartiteNetwork single_network(const std::vector<EdgeRow>& rows) {
    std::set<int> years;
    std::vector<CreditRecord> records;
    records.reserve(rows.size());
    for (const auto& row : rows) {
        if (row.year) years.insert(*row.year);
        records.push_back(row.record);
    }
    if (years.size() > 1) {
        throw Error(ErrorKind::invalid_argument,
                    "input spans " + std::to_string(years.size()) +
                        " years; use the panel or heatmap command");
    }
    return BipartiteNetwork::from_records(records);
}

void dispatch(const RunConfig& cfg, const std::string& format,
              std::ostream& out, std::ostream& diag) {
    const auto config = config_json(cfg, format);
    const auto echo = config_echo(cfg, format);

    if (cfg.command == "stats") {
        const auto net = single_network(load_rows(cfg));
        const StatsReport report = compute_stats(net);
        if (format == "json") out << stats_json(report, config).dump(2) << "\n";
        else write_stats_csv(out, report, echo);
        return;
    }
    if (cfg.command == "spectrum") {
        const auto net = single_network(load_rows(cfg));
        const ShareMatrices shares(net);
        const int k_eff = std::min(cfg.k, net.bank_count());
        const SpectralResult spec =
            fragility_spectrum(shares, shares.bank_strength(), k_eff);
        out << spectrum_json(net, spec, shares.component_count(), config)
                   .dump(2)
            << "\n";
        return;
    }
    if (cfg.command == "nullcheck") {
        const auto net = single_network(load_rows(cfg));
        const ShareMatrices shares(net);
        const int k_eff = std::min(cfg.k, net.bank_count());
        const SpectralResult spec =
            fragility_spectrum(shares, shares.bank_strength(), k_eff);
        const NullEnsembleSummary summary =
            ensemble_summary(net, cfg.r, k_eff, cfg.seed);
        const Significance sig = significance(spec, summary, cfg.threshold);
        out << nullcheck_json(net, spec, summary, sig, config).dump(2) << "\n";
        return;
    }
    if (cfg.command == "export-matrices") {
        const auto net = single_network(load_rows(cfg));
        const ShareMatrices shares(net);
        if (net.bank_count() > kDefaultDenseCap) {
            diag << "note: P omitted, bank count " << net.bank_count()
                 << " above dense cap " << kDefaultDenseCap << "\n";
        }
        write_matrices_csv(out, shares, kDefaultDenseCap, echo);
        return;
    }
    // panel / heatmap
    const YearPanel panel = load_panel(load_rows(cfg));
    if (cfg.command == "panel") {
        write_series_csv(out, lambda_series(panel, cfg.ranks), cfg.ranks, echo);
    } else {
        write_heatmap_csv(out, heatmap(panel, cfg.ranks), echo);
    }
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& diag) {
    try {
        const std::string format =
            cfg.format.empty() ? default_format(cfg.command) : cfg.format;
        validate(cfg, format);
        if (cfg.output_path.empty()) {
            dispatch(cfg, format, out, diag);
        } else {
            std::ofstream file(cfg.output_path);
            if (!file) {
                throw Error(ErrorKind::io,
                            "cannot open output file: " + cfg.output_path);
            }
            dispatch(cfg, format, file, diag);
        }
        return 0;
    } catch (const Error& e) {
        diag << "error: " << e.what() << "\n";
        return e.is_operational() ? 2 : 1;
    } catch (const std::exception& e) {
        diag << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace fragnet
