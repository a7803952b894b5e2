#include <doctest.h>

#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "fragnet/cli.hpp"
#include "fragnet/csv.hpp"
#include "fragnet/error.hpp"

using fragnet::RunConfig;

namespace {

const std::string kThreeEdgeCsv = std::string(FRAGNET_DATA_DIR) + "/three_edge.csv";
const std::string kPanelCsv = std::string(FRAGNET_DATA_DIR) + "/panel_small.csv";

struct RunResult {
    int code = -1;
    std::string out;
    std::string diag;
};

RunResult run(RunConfig cfg) {
    std::ostringstream out, diag;
    RunResult r;
    r.code = fragnet::run(cfg, out, diag);
    r.out = out.str();
    r.diag = diag.str();
    return r;
}

}  // namespace

TEST_CASE("edge csv parsing") {
    SUBCASE("flexible column order and comments") {
        std::istringstream in(
            "# exported 2005-03-31\namount,firm_id,bank_id\n10,f1,b1\n-2,f2,b2\n");
        const auto rows = fragnet::read_edge_csv(in);
        REQUIRE(rows.size() == 2);
        CHECK(rows[0].record.bank_id == "b1");
        CHECK(rows[0].record.firm_id == "f1");
        CHECK(rows[0].record.amount == 10.0);
        CHECK(rows[1].record.amount == -2.0);
        CHECK(!rows[0].year.has_value());
    }
    SUBCASE("year column") {
        std::istringstream in("bank_id,firm_id,amount,year\nb1,f1,1,1999\n");
        const auto rows = fragnet::read_edge_csv(in);
        CHECK(rows[0].year == 1999);
    }
    SUBCASE("missing header columns") {
        std::istringstream in("bank,firm,amount\nb1,f1,1\n");
        CHECK_THROWS_AS(fragnet::read_edge_csv(in), fragnet::Error);
    }
    SUBCASE("bad amount names the line") {
        std::istringstream in("bank_id,firm_id,amount\nb1,f1,oops\n");
        try {
            fragnet::read_edge_csv(in);
            FAIL("expected an error");
        } catch (const fragnet::Error& e) {
            CHECK(std::string(e.what()).find("line 2") != std::string::npos);
        }
    }
    SUBCASE("empty input") {
        std::istringstream in("");
        CHECK_THROWS_AS(fragnet::read_edge_csv(in), fragnet::Error);
    }
}

TEST_CASE("alias application follows chains by effective year") {
    std::istringstream aliases_in(
        "old_id,new_id,effective_year\nb_old,b_mid,1995\nb_mid,b_new,2000\n");
    const auto aliases = fragnet::read_alias_csv(aliases_in);

    std::istringstream in(
        "bank_id,firm_id,amount,year\n"
        "b_old,f1,1,1990\nb_old,f1,1,1996\nb_old,f1,1,2003\n");
    auto rows = fragnet::read_edge_csv(in);
    fragnet::apply_aliases(rows, aliases);
    CHECK(rows[0].record.bank_id == "b_old");  // before any merger
    CHECK(rows[1].record.bank_id == "b_mid");  // first merger only
    CHECK(rows[2].record.bank_id == "b_new");  // full chain
}

TEST_CASE("spectrum command emits the documented schema") {
    RunConfig cfg;
    cfg.command = "spectrum";
    cfg.input_path = kThreeEdgeCsv;
    cfg.k = 3;  // more than available: padded per availability
    const auto r = run(cfg);
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["schema_version"] == 1);
    CHECK(j["config"]["command"] == "spectrum");
    REQUIRE(j["eigenvalues"].size() == 2);
    CHECK(j["eigenvalues"][0].get<double>() == doctest::Approx(1.0));
    CHECK(j["eigenvalues"][1].get<double>() == doctest::Approx(0.5));
    CHECK(j["trace"].get<double>() == doctest::Approx(1.5));
    CHECK(j["components"] == 1);
    CHECK(j["vectors"].contains("b1"));
    CHECK(j["vectors"]["b1"].size() == 2);
}

TEST_CASE("nullcheck is byte-identical across runs and carries the rng id") {
    RunConfig cfg;
    cfg.command = "nullcheck";
    cfg.input_path = kThreeEdgeCsv;
    cfg.k = 2;
    cfg.r = 10;
    cfg.seed = 42;
    const auto a = run(cfg);
    const auto b = run(cfg);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);

    const auto j = nlohmann::json::parse(a.out);
    CHECK(j["R"] == 10);
    CHECK(j["seed"] == 42);
    CHECK(j["rng"] == "xoshiro256**");
    CHECK(j["lambda_mean"].size() == 2);
    CHECK(j["lambda_std"].size() == 2);
    CHECK(j["z"].size() == 2);
    CHECK(j["flags"].size() == 2);
    CHECK(j["component_mean"]["b1"].size() == 1);
    CHECK(j["replica_components"].size() == 10);
}

TEST_CASE("stats command") {
    SUBCASE("json format, tau = 1 on a unit-weight network") {
        std::ofstream tmp("unit_net.csv");
        tmp << "bank_id,firm_id,amount\nb1,f1,1\nb1,f2,1\nb2,f2,1\nb3,f1,1\n"
               "b3,f2,1\nb3,f3,1\n";
        tmp.close();
        RunConfig cfg;
        cfg.command = "stats";
        cfg.input_path = "unit_net.csv";
        const auto r = run(cfg);
        REQUIRE(r.code == 0);
        const auto j = nlohmann::json::parse(r.out);
        CHECK(j["kendall"]["bank_strength_degree"]["tau"].get<double>() ==
              doctest::Approx(1.0));
        CHECK(j["ccdf"]["bank_strength"].size() > 0);
        CHECK(j["fit"].contains("bank_degree_vs_strength"));
    }
    SUBCASE("csv format starts with a config echo comment") {
        RunConfig cfg;
        cfg.command = "stats";
        cfg.input_path = kThreeEdgeCsv;
        cfg.format = "csv";
        const auto r = run(cfg);
        REQUIRE(r.code == 0);
        CHECK(r.out.rfind("# fragnet schema_version=1 command=stats", 0) == 0);
        CHECK(r.out.find("record,series,x,y") != std::string::npos);
        CHECK(r.out.find("ccdf,bank_strength,") != std::string::npos);
        CHECK(r.out.find("kendall,firm_strength_degree,") != std::string::npos);
    }
}

TEST_CASE("panel and heatmap commands") {
    SUBCASE("panel series csv") {
        RunConfig cfg;
        cfg.command = "panel";
        cfg.input_path = kPanelCsv;
        cfg.ranks = {2};
        const auto r = run(cfg);
        REQUIRE(r.code == 0);
        CHECK(r.out.find("year,lambda2,sum\n") != std::string::npos);
        CHECK(r.out.find("\n2001,") != std::string::npos);
        CHECK(r.out.find("\n2002,") != std::string::npos);
    }
    SUBCASE("heatmap csv has roster header and empty missing cells") {
        RunConfig cfg;
        cfg.command = "heatmap";
        cfg.input_path = kPanelCsv;
        cfg.ranks = {2};
        const auto r = run(cfg);
        REQUIRE(r.code == 0);
        CHECK(r.out.find("year,b1,b2,b3\n") != std::string::npos);
        // b3 absent in 2001 -> trailing empty field
        CHECK(r.out.find("\n2001,") != std::string::npos);
        std::istringstream lines(r.out);
        std::string line;
        bool found = false;
        while (std::getline(lines, line)) {
            if (line.rfind("2001,", 0) == 0) {
                CHECK(line.back() == ',');  // missing b3 cell
                found = true;
            }
        }
        CHECK(found);
    }
    SUBCASE("panel on a single-rank snapshot fails with exit 1") {
        std::ofstream tmp("one_bank.csv");
        tmp << "year,bank_id,firm_id,amount\n2001,b1,f1,1\n";
        tmp.close();
        RunConfig cfg;
        cfg.command = "panel";
        cfg.input_path = "one_bank.csv";
        const auto r = run(cfg);
        CHECK(r.code == 1);
        CHECK(r.diag.find("2001") != std::string::npos);
    }
}

TEST_CASE("export-matrices dumps coordinate triples") {
    RunConfig cfg;
    cfg.command = "export-matrices";
    cfg.input_path = kThreeEdgeCsv;
    const auto r = run(cfg);
    REQUIRE(r.code == 0);
    CHECK(r.out.find("matrix,row_id,col_id,value\n") != std::string::npos);
    CHECK(r.out.find("A,b1,f1,0.75") != std::string::npos);
    CHECK(r.out.find("B,f2,b2,0.6666666") != std::string::npos);
    CHECK(r.out.find("P,b1,b1,0.8333333") != std::string::npos);
}

TEST_CASE("validation and error mapping") {
    SUBCASE("unknown command") {
        RunConfig cfg;
        cfg.command = "frobnicate";
        cfg.input_path = kThreeEdgeCsv;
        CHECK(run(cfg).code == 1);
    }
    SUBCASE("missing input file") {
        RunConfig cfg;
        cfg.command = "spectrum";
        cfg.input_path = "no_such_file.csv";
        const auto r = run(cfg);
        CHECK(r.code == 1);
        CHECK(r.diag.find("no_such_file.csv") != std::string::npos);
    }
    SUBCASE("format not supported by command") {
        RunConfig cfg;
        cfg.command = "spectrum";
        cfg.input_path = kThreeEdgeCsv;
        cfg.format = "csv";
        CHECK(run(cfg).code == 1);
    }
    SUBCASE("r below 2 for nullcheck") {
        RunConfig cfg;
        cfg.command = "nullcheck";
        cfg.input_path = kThreeEdgeCsv;
        cfg.r = 1;
        CHECK(run(cfg).code == 1);
    }
    SUBCASE("multi-year input rejected for single-snapshot commands") {
        RunConfig cfg;
        cfg.command = "spectrum";
        cfg.input_path = kPanelCsv;
        const auto r = run(cfg);
        CHECK(r.code == 1);
        CHECK(r.diag.find("panel") != std::string::npos);
    }
}

TEST_CASE("output goes to a file when requested") {
    RunConfig cfg;
    cfg.command = "spectrum";
    cfg.input_path = kThreeEdgeCsv;
    cfg.output_path = "spectrum_out.json";
    const auto r = run(cfg);
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in("spectrum_out.json");
    REQUIRE(in.good());
    nlohmann::json j;
    in >> j;
    CHECK(j["trace"].get<double>() == doctest::Approx(1.5));
}
