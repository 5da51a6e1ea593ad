#include "qadapt/report.hpp"

#include <doctest.h>
#include <fmt/format.h>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace qadapt;

namespace {

CliOptions parse(std::initializer_list<std::string> flags) {
    const std::vector<std::string> args(flags);
    return parse_config(args);
}

std::string usage_message(std::initializer_list<std::string> flags) {
    try {
        parse(flags);
    } catch (const UsageError& e) {
        return e.what();
    }
    return {};
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

OutputDocument sample_document() {
    OutputDocument doc;
    doc.config.dim = 2;
    doc.config.copies = 50;
    doc.config.runs = 10000;
    doc.config.master_seed = 7;
    for (int nu = 1; nu <= 50; ++nu) {
        const double f_opt = optimal_fidelity(nu, 2);
        const double mean = f_opt - 0.002 / nu;
        doc.curve.push_back(CurvePoint{nu, mean, 0.0011 / std::sqrt(nu), f_opt, mean - f_opt});
    }
    return doc;
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("parse_config defaults") {
    const auto o = parse({});
    CHECK(o.config == ExperimentConfig{});
    CHECK(o.config.dim == 2);
    CHECK(o.config.copies == 50);
    CHECK(o.config.runs == 10000);
    CHECK(o.config.strategy == Strategy::adaptive);
    CHECK(o.config.master_seed == 0);
    CHECK(o.config.adaption.restarts == 8);
    CHECK(o.format == OutputFormat::csv);
    CHECK(o.out_path.empty());
    CHECK(o.dump_runs_path.empty());
}

TEST_CASE("parse_config example") {
    const auto o = parse({"--dim", "6", "--copies", "20", "--runs", "300", "--strategy",
                          "random", "--seed", "12345678901234", "--restarts", "3", "--format",
                          "json", "--out", "x.json", "--dump-runs", "r.csv", "--workers", "2"});
    CHECK(o.config.dim == 6);
    CHECK(o.config.copies == 20);
    CHECK(o.config.runs == 300);
    CHECK(o.config.strategy == Strategy::random);
    CHECK(o.config.master_seed == 12345678901234ull);
    CHECK(o.config.adaption.restarts == 3);
    CHECK(o.format == OutputFormat::json);
    CHECK(o.out_path == "x.json");
    CHECK(o.dump_runs_path == "r.csv");
    CHECK(o.workers == 2);
}

TEST_CASE("parse_config errors name the flag") {
    CHECK(usage_message({"--dim", "1"}).find("--dim") != std::string::npos);
    CHECK(usage_message({"--copies", "0"}).find("--copies") != std::string::npos);
    CHECK(usage_message({"--runs", "0"}).find("--runs") != std::string::npos);
    CHECK(usage_message({"--dim", "three"}).find("--dim") != std::string::npos);
    CHECK(usage_message({"--strategy", "greedy"}).find("--strategy") != std::string::npos);
    CHECK(usage_message({"--format", "xml"}).find("--format") != std::string::npos);
    CHECK(usage_message({"--bogus", "1"}).find("--bogus") != std::string::npos);
}

TEST_CASE("emit_csv format") {
    const auto doc = sample_document();
    std::ostringstream os;
    emit_csv(doc, os);
    const auto lines = split(os.str(), '\n');
    REQUIRE(lines.size() == 51);
    CHECK(lines[0] == "nu,mean_fidelity,stderr,f_opt,delta_f");
    CHECK(os.str().find('\r') == std::string::npos);
    CHECK(os.str().back() == '\n');
    const auto last = split(lines[50], ',');
    REQUIRE(last.size() == 5);
    CHECK(last[0] == "50");
    CHECK(last[3] == "0.980769");
    CHECK(last[1] == "0.980729");
    CHECK(last[4] == "-0.000040");
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto fields = split(lines[i], ',');
        REQUIRE(fields.size() == 5);
        CHECK(std::stoi(fields[0]) == static_cast<int>(i));
        for (int k = 1; k < 5; ++k) {
            const auto dot = fields[static_cast<std::size_t>(k)].find('.');
            REQUIRE(dot != std::string::npos);
            CHECK(fields[static_cast<std::size_t>(k)].size() - dot - 1 == 6);
        }
    }

    OutputDocument empty;
    std::ostringstream e;
    emit_csv(empty, e);
    CHECK(e.str() == "nu,mean_fidelity,stderr,f_opt,delta_f\n");

    std::ostringstream again;
    emit_csv(doc, again);
    CHECK(again.str() == os.str());
}

TEST_CASE("emit_json layout and round trip") {
    const auto doc = sample_document();
    std::ostringstream os;
    emit_json(doc, os);
    const auto j = nlohmann::ordered_json::parse(os.str());
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items()) keys.push_back(k);
    CHECK(keys == std::vector<std::string>{"config", "curve", "version"});
    CHECK(j["version"] == kToolVersion);
    std::vector<std::string> row_keys;
    for (const auto& [k, v] : j["curve"][0].items()) row_keys.push_back(k);
    CHECK(row_keys == std::vector<std::string>{"nu", "mean_fidelity", "stderr", "f_opt", "delta_f"});
    REQUIRE(j["curve"].size() == doc.curve.size());
    for (std::size_t i = 0; i < doc.curve.size(); ++i) {
        const auto& row = j["curve"][i];
        CHECK(row["nu"].get<int>() == doc.curve[i].nu);
        CHECK(std::abs(row["mean_fidelity"].get<double>() - doc.curve[i].mean_fidelity) <= 1e-12);
        CHECK(std::abs(row["stderr"].get<double>() - doc.curve[i].standard_error) <= 1e-12);
        CHECK(std::abs(row["f_opt"].get<double>() - doc.curve[i].f_opt) <= 1e-12);
        CHECK(std::abs(row["delta_f"].get<double>() - doc.curve[i].delta_f) <= 1e-12);
    }
    CHECK(config_from_json(os.str()) == doc.config);

    ExperimentConfig other;
    other.dim = 7;
    other.strategy = Strategy::random;
    other.master_seed = ~0ull;
    other.adaption.restarts = 2;
    std::ostringstream o2;
    emit_json(OutputDocument{other, {}}, o2);
    CHECK(config_from_json(o2.str()) == other);
}

TEST_CASE("CSV and JSON carry the same numbers") {
    const auto doc = sample_document();
    std::ostringstream c, js;
    emit_csv(doc, c);
    emit_json(doc, js);
    const auto lines = split(c.str(), '\n');
    const auto j = nlohmann::json::parse(js.str());
    for (std::size_t i = 0; i < doc.curve.size(); ++i) {
        const auto f = split(lines[i + 1], ',');
        const auto& row = j["curve"][i];
        CHECK(f[0] == std::to_string(row["nu"].get<int>()));
        CHECK(f[1] == fmt::format("{:.6f}", row["mean_fidelity"].get<double>()));
        CHECK(f[2] == fmt::format("{:.6f}", row["stderr"].get<double>()));
        CHECK(f[3] == fmt::format("{:.6f}", row["f_opt"].get<double>()));
        CHECK(f[4] == fmt::format("{:.6f}", row["delta_f"].get<double>()));
    }
}

TEST_CASE("failing sink is reported") {
    std::ostringstream os;
    os.setstate(std::ios::badbit);
    CHECK_THROWS_AS(emit_csv(sample_document(), os), std::runtime_error);
    CHECK_THROWS_AS(emit_json(sample_document(), os), std::runtime_error);
}

TEST_CASE("emit_run_dump format") {
    const auto psi = StateVector::basis_vector(2, 0);
    const std::vector<RunResult> runs{{psi, {0.25, 1.0}, {true, false}, {0.0, 0.5}}};
    std::ostringstream os;
    emit_run_dump(runs, os);
    CHECK(os.str() == "run,nu,fidelity,h,degenerate\n0,1,0.25,0,1\n0,2,1,0.5,0\n");
}

TEST_CASE("run_cli exit codes and outputs") {
    std::ostringstream out, err;
    SUBCASE("usage error") {
        const std::vector<std::string> args{"--dim", "1"};
        CHECK(run_cli(args, out, err) == 2);
        CHECK(err.str().find("--dim") != std::string::npos);
        CHECK(out.str().empty());
    }
    SUBCASE("unwritable output") {
        const std::vector<std::string> args{"--runs", "2", "--copies", "2", "--out",
                                            "/nonexistent-dir/x.csv"};
        CHECK(run_cli(args, out, err) == 1);
        CHECK_FALSE(err.str().empty());
    }
    SUBCASE("csv to stdout, json and dump to files") {
        const std::vector<std::string> csv_args{"--runs", "4", "--copies", "3", "--seed", "11"};
        CHECK(run_cli(csv_args, out, err) == 0);
        CHECK(split(out.str(), '\n').size() == 4);

        const auto json_path = temp_path("qadapt_test_out.json");
        const auto dump_path = temp_path("qadapt_test_dump.csv");
        const std::vector<std::string> json_args{"--runs",   "4",       "--copies",
                                                 "3",        "--seed",  "11",
                                                 "--format", "json",    "--out",
                                                 json_path,  "--dump-runs", dump_path};
        std::ostringstream out2;
        CHECK(run_cli(json_args, out2, err) == 0);
        CHECK(out2.str().empty());
        const auto j = nlohmann::json::parse(slurp(json_path));
        CHECK(j["curve"].size() == 3);
        CHECK(j["config"]["seed"].get<std::uint64_t>() == 11);
        CHECK(split(slurp(dump_path), '\n').size() == 1 + 4 * 3);
        // Same numbers as the CSV run.
        const auto lines = split(out.str(), '\n');
        for (std::size_t i = 0; i < 3; ++i) {
            CHECK(split(lines[i + 1], ',')[1] ==
                  fmt::format("{:.6f}", j["curve"][i]["mean_fidelity"].get<double>()));
        }
        std::remove(json_path.c_str());
        std::remove(dump_path.c_str());
    }
}
