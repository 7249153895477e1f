// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The icalloc Authors.

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "icalloc/cli.hpp"
#include "icalloc/document.hpp"
#include "icalloc/errors.hpp"
#include "icalloc/ic_design.hpp"
#include "icalloc/steiner.hpp"
#include "icalloc/sweep.hpp"

using namespace icalloc;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path temp_file(const std::string& name, const std::string& content) {
    const auto path = fs::temp_directory_path() / name;
    std::ofstream(path) << content;
    return path;
}

}  // namespace

TEST_CASE("document round-trip rebuilds the allocation") {
    const Construction c = construct_ic(60, 2, 21);
    const AllocationDocument doc = make_document(c.allocation, "ic", c.params);
    const auto j = to_json(doc, TupleListing::Always);
    const AllocationDocument back = document_from_json(j);
    CHECK(back.has_tuples);
    CHECK(back.allocation == c.allocation);
    CHECK(back.costs.pi == doc.costs.pi);
    CHECK(back.costs.delta == doc.costs.delta);
    REQUIRE(back.ic.has_value());
    CHECK(back.ic->f == c.params.f);
    CHECK(to_json(back, TupleListing::Always).dump() == j.dump());
}

TEST_CASE("document keys and tuple listing modes") {
    const Construction c = construct_ic(50, 2, 10);
    const AllocationDocument doc = make_document(c.allocation, "ic", c.params);
    const auto j = to_json(doc, TupleListing::Never);
    CHECK(j["ok"] == true);
    CHECK(j["params"]["f"] == 5);
    CHECK(j["params"]["case"] == "divisible");
    CHECK(j["costs"]["pi"] == 20);
    CHECK(j["groups"].size() == 10);
    CHECK_FALSE(j["groups"][0].contains("tuples"));
    CHECK(to_json(doc, TupleListing::Auto)["groups"][0].contains("tuples"));
    const AllocationDocument stripped = document_from_json(j);
    CHECK_FALSE(stripped.has_tuples);
    CHECK(stripped.tuple_counts == doc.tuple_counts);
}

TEST_CASE("malformed documents raise ParseError") {
    std::istringstream bad("{\"source\": \"ic\"}");
    CHECK_THROWS_AS(parse_document(bad), ParseError);
    std::istringstream not_json("{ nope");
    CHECK_THROWS_AS(parse_document(not_json), ParseError);
}

TEST_CASE("worker CSV") {
    const AllocationDocument doc = make_document(steiner_to_allocation(fano_plane()), "steiner");
    std::ostringstream os;
    write_worker_csv(os, doc);
    std::istringstream lines(os.str());
    std::string line;
    std::getline(lines, line);
    CHECK(line == "worker,file_count,tuple_count,files");
    int rows = 0;
    while (std::getline(lines, line)) ++rows;
    CHECK(rows == 7);
}

TEST_CASE("construct exit codes") {
    auto r = run({"construct", "50", "2", "10", "--no-tuples"});
    CHECK(r.code == cli::kOk);
    CHECK(r.out.find("\"pi\": 20") != std::string::npos);

    r = run({"construct", "7", "2", "7"});
    CHECK(r.code == cli::kInfeasible);
    CHECK(r.err.find("n=7") != std::string::npos);

    r = run({"construct", "3", "5", "2"});
    CHECK(r.code == cli::kInfeasible);

    r = run({"construct", "50", "2"});
    CHECK(r.code == cli::kIoError);

    r = run({"construct", "50", "2", "10", "--format", "xml"});
    CHECK(r.code == cli::kIoError);

    r = run({"construct", "60", "2", "40", "--no-tuples"});
    CHECK(r.code == cli::kOk);
    CHECK(r.err.find("warning") != std::string::npos);

    r = run({"construct", "20", "2", "4", "--out", "/nonexistent_dir/x.json"});
    CHECK(r.code == cli::kIoError);
}

TEST_CASE("construct output is deterministic") {
    const auto a = run({"construct", "60", "2", "21", "--tuples"});
    const auto b = run({"construct", "60", "2", "21", "--tuples"});
    CHECK(a.code == cli::kOk);
    CHECK(a.out == b.out);
    const auto c = run({"construct", "30", "3", "8", "--format", "csv"});
    const auto e = run({"construct", "30", "3", "8", "--format", "csv"});
    CHECK(c.out == e.out);
    CHECK(c.out.rfind("worker,file_count,tuple_count,files", 0) == 0);
}

TEST_CASE("verify subcommand detects tampering") {
    const auto built = run({"construct", "20", "2", "6", "--tuples"});
    REQUIRE(built.code == cli::kOk);
    const auto good = temp_file("icalloc_doc_good.json", built.out);
    CHECK(run({"verify", good.string()}).code == cli::kOk);

    auto j = nlohmann::ordered_json::parse(built.out);
    auto& tuples = j["groups"][0]["tuples"];
    tuples.erase(tuples.begin());
    const auto bad = temp_file("icalloc_doc_bad.json", j.dump());
    const auto r = run({"verify", bad.string()});
    CHECK(r.code == cli::kCheckFailed);
    CHECK(r.err.find("verification failed") != std::string::npos);

    CHECK(run({"verify", "/nonexistent_dir/doc.json"}).code == cli::kIoError);
    const auto junk = temp_file("icalloc_doc_junk.json", "[1,2,3]");
    CHECK(run({"verify", junk.string()}).code == cli::kIoError);
    fs::remove(good);
    fs::remove(bad);
    fs::remove(junk);
}

TEST_CASE("steiner subcommand") {
    auto r = run({"steiner", "--fano", "--to-allocation"});
    CHECK(r.code == cli::kOk);
    auto j = nlohmann::ordered_json::parse(r.out);
    CHECK(j["valid"] == true);
    CHECK(j["allocation"]["costs"]["pi"] == 3);
    CHECK(j["allocation"]["costs"]["delta"] == "1/1");

    const auto good = temp_file("icalloc_fano.blocks", std::string(fano_plane_text()));
    CHECK(run({"steiner", good.string()}).code == cli::kOk);

    std::string mutated = format_steiner(fano_plane());
    const auto pos = mutated.find("3 5 6");
    REQUIRE(pos != std::string::npos);
    mutated.replace(pos, 5, "3 5 7");
    const auto bad = temp_file("icalloc_fano_bad.blocks", mutated);
    r = run({"steiner", bad.string()});
    CHECK(r.code == cli::kCheckFailed);
    j = nlohmann::ordered_json::parse(r.out);
    CHECK(j["counterexample"] == nlohmann::ordered_json::array({3, 6}));

    const auto wrong = temp_file("icalloc_fano_wrong.blocks", "2 3 7\n1 2 3\n1 4\n");
    CHECK(run({"steiner", wrong.string()}).code == cli::kIoError);
    CHECK(run({"steiner", "/nonexistent_dir/x.blocks"}).code == cli::kIoError);
    CHECK(run({"steiner"}).code == cli::kIoError);
    fs::remove(good);
    fs::remove(bad);
    fs::remove(wrong);
}

TEST_CASE("bounds and compare subcommands") {
    auto r = run({"bounds", "6", "2", "3"});
    CHECK(r.code == cli::kOk);
    auto j = nlohmann::ordered_json::parse(r.out);
    CHECK(j["lb_packing"] == 4);

    r = run({"compare", "6", "2", "3"});
    CHECK(r.code == cli::kOk);
    j = nlohmann::ordered_json::parse(r.out);
    CHECK(j["pi_star"] == 4);
    CHECK(j["oracle_status"] == "complete");

    r = run({"compare", "7", "2", "7"});
    CHECK(r.code == cli::kOk);
    j = nlohmann::ordered_json::parse(r.out);
    CHECK(j["pi_ic"].is_null());
    CHECK(j["pi_star"] == 3);
}

TEST_CASE("axis parsing and grid expansion") {
    CHECK(AxisSpec::parse("20:60:10", false).values == std::vector<std::uint64_t>{20, 30, 40, 50, 60});
    CHECK(AxisSpec::parse("2,3", false).values == std::vector<std::uint64_t>{2, 3});
    CHECK(AxisSpec::parse("1,R", true).regime_max);
    CHECK_THROWS_AS(AxisSpec::parse("R", false), InputError);
    CHECK(AxisSpec::parse("5:1", false).values.empty());
    CHECK_THROWS_AS(AxisSpec::parse("1:5:0", false), InputError);

    SweepSpec spec;
    spec.n = AxisSpec::parse("3,2,3", false);
    spec.d = AxisSpec::parse("3", false);
    spec.N = AxisSpec::parse("0,1", true);
    const auto grid = expand_grid(spec);
    REQUIRE(grid.size() == 1);
    CHECK(grid[0] == GridPoint{3, 3, 1});
}

TEST_CASE("sweep CSV") {
    auto r = run({"sweep", "--n", "20:40:10", "--d", "2,3", "--N", "1,3,R"});
    CHECK(r.code == cli::kOk);
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == kSweepHeader);
    int rows = 0;
    while (std::getline(lines, line)) {
        ++rows;
        CHECK(line.find(",true") != std::string::npos);
    }
    CHECK(rows >= 6);

    r = run({"sweep", "--n", "5", "--d", "9", "--N", "1"});
    CHECK(r.code == cli::kOk);
    CHECK(r.out == std::string(kSweepHeader) + "\n");

    r = run({"sweep", "--n", "7", "--d", "2", "--N", "7"});
    CHECK(r.code == cli::kOk);
    CHECK(r.out.find("error:infeasible") != std::string::npos);

    r = run({"sweep", "--n", "6", "--d", "2", "--N", "3", "--oracle"});
    CHECK(r.code == cli::kOk);
    CHECK(r.out.find(",pi_star\n") != std::string::npos);
    CHECK(r.out.substr(r.out.size() - 3) == ",4\n");

    CHECK(run({"sweep", "--n", "x", "--d", "2", "--N", "3"}).code == cli::kIoError);
}
