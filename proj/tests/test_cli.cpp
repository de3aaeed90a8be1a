#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "gsds/cli.hpp"
#include "gsds/io.hpp"
#include "models.hpp"

using namespace gsds;
using fixtures::data_path;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(const std::vector<std::string> &args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string scratch(const std::string &name) {
    const auto dir = std::filesystem::temp_directory_path() / "gsds-tests";
    std::filesystem::create_directories(dir);
    return (dir / name).string();
}

} // namespace

TEST_CASE("model files round trip") {
    const auto m = io::parse_model(io::read_file(data_path("example1.json")));
    const auto text = io::write_model(m);
    const auto again = io::parse_model(text);
    CHECK(io::write_model(again) == text);
    CHECK(again.locals() == m.locals());
    CHECK(again.schedule().word == m.schedule().word);
    const auto m2 = io::parse_model(io::read_file(data_path("example2.json")));
    CHECK(m2.states().factors()[1] == std::vector<Elem>{0, 1});
    CHECK(io::write_model(io::parse_model(io::write_model(m2))) == io::write_model(m2));
}

TEST_CASE("malformed documents are reported") {
    CHECK_THROWS_AS((void)io::parse_model("{"), FormatError);
    CHECK_THROWS_AS((void)io::parse_model(R"({"field": 2})"), FormatError);
    CHECK_THROWS_AS((void)io::parse_model(R"({"format_version": 2, "field": 2})"), FormatError);
    CHECK_THROWS_AS((void)io::parse_model(R"({"format_version": 1, "field": 2, "genes": ["a"], "locals": {}})"),
                    ModelError);
    CHECK_THROWS_AS(
        (void)io::parse_model(R"({"format_version": 1, "field": 2, "genes": ["a"], "locals": {"a": "x2"}})"),
        ParseError);
    CHECK_THROWS_AS((void)io::parse_csv("time,a\n0,1\n"), FormatError);
    CHECK_THROWS_AS((void)io::parse_csv("t,a\n0,1,2\n"), FormatError);
    CHECK_THROWS_AS((void)io::parse_csv("t,a\n0,abc\n"), FormatError);
}

TEST_CASE("CSV and series documents") {
    const auto s = io::parse_csv(io::read_file(data_path("example3.csv")));
    CHECK(s.genes == std::vector<std::string>{"g1", "g2", "g3"});
    CHECK(s.times == std::vector<double>{0, 1, 2, 3});
    CHECK(s.samples[1][0] == 0.78);
    CHECK(io::parse_csv(io::write_csv(s)).samples == s.samples);
    const auto series = io::parse_series(io::read_file(data_path("example3_series.json")));
    CHECK(series.states.size() == 4);
    CHECK(series.states[0] == State{2, 1, 2});
    CHECK(io::parse_series(io::write_series(series)).states == series.states);
    const auto th = io::parse_thresholds(io::read_file(data_path("example3_thresholds.json")));
    CHECK(io::parse_thresholds(io::write_thresholds(th.map, th.genes, th.encoding)).map == th.map);
}

TEST_CASE("simulate") {
    auto r = run({"simulate", data_path("example1.json"), "--state", "0000", "--steps", "3"});
    CHECK(r.code == 0);
    CHECK(r.out == "(0,0,0,0)\n(1,1,0,0)\n(1,1,1,1)\n(1,1,1,0)\n");
    r = run({"simulate", data_path("example1.json"), "--state", "0,1,0,1", "--steps", "0"});
    CHECK(r.out == "(0,1,0,1)\n");
    r = run({"simulate", data_path("example3.json"), "--state", "-1,1,-1", "--steps", "3"});
    CHECK(r.out == "(-1,1,-1)\n(0,1,0)\n(1,1,1)\n(-1,1,-1)\n");
    r = run({"simulate", data_path("example3.json"), "--state", "2,1,2", "--steps", "1", "--display", "canonical"});
    CHECK(r.out == "(2,1,2)\n(0,1,0)\n");
    r = run({"simulate", data_path("example1.json"), "--state", "0000", "--steps", "3", "--schedule", "g0,g1,g2,g3"});
    CHECK(r.out == "(0,0,0,0)\n(1,1,1,0)\n(1,1,1,0)\n(1,1,1,0)\n");
    r = run({"simulate", data_path("example1.json"), "--state", "0000", "--schedule", "1,2,3,4"});
    CHECK(r.out == "(0,0,0,0)\n(1,1,1,0)\n");
}

TEST_CASE("validation failures exit with 2 and print the report") {
    auto r = run({"validate", data_path("example2.json")});
    CHECK(r.code == 2);
    CHECK(r.err.find("range") != std::string::npos);
    r = run({"simulate", data_path("example2.json"), "--state", "000"});
    CHECK(r.code == 2);
    r = run({"validate", data_path("example1.json")});
    CHECK(r.code == 0);
}

TEST_CASE("portrait") {
    const auto json = scratch("portrait.json");
    auto r = run({"portrait", data_path("example1.json"), "--json", json});
    CHECK(r.code == 0);
    CHECK(r.out.find("attractors: 1\n") != std::string::npos);
    CHECK(r.out.find("max transient: 3\n") != std::string::npos);
    const auto text = io::read_file(json);
    CHECK(text.find("\"attractor_count\": 1") != std::string::npos);
    CHECK(text.find("\"length\": 1") != std::string::npos);
    r = run({"portrait", data_path("example3.json"), "--dot", "-"});
    CHECK(r.out.find("(0,1,0) (1,1,1) (-1,1,-1)") != std::string::npos);
    CHECK(r.out.find("digraph transitions") != std::string::npos);
    r = run({"portrait", data_path("example1.json"), "--limit", "8"});
    CHECK(r.code == 1);
}

TEST_CASE("infer") {
    const auto out = scratch("inferred.json");
    auto r = run({"infer", "--csv", data_path("example3.csv"), "--thresholds", data_path("example3_thresholds.json"),
                  "--member", "x1 + x2", "--member", "x2", "--member", "x2 + x3", "-o", out});
    CHECK(r.code == 0);
    CHECK(r.out.find("g1: x1 + 1  (dimension 24, inputs g1)") != std::string::npos);
    CHECK(r.out.find("member g3: yes") != std::string::npos);
    CHECK(r.out.find("edges: g1->g1 g1->g3") != std::string::npos);
    // The inferred model replays the discretized series.
    r = run({"simulate", out, "--state", "-1,1,-1", "--steps", "3"});
    CHECK(r.out == "(-1,1,-1)\n(0,1,0)\n(1,1,1)\n(-1,1,-1)\n");

    r = run({"infer", data_path("example3_series.json"), "--member", "x1", "--member", "x2", "--member", "x3"});
    CHECK(r.code == 4);

    const auto bad = scratch("contradictory.json");
    io::write_file(bad, R"({"format_version": 1, "field": 2, "genes": ["a"], "states": [[0], [1], [0], [0]]})");
    r = run({"infer", bad});
    CHECK(r.code == 3);
    CHECK(r.err.find("transition 0") != std::string::npos);

    const auto empty = scratch("empty.json");
    io::write_file(empty, R"({"format_version": 1, "field": 2, "genes": ["a"], "states": []})");
    CHECK(run({"infer", empty}).code == 1);
    CHECK(run({"infer"}).code == 1);
}

TEST_CASE("fit, discretize and check") {
    auto r = run({"fit", data_path("example3.csv")});
    CHECK(r.code == 0);
    CHECK(r.out.find("g1: [0,1] 0.28*t + 0.5; [1,2] 0.72*t + 0.06; [2,3] -1*t + 3.5") != std::string::npos);
    CHECK(r.out.find("g3: [0,1] 0.75*t + 0.5; [1,2] 0.25*t + 1; [2,3] -1*t + 3.5") != std::string::npos);
    r = run({"discretize", data_path("example3.csv"), "--thresholds", data_path("example3_thresholds.json")});
    CHECK(r.out == "(-1,1,-1)\n(0,1,0)\n(1,1,1)\n(-1,1,-1)\n");
    r = run({"check", data_path("example3.json"), "--csv", data_path("example3.csv"), "--thresholds",
             data_path("example3_thresholds.json")});
    CHECK(r.code == 0);
    CHECK(r.out == "3/3 pairs translated\n");
    r = run({"check", data_path("example3_identity.json"), "--csv", data_path("example3.csv"), "--thresholds",
             data_path("example3_thresholds.json")});
    CHECK(r.code == 4);
    CHECK(r.out.find("pair 0 (t=0 -> t=1): observed (0,1,0), predicted (-1,1,-1)") != std::string::npos);
}

TEST_CASE("hybrid") {
    const auto events = scratch("events.csv");
    auto r = run({"hybrid", data_path("oscillator.json"), "--rates", data_path("oscillator_rates.json"), "--thresholds",
                  data_path("oscillator_thresholds.json"), "--initial", "0.5,0", "--t-end", "5", "--events", events});
    CHECK(r.code == 0);
    CHECK(r.out == "[0, 0.5] (0,0)\n[0.5, 2] (1,0)\n[2, 3.5] (1,1)\n[3.5, 5] (0,1)\nevents: 3\n");
    CHECK(io::read_file(events) ==
          "time,gene,kind,threshold,before,after\n"
          "0.5,a,crossing,1,\"(0,0)\",\"(1,0)\"\n"
          "2,b,crossing,1,\"(1,0)\",\"(1,1)\"\n"
          "3.5,a,crossing,1,\"(1,1)\",\"(0,1)\"\n");
}

TEST_CASE("usage errors") {
    CHECK(run({}).code == 1);
    CHECK(run({"frobnicate"}).code == 1);
    CHECK(run({"simulate", data_path("example1.json"), "--state", "0000", "--bogus"}).code == 1);
    CHECK(run({"simulate", data_path("example1.json"), "--state", "00"}).code == 1);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("commands are deterministic") {
    const std::vector<std::string> args{"portrait", data_path("example3.json"), "--json", "-", "--dot", "-"};
    CHECK(run(args).out == run(args).out);
}
