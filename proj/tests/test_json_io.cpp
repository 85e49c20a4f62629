#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "nets.hpp"
#include "pteg/cli.hpp"
#include "pteg/json_io.hpp"

using namespace pteg;
using pteg::testing::heat_treatment_net;
using pteg::testing::ring_net;

namespace {

const char* heat_json = R"({
  "transitions": ["t1", "t2", "t3"],
  "places": [
    {"from": "t1", "to": "t2", "tokens": 1, "lb": 2, "ub": 3},
    {"from": "t2", "to": "t1", "tokens": 0, "lb": 0, "ub": "inf"},
    {"from": "t2", "to": "t3", "tokens": 0, "lb": "0.5", "ub": "inf"},
    {"from": "t3", "to": "t2", "tokens": 1, "lb": "0.5", "ub": "inf"},
    {"from": "t3", "to": "t3", "tokens": 1, "lb": 0, "ub": 4},
    {"from": "t1", "to": "t3", "tokens": 1, "lb": 6, "ub": "inf"}
  ]
})";

// Writes a file under a per-process scratch directory and returns its path.
std::string write_temp(const std::string& name, const std::string& contents) {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / ("pteg-tests-" + std::to_string(::getpid()));
    fs::create_directories(dir);
    fs::path p = dir / name;
    std::ofstream(p) << contents;
    return p.string();
}

struct CliRun {
    int code;
    std::string out, err;
};

CliRun cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("rational parsing and formatting") {
    CHECK(parse_rational("0.5") == Rational(1, 2));
    CHECK(parse_rational("-3.25") == Rational(-13, 4));
    CHECK(parse_rational("7") == Rational(7));
    CHECK(parse_rational("2/6") == Rational(1, 3));
    CHECK(parse_rational("1e3") == Rational(1000));
    CHECK(parse_rational("25e-2") == Rational(1, 4));
    CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);

    CHECK(format_rational(Rational(1, 2)) == "0.5");
    CHECK(format_rational(Rational(-13, 4)) == "-3.25");
    CHECK(format_rational(Rational(1, 3)) == "1/3");
    CHECK(format_rational(Rational(42)) == "42");
    CHECK(format_rational(Rational(1, 200)) == "0.005");
}

TEST_CASE("json numbers are read by their decimal meaning") {
    json j = json::parse(R"({"a": 0.1, "b": 3, "c": "2/3"})");
    CHECK(rational_from_json(j["a"], "a") == Rational(1, 10));
    CHECK(rational_from_json(j["b"], "b") == Rational(3));
    CHECK(rational_from_json(j["c"], "c") == Rational(2, 3));
}

TEST_CASE("net parsing") {
    PTEG net = parse_net(heat_json);
    REQUIRE(net.size() == 3);
    REQUIRE(net.places().size() == 6);
    CharacteristicMatrices cm = characteristic_matrices(net);
    CHECK(cm.a1.at(1, 0) == Tropical(2));
    CHECK(cm.a0.at(2, 1) == Tropical(parse_rational("0.5")));
    CHECK(cm.b1.at(2, 2) == Tropical(4));

    PTEG tiny = parse_net(R"({"transitions": ["t1"], "places": []})");
    CHECK(tiny.size() == 1);
    CHECK(tiny.places().empty());
}

TEST_CASE("net parsing rejects malformed documents") {
    CHECK_THROWS_AS(parse_net("not json"), ParseError);
    CHECK_THROWS_AS(parse_net(R"({"transitions": []})"), ParseError);
    CHECK_THROWS_AS(parse_net(R"({"transitions": ["t1", "t1"], "places": []})"), ParseError);
    CHECK_THROWS_AS(
        parse_net(
            R"({"transitions": ["t1"], "places": [{"from": "t9", "to": "t1", "tokens": 0, "lb": 0, "ub": 1}]})"),
        ParseError);
    CHECK_THROWS_AS(
        parse_net(
            R"({"transitions": ["t1"], "places": [{"from": "t1", "to": "t1", "tokens": 1, "lb": 1, "ub": 0.5}]})"),
        ParseError);
    CHECK_THROWS_AS(
        parse_net(
            R"({"transitions": ["t1"], "places": [{"from": "t1", "to": "t1", "tokens": 1, "lb": -1, "ub": 2}]})"),
        ParseError);
    CHECK_THROWS_AS(
        parse_net(
            R"({"transitions": ["t1"], "places": [{"from": "t1", "to": "t1", "tokens": -1, "lb": 0, "ub": 2}]})"),
        ParseError);
}

TEST_CASE("matrix documents") {
    json j = json::parse(R"({"n": 2, "entries": [["-inf", "0.5"], [3, "inf"]]})");
    Matrix m = parse_matrix(j);
    CHECK(m.at(0, 0).is_neg_inf());
    CHECK(m.at(0, 1) == Tropical(parse_rational("0.5")));
    CHECK(m.at(1, 0) == Tropical(3));
    CHECK(m.at(1, 1).is_pos_inf());
    CHECK(parse_matrix(matrix_to_json(m)) == m);
    CHECK_THROWS_AS(parse_matrix(json::parse(R"({"n": 2, "entries": [[1]]})")), ParseError);
}

TEST_CASE("documents round-trip exactly") {
    std::mt19937 rng(8128);
    std::uniform_int_distribution<int> num(-50, 50);
    std::uniform_int_distribution<int> den(1, 50);
    for (int t = 0; t < 200; ++t) {
        Rational r(num(rng), den(rng));
        r.canonicalize();
        CHECK(rational_from_json(rational_to_json(r), "rt") == r);
    }

    PTEG net = heat_treatment_net();
    json round = net_to_json(net_from_json(net_to_json(net)));
    CHECK(round == net_to_json(net));

    Trajectory traj = witness_prefix(ring_net(), Semantics::Strict, 4, Rational(1, 2));
    Trajectory back = parse_trajectory(trajectory_to_json(traj), 4);
    CHECK(back.t0 == traj.t0);
    CHECK(back.steps == traj.steps);
}

TEST_CASE("cli check") {
    std::string heat = write_temp("heat.json", heat_json);
    CHECK(cli({"check", "--file", heat, "--semantics", "loose"}).code == 0);

    CliRun strict = cli({"check", "--file", heat, "--semantics", "strict"});
    CHECK(strict.code == 1);
    CHECK(strict.out.find("weight 2") != std::string::npos);

    CHECK(cli({"check", "--file", "/nonexistent/x.json", "--semantics", "loose"}).code == 2);
    CHECK(cli({"check", "--file", heat, "--semantics", "loose", "--bogus-flag"}).code == 2);
    CHECK(cli({"check", "--file", heat, "--semantics", "sloppy"}).code == 2);

    // duplicate places with an empty window intersection are an input error
    std::string conflicted = write_temp("conflict.json", R"({
      "transitions": ["t1", "t2"],
      "places": [
        {"from": "t1", "to": "t2", "tokens": 0, "lb": 5, "ub": 9},
        {"from": "t1", "to": "t2", "tokens": 0, "lb": 0, "ub": 2}
      ]})");
    CHECK(cli({"check", "--file", conflicted, "--semantics", "loose"}).code == 2);
}

TEST_CASE("cli json reports are deterministic") {
    std::string heat = write_temp("heat.json", heat_json);
    CliRun a = cli({"check", "--file", heat, "--semantics", "strict", "--json"});
    CliRun b = cli({"check", "--file", heat, "--semantics", "strict", "--json"});
    CHECK(a.code == 1);
    json ja = json::parse(a.out), jb = json::parse(b.out);
    CHECK(ja["verdict"] == "inconsistent");
    CHECK(ja["certificate"]["kind"] == "positive-circuit");
    CHECK(ja["certificate"]["stage"] == "combined");
    CHECK(ja["certificate"]["circuit"]["weight"] == 2);
    // stable up to the timing measurement
    ja["timings"] = 0;
    jb["timings"] = 0;
    CHECK(ja.dump() == jb.dump());
}

TEST_CASE("cli witness and validate") {
    json ring = net_to_json(ring_net());
    std::string ring_file = write_temp("ring.json", ring.dump());

    CliRun w = cli({"witness", "--file", ring_file, "--semantics", "strict", "--length", "4",
                    "--t0", "0", "--json"});
    REQUIRE(w.code == 0);
    std::string traj_file = write_temp("ring-traj.json", w.out);
    CHECK(cli({"validate", "--file", ring_file, "--trajectory", traj_file, "--semantics",
               "strict"})
              .code == 0);

    // perturb one firing: the validator must flag it
    json traj = json::parse(w.out);
    traj["x"][0][0] = 99;
    std::string bad_file = write_temp("ring-bad.json", traj.dump());
    CliRun v = cli({"validate", "--file", ring_file, "--trajectory", bad_file, "--semantics",
                    "strict"});
    CHECK(v.code == 1);
    CHECK(v.out.find("violated") != std::string::npos);

    // witness of an inconsistent net reports the inconsistency
    std::string heat = write_temp("heat.json", heat_json);
    CHECK(cli({"witness", "--file", heat, "--semantics", "strict", "--length", "3"}).code == 1);

    // oversized prefixes are refused up front instead of exhausting memory
    CliRun big = cli({"witness", "--file", ring_file, "--semantics", "loose", "--length",
                      "100000"});
    CHECK(big.code == 2);
    CHECK(big.err.find("cap") != std::string::npos);
}

TEST_CASE("cli analyze") {
    json lcr = {{"n", 2},
                {"L", json::parse(R"([["-1", "-inf"], ["-inf", "-3"]])")},
                {"C", json::parse(R"([["-inf", "-inf"], ["0", "-inf"]])")},
                {"R", json::parse(R"([["1", "-inf"], ["-inf", "2"]])")}};
    std::string ok_file = write_temp("lcr-ok.json", lcr.dump());
    CHECK(cli({"analyze", "--lcr", ok_file}).code == 0);

    lcr["R"][0][0] = "2";
    std::string bad_file = write_temp("lcr-bad.json", lcr.dump());
    CliRun r = cli({"analyze", "--lcr", bad_file, "--json"});
    CHECK(r.code == 1);
    CHECK(json::parse(r.out)["verdict"] == "inf-path");

    // ultimate mode: epsilon negative part, all-zero transient, ring as positive part
    StaticGraph g = lcr_matrices(characteristic_matrices(ring_net()));
    json pos = {{"n", 4},
                {"L", matrix_entries_to_json(g.left)},
                {"C", matrix_entries_to_json(g.center)},
                {"R", matrix_entries_to_json(g.right)}};
    Matrix eps4 = Matrix::epsilon(4), zeros4(4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) zeros4.at(i, j) = Tropical::zero();
    json ult = {{"neg",
                 {{"L", matrix_entries_to_json(eps4)},
                  {"C", matrix_entries_to_json(eps4)},
                  {"R", matrix_entries_to_json(eps4)}}},
                {"transient", matrix_entries_to_json(zeros4)}};
    std::string pos_file = write_temp("pos.json", pos.dump());
    std::string ult_file = write_temp("ult.json", ult.dump());
    CHECK(cli({"analyze", "--lcr", pos_file, "--ultimate", ult_file}).code == 0);

    std::string broken = write_temp("ult-broken.json", R"({"transient": []})");
    CHECK(cli({"analyze", "--lcr", pos_file, "--ultimate", broken}).code == 2);
}

TEST_CASE("cli phi") {
    json m = {{"n", 5},
              {"entries", json::parse(R"([
                  ["-inf","-inf","-3","-inf","-inf"],
                  ["0","-inf","-inf","-inf","-inf"],
                  ["-inf","0","-inf","-inf","-inf"],
                  ["-inf","-inf","-1","-inf","2"],
                  ["-inf","-inf","-inf","-inf","-inf"]])")}};
    std::string m_file = write_temp("phi.json", m.dump());
    CliRun r = cli({"phi", "--matrix", m_file, "--json"});
    REQUIRE(r.code == 0);
    json closure = json::parse(r.out);
    CHECK(closure["n"] == 5);
    CHECK(closure["entries"][0][3] == 1);   // the added return arc
    CHECK(closure["entries"][4][0] == -3);  // joined last component

    json loop = {{"n", 1}, {"entries", json::parse(R"([["1"]])")}};
    std::string loop_file = write_temp("phi-loop.json", loop.dump());
    CHECK(cli({"phi", "--matrix", loop_file}).code == 1);  // positive circuit
}

TEST_CASE("cli reports byte-stable json for the example nets") {
    std::vector<std::pair<std::string, std::string>> nets = {
        {"heat", heat_json},
        {"ring", net_to_json(ring_net()).dump()},
        {"two-loop", net_to_json(pteg::testing::two_loop_net(-1, 1)).dump()},
        {"two-loop-54", net_to_json(pteg::testing::two_loop_net(-5, 4)).dump()},
    };
    for (const auto& [name, text] : nets) {
        std::string file = write_temp(name + ".json", text);
        for (const char* semantics : {"loose", "strict"}) {
            CliRun a = cli({"check", "--file", file, "--semantics", semantics, "--json"});
            CliRun b = cli({"check", "--file", file, "--semantics", semantics, "--json"});
            json ja = json::parse(a.out), jb = json::parse(b.out);
            ja["timings"] = 0;
            jb["timings"] = 0;
            REQUIRE(ja.dump() == jb.dump());
        }
    }
}
