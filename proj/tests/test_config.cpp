#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "borelkit/config.hpp"

using namespace borelkit;
using nlohmann::json;

TEST_CASE("complex parsing") {
    CHECK(parse_complex(json("1.5,-2"), "x") == cplx(1.5, -2.0));
    CHECK(parse_complex(json(3.0), "x") == cplx(3.0, 0.0));
    CHECK(parse_complex(json("0.25"), "x") == cplx(0.25, 0.0));
    CHECK_THROWS_AS(parse_complex(json("1,2x"), "x"), ConfigError);
    CHECK_THROWS_AS(parse_complex(json(true), "x"), ConfigError);
    CHECK(parse_complex(json(format_complex({0.1, -0.3})), "x") == cplx(0.1, -0.3));
}

TEST_CASE("empty config gives desk defaults") {
    auto rc = parse_config(json::object());
    auto t1 = theorem1_config(rc);
    auto desk = desk_theorem1_config();
    CHECK(t1.spec.S == desk.spec.S);
    CHECK(t1.ladder.n == desk.ladder.n);
    CHECK(rc.seed == 20240601u);
}

TEST_CASE("schema errors are reported") {
    CHECK_THROWS_AS(parse_config(json{{"bogus", 1}}), ConfigError);
    CHECK_THROWS_AS(parse_config(json{{"theorem1", {{"ladder", {{"n", "x"}}}}}}), ConfigError);
    CHECK_THROWS_AS(parse_config(json{{"problem1", {{"A", {{{"k", {0, 1}}}}}}}}), ConfigError);
    CHECK_THROWS_AS(parse_config(json{{"bfi", {{"theta", 0.5}}}}), ConfigError);
    CHECK_THROWS_AS(parse_config(json{{"tol", -1.0}}), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("problem blocks and overrides") {
    json doc = json::parse(R"({
        "seed": 7, "workers": 2,
        "problem1": {"S": 2, "b": 2, "P_roots": ["0.5,0", "1,1"],
                     "A": [{"k": [0, 1, 0], "c": [0.9, "0.5,0.1"]}]},
        "strips": {"worked": {"n": 1, "eta": 0.1, "eta1": 0.05}},
        "covering": {"example": {"radius": 1.0}},
        "theorem1": {"ladder": {"n": 10}, "t": "0.2,0.1"}
    })");
    auto rc = parse_config(doc);
    REQUIRE(rc.problem1);
    CHECK(rc.problem1->P.size() == 3);
    CHECK(rc.problem1->A[0].k1 == 1);
    CHECK(rc.problem1->A[0].c.constant[1] == cplx(0.5, 0.1));
    auto t1 = theorem1_config(rc);
    CHECK(t1.ladder.n == 10);
    CHECK(t1.t == cplx(0.2, 0.1));
    CHECK(t1.workers == 2);
    CHECK(rc.seed == 7u);
}

TEST_CASE("hash is stable and key-order independent") {
    json a = json::parse(R"({"seed": 1, "name": "x"})");
    json b = json::parse(R"({"name": "x", "seed": 1})");
    CHECK(config_hash(a) == config_hash(b));
    CHECK(config_hash(a).size() == 16);
    CHECK(config_hash(a) != config_hash(json::parse(R"({"seed": 2, "name": "x"})")));
}

TEST_CASE("load from file") {
    auto p = std::filesystem::temp_directory_path() / "borelkit_cfg_test.json";
    { std::ofstream(p) << R"({"bfi": {"a": 1.0, "s": ["2,1", 3]}})"; }
    auto rc = load_config(p);
    auto c = bfi_config(rc);
    CHECK(c.a == 1.0);
    CHECK(c.s_samples.size() == 2);
    { std::ofstream(p) << "{not json"; }
    CHECK_THROWS_AS(load_config(p), ConfigError);
    std::filesystem::remove(p);
}
