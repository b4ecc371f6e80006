#include <doctest.h>

#include <sstream>

#include "mdg/cli.hpp"
#include "mdg/errors.hpp"
#include "mdg/serialize.hpp"

using namespace mdg;
using namespace mdg::cli;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "mdg");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    std::ostringstream out, err;
    const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

ExperimentConfig small() {
    ExperimentConfig c;
    c.grid = 64;
    c.threads = 1;
    return c;
}

}  // namespace

TEST_CASE("generator set round trip") {
    const auto w = weight_function(ModularDistanceParams::make(2, 5, 2), 3);
    const auto doc = to_json(w);
    const auto parsed = parse_generator_set(Json::parse(doc.dump()));
    CHECK(parsed.params == w.params());
    CHECK(parsed.n == 3);
    const auto pts = w.points();
    REQUIRE(parsed.entries.size() == pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        CHECK(parsed.entries[i].x == pts[i].x);
        CHECK(parsed.entries[i].weight == pts[i].weight);
    }
    CHECK(doc["entries"][0]["x"][0].is_string());
}

TEST_CASE("fractions") {
    CHECK(to_fraction_string(Rational(2)) == "2/1");
    CHECK(to_fraction_string(Rational(-1, 6)) == "-1/6");
    CHECK(parse_fraction("3/9") == Rational(1, 3));
    CHECK(parse_fraction("7") == 7);
    CHECK_THROWS_AS(parse_fraction("1/0"), InvalidArgument);
    CHECK_THROWS_AS(parse_fraction("x/2"), InvalidArgument);
}

TEST_CASE("big coordinates serialize as strings") {
    const auto w = weight_function(ModularDistanceParams::make(4, 5, 3), 2);
    const auto doc = to_json(w);
    const std::string y = doc["entries"].back()["x"][1].get<std::string>();
    CHECK(BigInt(y) == w.generators().back().vector.y);
}

TEST_CASE("generators command") {
    auto c = small();
    c.n = 1;
    const auto r = cmd_generators(c);
    CHECK(r.exit_code == kExitOk);
    const auto doc = Json::parse(r.output);
    CHECK(doc["entries"].size() == 4);
    CHECK(doc["entries"][0]["x"] == Json::array({"0", "-9"}));
    CHECK(doc["entries"][0]["w"] == "1/2");

    c.format = Format::Csv;
    const auto csv = cmd_generators(c);
    CHECK(csv.output.rfind("t,sign,j,x,y,w\n0,1,0,0,-9,1/2\n", 0) == 0);

    c.p = 2;
    c.q = 2;
    const auto bad = cmd_generators(c);
    CHECK(bad.exit_code == kExitConfigError);
    CHECK(bad.diagnostics.find("p must be smaller than q") != std::string::npos);
}

TEST_CASE("bound command") {
    auto c = small();
    c.n_sweep = {4, 8, 16, 32};
    const auto r = cmd_bound(c);
    REQUIRE(r.exit_code == kExitOk);
    const auto doc = Json::parse(r.output);
    CHECK(doc["certificates"].size() == 4);
    const double last = doc["certificates"][3]["alpha_ratio_bound"].get<double>();
    CHECK(std::abs(last - 0.5) <= 0.1);
    CHECK(doc["certificates"][0]["sup"] == "2/1");
    CHECK(doc["certificates"][0]["chi_label"] == "heuristic");
    CHECK(doc["trend"]["best_chi_lower_bound"] == 2);

    auto one = small();
    one.n = 1;
    one.grid = 2;
    const auto r1 = cmd_bound(one);
    CHECK(Json::parse(r1.output)["certificates"][0]["sup"] == "2/1");
}

TEST_CASE("embed-verify command") {
    auto c = small();
    const auto r = cmd_embed_verify(c);
    CHECK(r.exit_code == kExitOk);
    CHECK(r.output.rfind("t,sign,j,x,y,distance,residue,pass\n", 0) == 0);
    CHECK(r.output.find(",false") == std::string::npos);
}

TEST_CASE("triangle-check command") {
    auto c = small();
    const auto r = cmd_triangle_check(c);
    CHECK(r.exit_code == kExitOk);
    CHECK(Json::parse(r.output)["verdict"] == "pass");
    c.max_scale = 0;
    CHECK(cmd_triangle_check(c).exit_code == kExitConfigError);
}

TEST_CASE("quotient-alpha command") {
    auto c = small();
    c.n = 1;
    c.moduli = {5};
    const auto r = cmd_quotient_alpha(c);
    CHECK(r.exit_code == kExitOk);
    const auto doc = Json::parse(r.output);
    CHECK(doc["alpha"] == 10);
    CHECK(doc["density"] == "2/5");
    CHECK(doc["dominance_ok"] == true);

    c.moduli = {2};
    CHECK(cmd_quotient_alpha(c).exit_code == kExitConfigError);
    c.moduli = {11};
    const auto big = cmd_quotient_alpha(c);
    CHECK(big.exit_code == kExitConfigError);
    CHECK(big.diagnostics.find("InstanceTooLarge") != std::string::npos);

    c.moduli = {5, 7};
    CHECK(Json::parse(cmd_quotient_alpha(c).output).is_array());
}

TEST_CASE("report command is deterministic") {
    auto c = small();
    c.n_sweep = {2, 4};
    c.moduli = {3, 5};
    const auto a = cmd_report(c);
    const auto b = cmd_report(c);
    CHECK(a.exit_code == kExitOk);
    CHECK(a.output == b.output);
    const auto doc = Json::parse(a.output);
    CHECK(doc["overall"] == "pass");
    CHECK(doc["quotients"][0].contains("skipped"));
    CHECK(doc["verdicts"]["triangle_free"] == "pass");
}

TEST_CASE("config documents") {
    ExperimentConfig c;
    apply_config_document(Json::parse(R"({"p": 2, "q": 3, "n_sweep": [1, 2], "format": "csv"})"), c);
    CHECK(c.p == 2);
    CHECK(c.q == 3);
    CHECK(c.sweep() == std::vector<std::int64_t>{1, 2});
    CHECK(c.format == Format::Csv);
    CHECK_THROWS_AS(apply_config_document(Json::parse(R"({"bogus": 1})"), c), InvalidArgument);
    CHECK_THROWS_AS(apply_config_document(Json::parse(R"({"p": "x"})"), c), InvalidArgument);
    CHECK_THROWS_AS(apply_config_document(Json::parse("[]"), c), InvalidArgument);
}

TEST_CASE("argv front end") {
    const auto ok = invoke({"generators", "--p", "1", "--q", "2", "--k", "1", "--n", "1"});
    CHECK(ok.code == kExitOk);
    CHECK(Json::parse(ok.out)["entries"].size() == 4);

    CHECK(invoke({"generators", "--p", "2", "--q", "2"}).code == kExitConfigError);
    CHECK(invoke({"generators", "--bogus"}).code == kExitConfigError);
    CHECK(invoke({}).code == kExitConfigError);
    CHECK(invoke({"quotient-alpha", "--n", "1", "--m", "2"}).code == kExitConfigError);
    CHECK(invoke({"quotient-alpha", "--n", "1", "--m=5"}).code == kExitOk);
    CHECK(invoke({"generators", "--config", "/nonexistent/cfg.json"}).code == kExitConfigError);
    CHECK(invoke({"generators", "--format", "csv", "--n", "1"}).out.rfind("t,sign", 0) == 0);
}
