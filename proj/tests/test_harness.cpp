#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <hh/harness.hpp>

#include <json.hpp>

#include <fstream>
#include <regex>

using namespace hh;

namespace {

std::string strip_timestamp(std::string s) {
    static const std::regex ts("\"timestamp\":\"[^\"]*\"");
    return std::regex_replace(s, ts, "\"timestamp\":\"\"");
}

}  // namespace

TEST_CASE("builtin corpus covers the required entries") {
    auto corpus = builtin_corpus();
    auto find = [&](const std::string& name) -> const CorpusEntry& {
        for (const auto& e : corpus)
            if (e.name == name) return e;
        throw std::runtime_error("missing " + name);
    };
    CHECK(find("x2y2").expected_class == ExpectedClass::CoordinateConvex);
    CHECK(find("cubes").expected_class == ExpectedClass::CoordinateQuasiConvexOnly);
    CHECK(find("negsq").expected_class == ExpectedClass::Neither);
    // offset rectangles present
    CHECK(find("x2y2_off").rect.a != 0.0);
    CHECK(find("x2y2_off").rect.c != 0.0);
    // every expression parses
    for (const auto& e : corpus) CHECK_NOTHROW(parse(e.expression));
}

TEST_CASE("classify suite confirms every expected class") {
    Config cfg;
    cfg.suites = {"classify"};
    RunResult r = run_suite(cfg, builtin_corpus());
    CHECK(r.exit_code == 0);
    auto doc = nlohmann::json::parse(r.report.dump());
    for (const auto& e : doc["entries"]) {
        CHECK(e["classify"]["matches_expected"].get<bool>());
        CHECK(e["classify"]["observed_class"] == e["expected_class"]);
    }
}

TEST_CASE("expected-fail machinery: errata suite exits 0 with printed-(iv) recorded") {
    Config cfg;
    cfg.suites = {"errata"};
    cfg.entries = {"x2y2"};
    RunResult r = run_suite(cfg, builtin_corpus());
    CHECK(r.exit_code == 0);
    auto doc = nlohmann::json::parse(r.report.dump());
    CHECK(doc["entries"][0]["errata"]["iv_printed"]["status"] == "fail");
    CHECK(doc["entries"][0]["errata"]["iv_corrected"]["status"] == "pass");
    bool found = false;
    for (const auto& f : doc["errata"])
        if (f["finding"] == "mapping_G_integral_inequality_printed_form") found = true;
    CHECK(found);
}

TEST_CASE("reports are byte-identical modulo timestamp for a fixed seed") {
    Config cfg;
    cfg.suites = {"classify", "lemma1", "bounds"};
    cfg.entries = {"x2y2", "negsq"};
    cfg.seed = 42;
    std::string a = run_suite(cfg, builtin_corpus()).report.dump();
    std::string b = run_suite(cfg, builtin_corpus()).report.dump();
    CHECK(strip_timestamp(a) == strip_timestamp(b));
}

TEST_CASE("report schema round-trips through a JSON parser") {
    Config cfg;
    cfg.suites = {"lemma1", "chain"};
    cfg.entries = {"x2y2"};
    RunResult r = run_suite(cfg, builtin_corpus());
    std::string dumped = r.report.dump();
    auto doc = nlohmann::json::parse(dumped);
    CHECK(doc["meta"]["seed"] == 42);
    CHECK(doc["entries"].size() == 1);
    // 17-significant-digit doubles survive the round trip exactly
    double residual = doc["entries"][0]["lemma1"]["residual"].get<double>();
    IdentityCheck direct = lemma1_residual(parse("x^2*y^2"), Rect(0, 1, 0, 1), cfg.quad_tol);
    CHECK(residual == direct.residual);
    // re-serializing the parsed document changes nothing semantically
    CHECK(nlohmann::json::parse(dumped) == nlohmann::json::parse(doc.dump()));
}

TEST_CASE("csv summary has the documented columns") {
    Config cfg;
    cfg.suites = {"lemma1"};
    cfg.entries = {"xy"};
    std::string csv;
    run_suite_with_csv(cfg, builtin_corpus(), csv);
    CHECK(csv.rfind("entry,suite,lhs,rhs,margin,status\n", 0) == 0);
    CHECK(csv.find("xy,lemma1,") != std::string::npos);
    CHECK(csv.find("pass") != std::string::npos);
}

TEST_CASE("config validation and file loading") {
    Config bad;
    bad.quad_tol = -1;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    Config bad2;
    bad2.suites = {"nonsense"};
    CHECK_THROWS_AS(bad2.validate(), ConfigError);

    std::string path = "test_config.tmp";
    {
        std::ofstream out(path);
        out << "# comment\n tol = 1e-8 \nseed=7\ntrials=2000\nsuite=lemma1\n";
    }
    Config cfg;
    load_config_file(path, cfg);
    CHECK(cfg.quad_tol == 1e-8);
    CHECK(cfg.seed == 7);
    CHECK(cfg.trials == 2000);
    CHECK(cfg.suites == std::vector<std::string>{"lemma1"});
    {
        std::ofstream out(path);
        out << "unknown_key=3\n";
    }
    Config cfg2;
    CHECK_THROWS_AS(load_config_file(path, cfg2), ConfigError);
    std::remove(path.c_str());
}

TEST_CASE("unknown entry selection is a config error") {
    Config cfg;
    cfg.entries = {"nope"};
    CHECK_THROWS_AS(run_suite(cfg, builtin_corpus()), ConfigError);
}
