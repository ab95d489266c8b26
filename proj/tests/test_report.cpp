#include <doctest.h>

#include "algd/suites.hpp"

using namespace algd;

namespace {

std::vector<Model> small_gallery() {
    std::vector<Model> g;
    g.push_back(load_model_file(std::string(ALGD_MODELS_DIR) + "/so3.model"));
    g.push_back(load_model_file(std::string(ALGD_MODELS_DIR) + "/cot_weighted2.model"));
    return g;
}

SuiteReport normalized(SuiteReport rep) {
    for (auto& c : rep.checks) c.ms = 0;
    return rep;
}

} // namespace

TEST_CASE("report serialization round-trips") {
    SuiteReport rep;
    rep.suite = "dual";
    rep.seed = 42;
    rep.checks.push_back({"a label", "dual.something", 1.25e-11, 1e-9, true, 30, 7});
    rep.checks.push_back({"another", "dual.other", 0.5, 1e-7, false, 12, 0});
    SuiteReport back = report_from_json(to_json(rep));
    CHECK(back == rep);
    CHECK_FALSE(back.all_pass());
}

TEST_CASE("pass flags always mirror residual < tol") {
    SuiteOptions opt;
    opt.seed = 5;
    opt.points = 10;
    SuiteReport rep = run_suite("dual", small_gallery(), opt);
    for (const auto& c : rep.checks) CHECK(c.pass == (c.residual < c.tol));
}

TEST_CASE("same seed gives byte-identical reports up to wall time") {
    SuiteOptions opt;
    opt.seed = 77;
    opt.points = 8;
    auto gallery = small_gallery();
    std::string a = to_json(normalized(run_suite("poisson-pair", gallery, opt)));
    std::string b = to_json(normalized(run_suite("poisson-pair", gallery, opt)));
    CHECK(a == b);
    opt.seed = 78;
    std::string c = to_json(normalized(run_suite("poisson-pair", gallery, opt)));
    CHECK(a != c);
}

TEST_CASE("each suite emits exactly its declared anchor set") {
    SuiteOptions opt;
    opt.seed = 9;
    opt.points = 6;
    auto gallery = small_gallery();
    for (const char* name : {"lifts", "dual", "pair", "poisson-pair", "all"}) {
        SuiteReport rep = run_suite(name, gallery, opt);
        std::vector<std::string> got;
        for (const auto& c : rep.checks) got.push_back(c.anchor);
        std::sort(got.begin(), got.end());
        CHECK(got == suite_anchor_set(name));
    }
    CHECK_THROWS_AS(run_suite("nope", gallery, opt), ConfigError);
}

TEST_CASE("validation reports pass for good models and fail for the corrupted one") {
    SuiteOptions opt;
    opt.seed = 3;
    opt.points = 20;
    std::vector<Model> g;
    g.push_back(load_model_file(std::string(ALGD_MODELS_DIR) + "/so3.model"));
    CHECK(run_validation(g, opt).all_pass());
    g.clear();
    g.push_back(load_model_file(std::string(ALGD_MODELS_DIR) + "/so3_broken.model"));
    SuiteReport rep = run_validation(g, opt);
    CHECK_FALSE(rep.all_pass());
    REQUIRE(rep.checks.size() == 1);
    CHECK(rep.checks[0].residual > 0.5);
}

TEST_CASE("suites skip invalid algebroids rather than report vacuous failures") {
    SuiteOptions opt;
    opt.seed = 13;
    opt.points = 6;
    std::vector<Model> g;
    g.push_back(load_model_file(std::string(ALGD_MODELS_DIR) + "/so3_broken.model"));
    g.push_back(load_model_file(std::string(ALGD_MODELS_DIR) + "/so3.model"));
    SuiteReport rep = run_suite("lifts", g, opt);
    CHECK(rep.all_pass());
}
