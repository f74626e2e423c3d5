#include <catch2/catch_amalgamated.hpp>

#include "sharq/verifier.hpp"

using namespace sharq;

TEST_CASE("trial config validation") {
    TrialConfig bad_trials{42, 0, 10, false};
    CHECK_THROWS_MATCHES(bad_trials.validate(), Error,
                         Catch::Matchers::Predicate<Error>(
                             [](const Error& e) { return e.code() == Err::InvalidConfig; }));
    TrialConfig bad_bound{42, 1, 1, false};
    CHECK_THROWS_AS(bad_bound.validate(), Error);
}

TEST_CASE("qlpair generation") {
    SECTION("deterministic for a fixed state") {
        SplitMix64 a(1), b(1);
        QLPair first = generate_qlpair(a, 10, false);
        QLPair second = generate_qlpair(b, 10, false);
        CHECK(first == second);
    }

    SECTION("small bounds still succeed") {
        SplitMix64 rng(5);
        CHECK_NOTHROW(generate_qlpair(rng, 2, false));
    }

    SECTION("omega mode pins g") {
        SplitMix64 rng(9);
        QLPair ql = generate_qlpair(rng, 10, true);
        CHECK(ql.g() == omega());
    }
}

TEST_CASE("unknown check id") {
    TrialConfig cfg{42, 1, 10, false};
    CHECK_THROWS_MATCHES(run_check("nosuch", cfg), Error,
                         Catch::Matchers::Predicate<Error>(
                             [](const Error& e) { return e.code() == Err::UnknownCheck; }));
}

TEST_CASE("single checks run clean") {
    TrialConfig cfg{42, 3, 10, false};
    for (const std::string& id : check_ids()) {
        CheckReport r = run_check(id, cfg);
        INFO(id << (r.failures.empty() ? "" : (": " + r.failures[0].clause)));
        CHECK(r.pass());
        CHECK(r.instances_run == 3);
    }
}

TEST_CASE("reports are deterministic") {
    TrialConfig cfg{7, 2, 8, false};
    auto first = run_all(cfg);
    auto second = run_all(cfg);
    REQUIRE(first.size() == second.size());
    for (size_t i = 0; i < first.size(); ++i) {
        CHECK(report_to_json(first[i]).dump() == report_to_json(second[i]).dump());
    }
    CHECK(all_pass(first));
}

TEST_CASE("single-check runs reproduce the full-run instances") {
    TrialConfig cfg{11, 2, 8, false};
    auto full = run_all(cfg);
    for (const CheckReport& r : full) {
        CheckReport solo = run_check(r.check_id, cfg);
        CHECK(report_to_json(solo).dump() == report_to_json(r).dump());
    }
}

TEST_CASE("omega mode verifies the specializations") {
    TrialConfig cfg{42, 2, 8, true};
    CheckReport mid = run_check("omega-midpoints", cfg);
    CHECK(mid.pass());
    CheckReport center = run_check("omega-center", cfg);
    CHECK(center.pass());
    CheckReport prop1 = run_check("prop1", cfg);
    CHECK(prop1.pass());
}

TEST_CASE("report serialization shape") {
    TrialConfig cfg{3, 1, 8, false};
    CheckReport r = run_check("prop4", cfg);
    json j = report_to_json(r);
    CHECK(j["check_id"] == "prop4");
    CHECK(j["instances_run"] == 1);
    CHECK(j["pass"] == true);
    CHECK(j["failures"].is_array());
    CHECK(j["degeneracies"].is_array());
}

TEST_CASE("registered check ids") {
    auto ids = check_ids();
    CHECK(ids.size() == 22);
    for (const char* expected :
         {"pappus", "desargues", "pascal-fwd", "pappus-desargues-involution", "self-polar",
          "problem2", "problem3", "problem4.1", "problem4.2", "thm6.1", "thm6.2", "thm6.3",
          "prop1", "prop2", "prop3", "prop4", "thm7", "thm8", "prop5", "omega-midpoints",
          "omega-center", "cases48"}) {
        CHECK(std::find(ids.begin(), ids.end(), expected) != ids.end());
    }
}
