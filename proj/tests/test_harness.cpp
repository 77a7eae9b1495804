#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ringlead/harness.hpp"

using namespace ringlead;

TEST_CASE("tv_distance hand values")
{
    CHECK(tv_distance({5, 5, 5, 5}, 4) == doctest::Approx(0.0));
    CHECK(tv_distance({4, 0, 0, 0}, 4) == doctest::Approx(0.75));
    CHECK(tv_distance({3, 1, 0, 0}, 4) == doctest::Approx(0.5));
    CHECK_THROWS(tv_distance({0, 0}, 2));
    CHECK_THROWS(tv_distance({1, 1, 1}, 4));
}

TEST_CASE("single-trial report")
{
    RunSpec s;
    s.protocol = ProtocolId::BasicLead;
    s.n = 4;
    auto r = run_trials(s, 1, 99);
    CHECK(r.trials == 1);
    CHECK(r.valid_total() + r.fail_total() == 1);
    CHECK(r.valid_total() == 1);
}

TEST_CASE("reports are reproducible modulo wall time")
{
    RunSpec s;
    s.protocol = ProtocolId::ALeadUni;
    s.n = 6;
    auto a = run_trials(s, 500, 42);
    auto b = run_trials(s, 500, 42);
    auto strip = [](TrialReport r) {
        r.wall_seconds = 0;
        return report_to_json(r).dump();
    };
    CHECK(strip(a) == strip(b));

    auto c = run_trials(s, 500, 43);
    CHECK(strip(a) != strip(c));
}

TEST_CASE("honest run accounting: histogram plus fails equals trials")
{
    RunSpec s;
    s.protocol = ProtocolId::ALeadUni;
    s.n = 8;
    auto r = run_trials(s, 2000, 7);
    CHECK(r.valid_total() + r.fail_total() == r.trials);
    CHECK(r.fail_total() == 0);
    CHECK(r.empirical_bias() >= -1.0 / s.n);
    CHECK(r.tv_to_uniform() < 0.1);
}

TEST_CASE("attack run with oracle cross-check")
{
    RunSpec s;
    s.protocol = ProtocolId::ALeadUni;
    s.attack = AttackId::Cubic;
    s.n = 15;
    s.k = 3;
    s.target = 11;
    s.oracle_check = true;
    auto r = run_trials(s, 50, 5);
    CHECK(r.success_rate() == doctest::Approx(1.0));
    CHECK(r.oracle_checked == 50);
    CHECK(r.oracle_agreed == 50);
}

TEST_CASE("invalid configuration fails before any trial")
{
    RunSpec s;
    s.protocol = ProtocolId::PhaseSum;
    s.attack = AttackId::SumAbuse;
    s.n = 41; // non-integral segment length
    s.phase = PhaseParams::defaults(41, 0);
    CHECK_THROWS(run_trials(s, 10, 1));
}

TEST_CASE("csv and table emission contain the histogram")
{
    RunSpec s;
    s.protocol = ProtocolId::BasicLead;
    s.n = 4;
    auto r = run_trials(s, 100, 3);
    const std::string csv = report_to_csv(r);
    CHECK(csv.find("outcome,count") == 0);
    CHECK(csv.find("abort,") != std::string::npos);
    const std::string table = report_to_table(r);
    CHECK(table.find("outcome histogram:") != std::string::npos);
}
