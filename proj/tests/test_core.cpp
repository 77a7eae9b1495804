#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "ringlead/protocols.hpp"
#include "ringlead/simulator.hpp"
#include "ringlead/transcript_io.hpp"

using namespace ringlead;

namespace
{
    SimResult run_basic(int n, std::uint64_t seed, ScheduleKind sched = ScheduleKind::RoundRobin)
    {
        RingConfig cfg;
        cfg.n = n;
        cfg.schedule = sched;
        cfg.schedule_seed = 7;
        auto s = honest_basic_lead(n, seed);
        return simulate(cfg, s);
    }

    // Honest strategies with pinned secrets, for hand-computed cases.
    class FixedBasic final : public Strategy
    {
    public:
        FixedBasic(int n, Value d) : m_n(n), m_d(mod_n(d, n)) {}
        void on_wake(Emitter &out) override { out.send({m_d, MsgTag::Plain}); }
        void on_receive(Emitter &out, const Message &msg) override
        {
            const Value v = mod_n(msg.value, m_n);
            ++m_recvs;
            m_sum = mod_n(m_sum + v, m_n);
            if (m_recvs < m_n)
            {
                out.send({v, MsgTag::Plain});
            }
            else if (v == m_d)
            {
                out.terminate(m_sum);
            }
            else
            {
                out.terminate_bot();
            }
        }

    private:
        int m_n;
        Value m_d;
        Value m_sum = 0;
        int m_recvs = 0;
    };

    std::vector<StrategyPtr> fixed_basic(int n, const std::vector<Value> &d)
    {
        std::vector<StrategyPtr> s;
        for (int p = 0; p < n; ++p)
        {
            s.push_back(std::make_unique<FixedBasic>(n, d[static_cast<std::size_t>(p)]));
        }
        return s;
    }

    // An adversary that never sends anything.
    class Silent final : public Strategy
    {
    public:
        void on_receive(Emitter &, const Message &) override {}
    };
}

TEST_CASE("outcome_of classifies terminal states")
{
    auto term = [](Value v) { return TerminalOutput{true, false, v}; };
    const TerminalOutput bot{true, true, 0};
    const TerminalOutput running{};

    CHECK(outcome_of({term(5), term(5), term(5)}) == Outcome::make_elected(5));
    CHECK(outcome_of({term(5), term(5), bot, term(5)}) == Outcome::make_fail(FailReason::Abort));
    CHECK(outcome_of({term(5), term(6), term(5), term(5)}) ==
          Outcome::make_fail(FailReason::Disagreement));
    CHECK(outcome_of({term(5), running, term(5)}) ==
          Outcome::make_fail(FailReason::Nontermination));
    // abort takes precedence over disagreement and nontermination
    CHECK(outcome_of({term(5), term(6), bot, running}) ==
          Outcome::make_fail(FailReason::Abort));
}

TEST_CASE("basic lead honest: mod-sum of pinned inputs")
{
    RingConfig cfg;
    cfg.n = 3;
    auto s = fixed_basic(3, {1, 2, 3});
    auto r = simulate(cfg, s);
    CHECK(r.outcome == Outcome::make_elected(0)); // (1+2+3) mod 3
    CHECK(r.quiescent);

    cfg.n = 4;
    auto s2 = fixed_basic(4, {1, 1, 1, 1});
    CHECK(simulate(cfg, s2).outcome == Outcome::make_elected(0)); // 4 mod 4

    cfg.n = 2;
    auto s3 = fixed_basic(2, {0, 0});
    CHECK(simulate(cfg, s3).outcome == Outcome::make_elected(0));
}

TEST_CASE("a silent adversary yields quiescent nontermination")
{
    RingConfig cfg;
    cfg.n = 4;
    cfg.coalition = {2};
    auto s = honest_basic_lead(4, 11);
    s[2] = std::make_unique<Silent>();
    auto r = simulate(cfg, s);
    CHECK_FALSE(r.outcome.elected);
    CHECK(r.outcome.reason == FailReason::Nontermination);
    CHECK(r.quiescent);
    CHECK_FALSE(r.budget_exhausted);
}

TEST_CASE("FIFO: received value sequence equals sent sequence per link")
{
    auto r = run_basic(5, 99);
    for (int p = 0; p < 5; ++p)
    {
        auto sent = r.transcript.sends_of(p);
        auto got = r.transcript.recvs_of((p + 1) % 5);
        REQUIRE(sent.size() == got.size());
        for (std::size_t i = 0; i < sent.size(); ++i)
        {
            CHECK(sent[i].value == got[i].value);
            CHECK(sent[i].ordinal == got[i].ordinal);
        }
    }
}

TEST_CASE("determinism: identical inputs give identical transcripts")
{
    auto a = run_basic(6, 1234);
    auto b = run_basic(6, 1234);
    CHECK(transcript_to_jsonl(a.transcript) == transcript_to_jsonl(b.transcript));

    auto c = run_basic(6, 1235);
    CHECK(transcript_to_jsonl(a.transcript) != transcript_to_jsonl(c.transcript));
}

TEST_CASE("schedule obliviousness: outcome identical under both schedulers")
{
    for (std::uint64_t seed = 0; seed < 20; ++seed)
    {
        auto rr = run_basic(5, seed, ScheduleKind::RoundRobin);
        auto rnd = run_basic(5, seed, ScheduleKind::SeededRandom);
        CHECK(rr.outcome == rnd.outcome);
    }
}

TEST_CASE("quiescence: honest a-lead sends exactly n messages per processor")
{
    const int n = 6;
    RingConfig cfg;
    cfg.n = n;
    auto s = honest_alead(n, 0, 5);
    auto r = simulate(cfg, s);
    CHECK(r.outcome.elected);
    CHECK(r.quiescent);
    for (int p = 0; p < n; ++p)
    {
        CHECK(r.transcript.sends_of(p).size() == static_cast<std::size_t>(n));
        CHECK(r.transcript.recvs_of(p).size() == static_cast<std::size_t>(n));
    }
}

TEST_CASE("quiescence: honest phase sends exactly 2n messages per processor")
{
    const int n = 8;
    RingConfig cfg;
    cfg.n = n;
    PhaseParams params;
    params.l = 2;
    params.m = 128;
    params.fseed = 42;
    auto s = honest_phase(n, params, false, 5);
    auto r = simulate(cfg, s);
    CHECK(r.outcome.elected);
    for (int p = 0; p < n; ++p)
    {
        CHECK(r.transcript.sends_of(p).size() == static_cast<std::size_t>(2 * n));
        CHECK(r.transcript.recvs_of(p).size() == static_cast<std::size_t>(2 * n));
    }
}

TEST_CASE("transcript jsonl round-trips")
{
    auto r = run_basic(4, 3);
    const std::string text = transcript_to_jsonl(r.transcript);
    Transcript back = transcript_from_jsonl(text);
    CHECK(back.n == r.transcript.n);
    REQUIRE(back.events.size() == r.transcript.events.size());
    for (std::size_t i = 0; i < back.events.size(); ++i)
    {
        CHECK(back.events[i].seq == r.transcript.events[i].seq);
        CHECK(back.events[i].proc == r.transcript.events[i].proc);
        CHECK(back.events[i].ordinal == r.transcript.events[i].ordinal);
        CHECK(back.events[i].value == r.transcript.events[i].value);
    }
    CHECK(outcome_of(back.outputs) == r.outcome);
}
