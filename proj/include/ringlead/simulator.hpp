#pragma once

#include <deque>
#include <vector>

#include "ringlead/core.hpp"

namespace ringlead
{
    struct SimResult
    {
        Transcript transcript;
        Outcome outcome;

        // Diagnostics for Fail(nontermination): quiescent deadlock
        // (no deliverable message, someone unterminated) vs budget cutoff.
        bool budget_exhausted = false;
        bool quiescent = false;
    };

    // Event-driven simulation of the unidirectional ring with FIFO links.
    //
    // The scheduler is oblivious: its choice sequence depends only on the
    // seed and on which links currently hold a deliverable message, never on
    // message values. On this topology every schedule yields the same
    // outcome; the tests assert it by running both schedulers.
    inline SimResult simulate(const RingConfig &config, std::vector<StrategyPtr> &strategies)
    {
        config.validate();
        const int n = config.n;
        if (static_cast<int>(strategies.size()) != n)
        {
            throw std::invalid_argument("simulate: need one strategy per processor");
        }

        SimResult result;
        result.transcript.n = n;
        result.transcript.outputs.assign(n, TerminalOutput{});

        // link[p] holds messages sent by p, not yet received by p+1.
        // A link is deliverable when it is non-empty and its target has not
        // terminated; the count is maintained incrementally so the loop does
        // not rescan the ring per event.
        std::vector<std::deque<Message>> link(n);
        std::vector<int> sent_count(n, 0);
        std::vector<int> recv_count(n, 0);
        int ready_links = 0;

        auto link_ready = [&](int from) {
            return !link[static_cast<std::size_t>(from)].empty() &&
                   !result.transcript.outputs[static_cast<std::size_t>((from + 1) % n)].terminated;
        };

        std::uint64_t seq = 0;
        const std::uint64_t budget = config.step_budget();

        class LoggingEmitter final : public Emitter
        {
        public:
            LoggingEmitter(SimResult &res, std::vector<std::deque<Message>> &links,
                           std::vector<int> &sends, int &ready, int n, ProcessorId p,
                           std::uint64_t &seq_ref, bool record)
                : m_res(res), m_links(links), m_sends(sends), m_ready(ready), m_n(n), m_proc(p),
                  m_seq(seq_ref), m_record(record)
            {
            }

            void send(Message m) override
            {
                auto &t = m_res.transcript.outputs[static_cast<std::size_t>(m_proc)];
                if (t.terminated)
                {
                    throw std::logic_error("strategy sent after terminating");
                }
                Event e;
                e.seq = m_seq++;
                e.kind = EventKind::Send;
                e.proc = m_proc;
                e.ordinal = ++m_sends[static_cast<std::size_t>(m_proc)];
                e.value = m.value;
                e.tag = m.tag;
                if (m_record)
                {
                    m_res.transcript.events.push_back(e);
                }

                auto &q = m_links[static_cast<std::size_t>(m_proc)];
                const bool was_empty = q.empty();
                q.push_back(m);
                if (was_empty &&
                    !m_res.transcript.outputs[static_cast<std::size_t>((m_proc + 1) % m_n)].terminated)
                {
                    ++m_ready;
                }
            }

            void terminate(Value output) override { finish(false, output); }
            void terminate_bot() override { finish(true, 0); }

        private:
            void finish(bool aborted, Value output)
            {
                auto &t = m_res.transcript.outputs[static_cast<std::size_t>(m_proc)];
                if (t.terminated)
                {
                    return;
                }
                t.terminated = true;
                t.aborted = aborted;
                t.value = output;
                // the incoming link stops being deliverable
                if (!m_links[static_cast<std::size_t>((m_proc + m_n - 1) % m_n)].empty())
                {
                    --m_ready;
                }
            }

            SimResult &m_res;
            std::vector<std::deque<Message>> &m_links;
            std::vector<int> &m_sends;
            int &m_ready;
            int m_n;
            ProcessorId m_proc;
            std::uint64_t &m_seq;
            bool m_record;
        };

        // Wake phase, fixed order. Strategies that do not wake spontaneously
        // simply emit nothing here.
        for (ProcessorId p = 0; p < n; ++p)
        {
            LoggingEmitter em(result, link, sent_count, ready_links, n, p, seq, config.record_events);
            strategies[p]->on_wake(em);
        }

        RandomString sched_rng(derive_seed(config.schedule_seed, 0x5ced));
        int rr_cursor = 0;

        while (true)
        {
            if (seq >= budget)
            {
                result.budget_exhausted = true;
                break;
            }
            if (ready_links == 0)
            {
                result.quiescent = true;
                break;
            }

            int from;
            if (config.schedule == ScheduleKind::RoundRobin)
            {
                while (!link_ready(rr_cursor))
                {
                    rr_cursor = (rr_cursor + 1) % n;
                }
                from = rr_cursor;
                rr_cursor = (rr_cursor + 1) % n;
            }
            else
            {
                // Rejection sampling over link indices: a function of the
                // seed and the structural readiness pattern only.
                do
                {
                    from = static_cast<int>(sched_rng.next_below(n));
                } while (!link_ready(from));
            }

            const ProcessorId to = (from + 1) % n;
            Message m = link[static_cast<std::size_t>(from)].front();
            link[static_cast<std::size_t>(from)].pop_front();
            if (link[static_cast<std::size_t>(from)].empty())
            {
                --ready_links;
            }

            Event e;
            e.seq = seq++;
            e.kind = EventKind::Recv;
            e.proc = to;
            e.ordinal = ++recv_count[static_cast<std::size_t>(to)];
            e.value = m.value;
            e.tag = m.tag;
            if (config.record_events)
            {
                result.transcript.events.push_back(e);
            }

            LoggingEmitter em(result, link, sent_count, ready_links, n, to, seq, config.record_events);
            strategies[static_cast<std::size_t>(to)]->on_receive(em, m);
        }

        result.outcome = outcome_of(result.transcript.outputs);
        return result;
    }
}
