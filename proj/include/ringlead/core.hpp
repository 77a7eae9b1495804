#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ringlead/rng.hpp"

namespace ringlead
{
    using ProcessorId = int;
    using Value = std::int64_t;

    // Message kind on the wire. A-LEAD-family protocols use Plain payloads;
    // PhaseAsyncLead distinguishes data and validation messages and a
    // processor aborts when the kind does not match the expected parity.
    enum class MsgTag : std::uint8_t
    {
        Plain = 0,
        Data = 1,
        Validation = 2,
    };

    struct Message
    {
        Value value = 0;
        MsgTag tag = MsgTag::Plain;
    };

    enum class EventKind : std::uint8_t
    {
        Send = 0,
        Recv = 1,
    };

    // One transcript entry. `ordinal` is the 1-based per-(proc, kind) counter,
    // so send(p, i) / recv(p, i) from the analysis map onto transcript rows.
    struct Event
    {
        std::uint64_t seq = 0;
        EventKind kind = EventKind::Send;
        ProcessorId proc = 0;
        int ordinal = 0;
        Value value = 0;
        MsgTag tag = MsgTag::Plain;
    };

    // Terminal state of one processor: not yet terminated, aborted (bottom),
    // or terminated with a value.
    struct TerminalOutput
    {
        bool terminated = false;
        bool aborted = false;
        Value value = 0;
    };

    struct Transcript
    {
        int n = 0;
        std::vector<Event> events;
        std::vector<TerminalOutput> outputs;

        std::vector<Event> sends_of(ProcessorId p) const
        {
            std::vector<Event> out;
            for (const auto &e : events)
            {
                if (e.kind == EventKind::Send && e.proc == p)
                {
                    out.push_back(e);
                }
            }
            return out;
        }

        std::vector<Event> recvs_of(ProcessorId p) const
        {
            std::vector<Event> out;
            for (const auto &e : events)
            {
                if (e.kind == EventKind::Recv && e.proc == p)
                {
                    out.push_back(e);
                }
            }
            return out;
        }
    };

    enum class FailReason : std::uint8_t
    {
        Abort = 0,
        Disagreement = 1,
        Nontermination = 2,
    };

    struct Outcome
    {
        bool elected = false;
        Value leader = 0;
        FailReason reason = FailReason::Nontermination;

        static Outcome make_elected(Value o)
        {
            Outcome r;
            r.elected = true;
            r.leader = o;
            return r;
        }

        static Outcome make_fail(FailReason why)
        {
            Outcome r;
            r.elected = false;
            r.reason = why;
            return r;
        }

        bool operator==(const Outcome &o) const
        {
            if (elected != o.elected)
            {
                return false;
            }
            return elected ? leader == o.leader : reason == o.reason;
        }
    };

    inline std::string to_string(const Outcome &o)
    {
        if (o.elected)
        {
            return "Elected(" + std::to_string(o.leader) + ")";
        }
        switch (o.reason)
        {
        case FailReason::Abort: return "Fail(abort)";
        case FailReason::Disagreement: return "Fail(disagreement)";
        case FailReason::Nontermination: return "Fail(nontermination)";
        }
        return "Fail(?)";
    }

    // Global outcome from per-processor terminal states.
    // Precedence: abort, then disagreement, then nontermination.
    inline Outcome outcome_of(const std::vector<TerminalOutput> &outputs)
    {
        for (const auto &t : outputs)
        {
            if (t.terminated && t.aborted)
            {
                return Outcome::make_fail(FailReason::Abort);
            }
        }
        bool have = false;
        Value first = 0;
        for (const auto &t : outputs)
        {
            if (!t.terminated)
            {
                continue;
            }
            if (!have)
            {
                have = true;
                first = t.value;
            }
            else if (t.value != first)
            {
                return Outcome::make_fail(FailReason::Disagreement);
            }
        }
        for (const auto &t : outputs)
        {
            if (!t.terminated)
            {
                return Outcome::make_fail(FailReason::Nontermination);
            }
        }
        return Outcome::make_elected(first);
    }

    enum class ScheduleKind : std::uint8_t
    {
        RoundRobin = 0,
        SeededRandom = 1,
    };

    struct RingConfig
    {
        int n = 0;
        ProcessorId origin = 0;
        std::vector<ProcessorId> coalition;
        ScheduleKind schedule = ScheduleKind::RoundRobin;
        std::uint64_t schedule_seed = 0;
        bool record_events = true; // per-event transcript rows (outputs always kept)

        // Hard safety net on top of quiescence detection.
        std::uint64_t step_budget() const
        {
            return 64ULL * static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n);
        }

        void validate() const
        {
            if (n < 2)
            {
                throw std::invalid_argument("RingConfig: ring size must be >= 2");
            }
            if (origin < 0 || origin >= n)
            {
                throw std::invalid_argument("RingConfig: origin out of range");
            }
            for (ProcessorId p : coalition)
            {
                if (p < 0 || p >= n)
                {
                    throw std::invalid_argument("RingConfig: coalition member out of range");
                }
            }
        }
    };

    // Emission interface handed to a strategy during one activation.
    class Emitter
    {
    public:
        virtual ~Emitter() = default;
        virtual void send(Message m) = 0;
        virtual void terminate(Value output) = 0;
        virtual void terminate_bot() = 0;
    };

    // A deterministic reactive state machine: everything it does is a
    // function of (id, random string, received history). Activated once at
    // wake-up and once per incoming message.
    class Strategy
    {
    public:
        virtual ~Strategy() = default;
        virtual void on_wake(Emitter &out) { (void)out; }
        virtual void on_receive(Emitter &out, const Message &m) = 0;
    };

    using StrategyPtr = std::unique_ptr<Strategy>;
}
